#include "bayesrs/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bayesrs/numerics.hpp"

namespace bayesrs {

Strategy parse_strategy(const std::string& name) {
  if (name == "equal") return Strategy::Equal;
  if (name == "greedy_ocba") return Strategy::GreedyOcba;
  if (name == "dpw") return Strategy::Dpw;
  if (name == "dpw_plus") return Strategy::DpwPlus;
  throw InvalidParameter("parse_strategy: unknown strategy '" + name + "'");
}

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Equal:
      return "equal";
    case Strategy::GreedyOcba:
      return "greedy_ocba";
    case Strategy::Dpw:
      return "dpw";
    case Strategy::DpwPlus:
      return "dpw_plus";
  }
  return "equal";
}

Eigen::VectorXi round_largest_remainder(
    const Eigen::Ref<const Eigen::VectorXd>& weights, int budget,
    bool floor_one) {
  const int L = static_cast<int>(weights.size());
  if (L < 1) throw InvalidParameter("round_largest_remainder: no weights");
  if (weights.minCoeff() < 0.0) {
    throw InvalidParameter("round_largest_remainder: negative weight");
  }
  const double total = weights.sum();
  if (!(total > 0.0)) {
    throw InvalidParameter("round_largest_remainder: weights sum to zero");
  }
  if (budget < 0 || (floor_one && budget < L)) {
    throw BudgetTooSmall("round_largest_remainder: budget " +
                         std::to_string(budget) + " below floor for L=" +
                         std::to_string(L));
  }

  Eigen::VectorXi q(L);
  Eigen::VectorXd frac(L);
  int assigned = 0;
  for (int l = 0; l < L; ++l) {
    const double share = budget * (weights[l] / total);
    q[l] = static_cast<int>(std::floor(share));
    frac[l] = share - q[l];
    assigned += q[l];
  }

  std::vector<int> order(L);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return frac[a] > frac[b]; });
  for (int r = 0; r < budget - assigned; ++r) ++q[order[r]];

  if (floor_one) {
    int excess = 0;
    for (int l = 0; l < L; ++l) {
      if (q[l] == 0) {
        q[l] = 1;
        ++excess;
      }
    }
    while (excess > 0) {
      int arg = 0;
      for (int l = 1; l < L; ++l) {
        if (q[l] >= q[arg]) arg = l;  // ties go to the highest index
      }
      --q[arg];
      --excess;
    }
  }
  return q;
}

Eigen::VectorXi equal_allocation(int solutions, int budget, bool floor_one) {
  if (solutions < 1) throw InvalidParameter("equal_allocation: L < 1");
  return round_largest_remainder(Eigen::VectorXd::Ones(solutions), budget,
                                 floor_one);
}

double gamma_ij(const PosteriorState& post, int i, int j, int qi, int qj) {
  const double lii = post.lambda_hat(i, i);
  const double ljj = post.lambda_hat(j, j);
  const double lij = post.lambda_hat(i, j);
  const double wi = static_cast<double>(post.n[i]) / (post.n[i] + qi);
  const double wj = static_cast<double>(post.n[j]) / (post.n[j] + qj);
  return wi * lii + wj * ljj -
         2.0 * (lii / (lii + ljj) * wi + ljj / (lii + ljj) * wj) * lij;
}

namespace {

constexpr double kScaleFloor = 1e-12;

double predicted_dominance(const PosteriorState& post, int i, int j, int qi,
                           int qj, double delta) {
  const int df =
      std::min(post.n[i] + qi, post.n[j] + qj) - 1;
  double scale = gamma_ij(post, i, j, qi, qj);
  if (scale <= kScaleFloor) scale = kScaleFloor;
  return t_cdf(delta, df, post.nu_hat[i] - post.nu_hat[j], scale);
}

Eigen::VectorXi proportional_or_equal(const Eigen::VectorXd& weights,
                                      const StrategyInputs& inputs,
                                      Eigen::VectorXd* weights_out) {
  if (weights_out) *weights_out = weights;
  if (!(weights.sum() > 0.0)) {
    return equal_allocation(static_cast<int>(weights.size()), inputs.budget);
  }
  return round_largest_remainder(weights, inputs.budget, true);
}

}  // namespace

Eigen::VectorXi greedy_ocba(const StrategyInputs& inputs,
                            Eigen::VectorXd* weights_out) {
  const int L = static_cast<int>(inputs.post.nu_hat.size());
  Eigen::VectorXd delta_l = Eigen::VectorXd::Zero(L);
  for (size_t k = 0; k < inputs.table.pairs.size(); ++k) {
    const auto [i, j] = inputs.table.pairs[k];
    const double p00 = inputs.table.p[static_cast<Eigen::Index>(k)];
    delta_l[i] += predicted_dominance(inputs.post, i, j, inputs.budget, 0,
                                      inputs.delta) -
                  p00;
    delta_l[j] += predicted_dominance(inputs.post, i, j, 0, inputs.budget,
                                      inputs.delta) -
                  p00;
  }
  // A gain can come out negative for pairs ordered against the selection;
  // proportional rounding needs nonnegative weights.
  delta_l = delta_l.cwiseMax(0.0);
  return proportional_or_equal(delta_l, inputs, weights_out);
}

Eigen::VectorXi dpw(const StrategyInputs& inputs, bool filtered,
                    Eigen::VectorXd* weights_out) {
  const int L = static_cast<int>(inputs.post.nu_hat.size());
  const double npairs = static_cast<double>(inputs.table.pairs.size());
  const double threshold =
      npairs > 0 ? 1.0 - inputs.alpha / npairs : 1.0;

  Eigen::VectorXd best = Eigen::VectorXd::Constant(
      L, std::numeric_limits<double>::infinity());
  for (size_t k = 0; k < inputs.table.pairs.size(); ++k) {
    const auto [i, j] = inputs.table.pairs[k];
    const double p = inputs.table.p[static_cast<Eigen::Index>(k)];
    if (filtered && !(p < threshold)) continue;
    const double lii = inputs.post.lambda_hat(i, i);
    const double ljj = inputs.post.lambda_hat(j, j);
    best[i] = std::min(best[i], p * (1.0 - lii / (lii + ljj)));
    best[j] = std::min(best[j], p * (1.0 - ljj / (lii + ljj)));
  }
  Eigen::VectorXd weights(L);
  for (int l = 0; l < L; ++l) {
    weights[l] = std::isinf(best[l]) ? 0.0 : 1.0 - best[l];
  }
  return proportional_or_equal(weights, inputs, weights_out);
}

Eigen::VectorXi dpw_plus(const StrategyInputs& inputs,
                         Eigen::VectorXd* weights_out) {
  return dpw(inputs, true, weights_out);
}

Eigen::VectorXi allocate(Strategy strategy, const StrategyInputs& inputs,
                         Eigen::VectorXd* weights_out) {
  switch (strategy) {
    case Strategy::Equal: {
      const int L = static_cast<int>(inputs.post.nu_hat.size());
      if (weights_out) *weights_out = Eigen::VectorXd::Ones(L);
      return equal_allocation(L, inputs.budget);
    }
    case Strategy::GreedyOcba:
      return greedy_ocba(inputs, weights_out);
    case Strategy::Dpw:
      return dpw(inputs, false, weights_out);
    case Strategy::DpwPlus:
      return dpw_plus(inputs, weights_out);
  }
  throw InvalidParameter("allocate: unknown strategy");
}

}  // namespace bayesrs
