#include "bayesrs/pcs.hpp"

#include <algorithm>

#include "bayesrs/numerics.hpp"

namespace bayesrs {

namespace {
constexpr double kScaleFloor = 1e-12;
}

double dominance_prob(const PosteriorState& post, int i, int j, double delta,
                      int* scale_clamps) {
  if (i == j) throw InvalidParameter("dominance_prob: i == j");
  const int df = std::min(post.n[i], post.n[j]) - 1;
  double scale = post.lambda_hat(i, i) + post.lambda_hat(j, j) -
                 2.0 * post.lambda_hat(i, j);
  if (scale <= kScaleFloor) {
    scale = kScaleFloor;
    if (scale_clamps) ++(*scale_clamps);
  }
  return t_cdf(delta, df, post.nu_hat[i] - post.nu_hat[j], scale);
}

DominanceTable dominance_table(const PosteriorState& post,
                               const Selection& selection, double delta) {
  DominanceTable table;
  table.pairs = selection.rho;
  table.delta = delta;
  table.p.resize(static_cast<Eigen::Index>(table.pairs.size()));
  for (size_t k = 0; k < table.pairs.size(); ++k) {
    table.p[static_cast<Eigen::Index>(k)] =
        dominance_prob(post, table.pairs[k].first, table.pairs[k].second,
                       delta, &table.scale_clamps);
  }
  return table;
}

double bonferroni_lb(const DominanceTable& table) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < table.p.size(); ++k) {
    sum += 1.0 - table.p[k];
  }
  return 1.0 - sum;
}

}  // namespace bayesrs
