#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bayesrs/numerics.hpp"
#include "bayesrs/pcs.hpp"
#include "support/oracles.hpp"

using namespace bayesrs;

namespace {

PosteriorState make_state(const Eigen::VectorXd& nu,
                          const Eigen::MatrixXd& lambda,
                          const Eigen::VectorXi& n) {
  PosteriorState post;
  post.nu_hat = nu;
  post.lambda_hat = lambda;
  post.n = n;
  post.perm.resize(nu.size());
  for (int i = 0; i < nu.size(); ++i) post.perm[i] = i;
  return post;
}

PosteriorState random_state(int L, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd nu(L);
  for (int i = 0; i < L; ++i) nu[i] = normal(rng);
  Eigen::VectorXi n(L);
  for (int i = 0; i < L; ++i) n[i] = L + 1 + static_cast<int>(rng() % 20);
  return make_state(nu, oracles::random_spd(L, rng) * 0.2, n);
}

}  // namespace

TEST_CASE("dominance probability at equal means is one half") {
  const PosteriorState post =
      make_state((Eigen::VectorXd(2) << 1.3, 1.3).finished(),
                 (Eigen::MatrixXd(2, 2) << 1, 0.2, 0.2, 1).finished(),
                 (Eigen::VectorXi(2) << 8, 5).finished());
  CHECK(dominance_prob(post, 0, 1, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("a strongly dominant pair is near certain") {
  const PosteriorState post =
      make_state((Eigen::VectorXd(2) << -10.0, 0.0).finished(),
                 (Eigen::MatrixXd(2, 2) << 0.5, 0, 0, 0.5).finished(),
                 (Eigen::VectorXi(2) << 21, 21).finished());
  // location -10, scale 1, 20 degrees of freedom
  CHECK(dominance_prob(post, 0, 1, 0.0) >= 0.999999);
  CHECK(dominance_prob(post, 1, 0, 0.0) <= 1e-6);
}

TEST_CASE("dominance probability accepts the default indifference zone") {
  std::mt19937_64 rng(51);
  const PosteriorState post = random_state(4, rng);
  const double with_zone = dominance_prob(post, 0, 1, 0.01);
  const double without = dominance_prob(post, 0, 1, 0.0);
  CHECK(with_zone >= without);
}

TEST_CASE("degenerate pairwise scale is clamped and counted") {
  // lambda == ones matrix: Lii + Ljj - 2 Lij == 0 exactly.
  const PosteriorState post =
      make_state((Eigen::VectorXd(2) << 0.0, 1.0).finished(),
                 Eigen::MatrixXd::Ones(2, 2),
                 (Eigen::VectorXi(2) << 5, 5).finished());
  int clamps = 0;
  const double p = dominance_prob(post, 0, 1, 0.0, &clamps);
  CHECK(clamps == 1);
  CHECK(p >= 0.0);
  CHECK(p <= 1.0);
}

TEST_CASE("bonferroni bound worked values") {
  DominanceTable table;
  CHECK(bonferroni_lb(table) == 1.0);

  table.pairs = {{0, 1}, {1, 2}};
  table.p = (Eigen::VectorXd(2) << 0.975, 0.975).finished();
  CHECK(bonferroni_lb(table) == doctest::Approx(0.95).epsilon(1e-14));

  table.pairs.assign(19, {0, 1});
  table.p = Eigen::VectorXd::Constant(19, 0.5);
  CHECK(bonferroni_lb(table) == doctest::Approx(-8.5).epsilon(1e-13));
}

TEST_CASE("bound is below every pairwise probability and monotone") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int pairs = 1 + static_cast<int>(rng() % 10);
    DominanceTable table;
    table.p.resize(pairs);
    for (int k = 0; k < pairs; ++k) {
      table.pairs.emplace_back(k, k + 1);
      table.p[k] = unif(rng);
    }
    const double lb = bonferroni_lb(table);
    CHECK(lb <= table.p.minCoeff() + 1e-15);

    DominanceTable bumped = table;
    const int k = static_cast<int>(rng() % pairs);
    bumped.p[k] = std::min(1.0, bumped.p[k] + 0.1);
    CHECK(bonferroni_lb(bumped) >= lb);
  }
}

TEST_CASE("indifference zone never lowers the bound") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const PosteriorState post = random_state(4, rng);
    Selection sel = select(best1(), post.nu_hat);
    const double lb0 = bonferroni_lb(dominance_table(post, sel, 0.0));
    const double lbd = bonferroni_lb(dominance_table(post, sel, 0.05));
    CHECK(lb0 <= lbd + 1e-12);
  }
}

TEST_CASE("dominance table covers the relation exactly once") {
  std::mt19937_64 rng(54);
  const PosteriorState post = random_state(5, rng);
  const Selection sel = select(best_m(2), post.nu_hat);
  const DominanceTable table = dominance_table(post, sel, 0.01);
  CHECK(table.pairs == sel.rho);
  CHECK(table.p.size() == static_cast<Eigen::Index>(sel.rho.size()));
  for (Eigen::Index k = 0; k < table.p.size(); ++k) {
    CHECK(table.p[k] >= 0.0);
    CHECK(table.p[k] <= 1.0);
  }
}

TEST_CASE("the bound stays below Monte Carlo PCS on known posteriors") {
  // Known-covariance complete-data posteriors: sample the posterior
  // directly and compare the bound with the Monte Carlo correct-selection
  // probability.
  std::mt19937_64 rng(55);
  std::normal_distribution<double> normal;
  const int draws = 1000000;
  for (int trial = 0; trial < 8; ++trial) {
    const int L = 3;
    const Eigen::MatrixXd sigma = oracles::random_spd(L, rng);
    const int n = 6 + static_cast<int>(rng() % 6);
    Eigen::VectorXd mu_true(L);
    for (int i = 0; i < L; ++i) mu_true[i] = normal(rng);
    const RaggedSample s =
        oracles::sample_from_model(mu_true, sigma, {n, n, n}, rng);
    PosteriorState post = posterior_known_sigma(s, sigma);

    const TargetScheme scheme = trial % 2 == 0 ? best1() : best_m(2);
    const Selection sel = select(scheme, post.nu_hat);
    const double delta = trial % 3 == 0 ? 0.0 : 0.01;
    const double lb = bonferroni_lb(dominance_table(post, sel, delta));

    const Eigen::MatrixXd lower =
        Eigen::LLT<Eigen::MatrixXd>(post.lambda_hat).matrixL();
    int hits = 0;
    Eigen::VectorXd z(L);
    for (int d = 0; d < draws; ++d) {
      for (int i = 0; i < L; ++i) z[i] = normal(rng);
      const Eigen::VectorXd w = post.nu_hat + lower * z;
      bool ok = true;
      for (const auto& [i, j] : sel.rho) {
        if (!(w[i] <= w[j] + delta)) {
          ok = false;
          break;
        }
      }
      hits += ok;
    }
    const double pcs = static_cast<double>(hits) / draws;
    const double se = std::sqrt(std::max(pcs * (1.0 - pcs), 1e-12) / draws);
    CHECK(lb <= pcs + 3.0 * se);
  }
}
