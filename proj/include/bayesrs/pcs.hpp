// Pairwise dominance probabilities and the Bonferroni lower bound on the
// probability of correct selection.

#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "bayesrs/posterior.hpp"
#include "bayesrs/targets.hpp"

namespace bayesrs {

struct DominanceTable {
  // Same order as the selection's rho; every pair appears exactly once.
  std::vector<std::pair<int, int>> pairs;
  Eigen::VectorXd p;
  double delta = 0.0;
  // Pairwise scales clamped at 1e-12 (can happen with estimated lambda).
  int scale_clamps = 0;
};

// Posterior probability that W_i <= W_j + delta: the t CDF at delta with
// min{n_i, n_j} - 1 degrees of freedom, location nu_i - nu_j and squared
// scale Lambda_ii + Lambda_jj - 2 Lambda_ij. A nonpositive scale is clamped
// at 1e-12 and counted through scale_clamps.
double dominance_prob(const PosteriorState& post, int i, int j, double delta,
                      int* scale_clamps = nullptr);

DominanceTable dominance_table(const PosteriorState& post,
                               const Selection& selection, double delta);

// 1 - sum over pairs of (1 - p). May be negative; that is a valid,
// uninformative bound and is reported as-is.
double bonferroni_lb(const DominanceTable& table);

}  // namespace bayesrs
