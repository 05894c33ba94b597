// Posterior of the unknown mean vector from a ragged CRN sample: the
// covariance estimators, the beta coefficients and the recursions for the
// posterior mean and covariance, plus the exact known-covariance recursion
// and its likelihood (test oracles) and the marginal variant used when CRN
// dependence is ignored.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bayesrs/sample.hpp"

namespace bayesrs {

struct PosteriorState {
  // Posterior mean and covariance, reported in original solution order.
  Eigen::VectorXd nu_hat;
  Eigen::MatrixXd lambda_hat;
  // Descending-sample-size permutation the recursion was computed in.
  std::vector<int> perm;
  // Sample sizes at the time of computation, original order.
  Eigen::VectorXi n;
  double nu0 = 0.0;
  // Number of conditional-variance factors clamped at 1e-12; nonzero values
  // flag pathological samples.
  int clamp_count = 0;
};

// Maximum-likelihood cross moment of rows k and l over their first m common
// scenarios (divisor m, means restricted to the same m scenarios).
double cov_estimate(const RaggedSample& sample, int k, int l, int m);

// Per-level covariance blocks in the permuted (descending-n) frame.
// For level i (1-based, 2..L): block[i-2] holds the (i-1)x(i-1) matrix over
// solutions at sorted positions 0..i-2 using their common count n_{i-1},
// and cross[i-2] holds the covariances of level i against them at the
// common count n_i.
struct CovEstimates {
  std::vector<Eigen::MatrixXd> block;
  std::vector<Eigen::VectorXd> cross;
};

CovEstimates cov_estimates(const RaggedSample& sample,
                           const std::vector<int>& perm);

// Regression coefficients of level i on levels 1..i-1: solves
// block * beta = cross. Throws SingularCovariance when the block is not
// positive definite.
Eigen::VectorXd beta_hat(const CovEstimates& cov, int level);

// Plug-in posterior from estimated covariances with prior hyperparameter
// nu0. This is what the sequential procedure runs on.
PosteriorState posterior_estimate(const RaggedSample& sample, double nu0);

// Exact posterior recursion for known covariance sigma (flat prior on the
// mean). Test oracle; the sequential procedure never calls it.
PosteriorState posterior_known_sigma(
    const RaggedSample& sample, const Eigen::Ref<const Eigen::MatrixXd>& sigma);

// Marginal posterior ignoring cross dependence: nu = row means, lambda
// diagonal with entries sigma_hat_ii / (n_i - 1). Used for the noCRN case.
PosteriorState posterior_marginal(const RaggedSample& sample);

// Log likelihood of the mean vector mu given the ragged sample and known
// covariance sigma, up to an additive constant that does not depend on mu.
double log_likelihood_known_sigma(
    const RaggedSample& sample, const Eigen::Ref<const Eigen::MatrixXd>& sigma,
    const Eigen::Ref<const Eigen::VectorXd>& mu);

}  // namespace bayesrs
