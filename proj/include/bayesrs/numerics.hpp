// Dense symmetric linear algebra, the location-scale Student-t CDF and
// multivariate normal sampling used by the rest of the library.

#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "bayesrs/errors.hpp"

namespace bayesrs {

// Lower Cholesky factor of a symmetric positive definite matrix.
// Throws NotPositiveDefinite when a pivot falls at or below
// 1e-12 * max(diagonal).
Eigen::MatrixXd cholesky(const Eigen::Ref<const Eigen::MatrixXd>& m);

// Solves m * x = rhs for symmetric positive definite m via the Cholesky
// factor, never by explicit inversion.
Eigen::VectorXd spd_solve(const Eigen::Ref<const Eigen::MatrixXd>& m,
                          const Eigen::Ref<const Eigen::VectorXd>& rhs);

// Regularized incomplete beta function I_x(a, b), evaluated by Lentz's
// continued fraction. xc must be the exact complement 1 - x; passing it
// separately avoids cancellation when x is near 1.
double regularized_incomplete_beta(double a, double b, double x, double xc);

// CDF of the one-dimensional t-distribution with df degrees of freedom,
// location loc and squared scale `scale`; the argument is standardized as
// (x - loc) / sqrt(scale).
double t_cdf(double x, int df, double loc, double scale);

// mu + chol * z. Deterministic given z.
Eigen::VectorXd mvn_sample(const Eigen::Ref<const Eigen::VectorXd>& mu,
                           const Eigen::Ref<const Eigen::MatrixXd>& chol,
                           const Eigen::Ref<const Eigen::VectorXd>& z);

// Running count of t_cdf evaluations on this thread. The allocation
// strategies have documented evaluation budgets; tests read this.
std::uint64_t t_cdf_evaluations();

}  // namespace bayesrs
