#include "bayesrs/numerics.hpp"

#include <cmath>

namespace bayesrs {

namespace {
thread_local std::uint64_t g_t_cdf_evaluations = 0;
}

std::uint64_t t_cdf_evaluations() { return g_t_cdf_evaluations; }

Eigen::MatrixXd cholesky(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  const Eigen::Index n = m.rows();
  if (n < 1 || m.cols() != n) {
    throw DimensionMismatch("cholesky: matrix must be square and nonempty");
  }
  const double tol = 1e-12 * m.diagonal().maxCoeff();

  Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = m(j, j) - lower.row(j).head(j).squaredNorm();
    if (pivot <= tol) {
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(pivot) +
                                " at column " + std::to_string(j));
    }
    lower(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      lower(i, j) =
          (m(i, j) - lower.row(i).head(j).dot(lower.row(j).head(j))) /
          lower(j, j);
    }
  }
  return lower;
}

Eigen::VectorXd spd_solve(const Eigen::Ref<const Eigen::MatrixXd>& m,
                          const Eigen::Ref<const Eigen::VectorXd>& rhs) {
  if (m.rows() != rhs.size()) {
    throw DimensionMismatch("spd_solve: rhs size does not match matrix");
  }
  Eigen::MatrixXd lower = cholesky(m);
  Eigen::VectorXd y = lower.triangularView<Eigen::Lower>().solve(rhs);
  return lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

namespace {

// Continued fraction for the incomplete beta function (Lentz's method).
double beta_cf(double a, double b, double x) {
  constexpr double eps = 3e-16;
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x, double xc) {
  if (x <= 0.0) return 0.0;
  if (xc <= 0.0) return 1.0;
  // <= so the complement branch lands strictly inside the direct regime.
  if (x <= (a + 1.0) / (a + b + 2.0)) {
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                                  std::lgamma(b) + a * std::log(x) +
                                  b * std::log(xc));
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - regularized_incomplete_beta(b, a, xc, x);
}

double t_cdf(double x, int df, double loc, double scale) {
  if (df < 1) {
    throw InvalidParameter("t_cdf: df must be >= 1, got " +
                           std::to_string(df));
  }
  if (!(scale > 0.0)) {
    throw InvalidParameter("t_cdf: scale must be > 0");
  }
  ++g_t_cdf_evaluations;
  const double s = (x - loc) / std::sqrt(scale);
  const double nu = static_cast<double>(df);
  // u + v == 1 by construction; both are formed without cancellation.
  const double u = s * s / (nu + s * s);
  const double v = nu / (nu + s * s);
  if (s >= 0.0) {
    return 0.5 + 0.5 * regularized_incomplete_beta(0.5, 0.5 * nu, u, v);
  }
  return 0.5 * regularized_incomplete_beta(0.5 * nu, 0.5, v, u);
}

Eigen::VectorXd mvn_sample(const Eigen::Ref<const Eigen::VectorXd>& mu,
                           const Eigen::Ref<const Eigen::MatrixXd>& chol,
                           const Eigen::Ref<const Eigen::VectorXd>& z) {
  if (chol.rows() != chol.cols() || chol.rows() != mu.size() ||
      z.size() != mu.size()) {
    throw DimensionMismatch("mvn_sample: dimensions disagree");
  }
  return mu + chol.triangularView<Eigen::Lower>() * z;
}

}  // namespace bayesrs
