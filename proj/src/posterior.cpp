#include "bayesrs/posterior.hpp"

#include <cmath>

#include "bayesrs/numerics.hpp"

namespace bayesrs {

namespace {

constexpr double kVarianceFloor = 1e-12;

void check_monotone_perm(const RaggedSample& sample,
                         const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != sample.solutions()) {
    throw DimensionMismatch("posterior: permutation length does not match L");
  }
  for (size_t r = 1; r < perm.size(); ++r) {
    if (sample.size(perm[r - 1]) < sample.size(perm[r])) {
      throw InvalidParameter("posterior: permutation is not descending in n");
    }
  }
}

Eigen::VectorXd solve_as_singular(const Eigen::MatrixXd& block,
                                  const Eigen::VectorXd& cross) {
  try {
    return spd_solve(block, cross);
  } catch (const NotPositiveDefinite& e) {
    throw SingularCovariance(e.what());
  }
}

// Maps permuted-frame results back to original solution order.
PosteriorState unpermute(const std::vector<int>& perm,
                         const Eigen::VectorXd& nu_p,
                         const Eigen::MatrixXd& lambda_p,
                         const Eigen::VectorXi& n_original, double nu0,
                         int clamp_count) {
  const int L = static_cast<int>(perm.size());
  PosteriorState post;
  post.nu_hat.resize(L);
  post.lambda_hat.resize(L, L);
  for (int r = 0; r < L; ++r) {
    post.nu_hat[perm[r]] = nu_p[r];
    for (int s = 0; s < L; ++s) {
      post.lambda_hat(perm[r], perm[s]) = lambda_p(r, s);
    }
  }
  post.perm = perm;
  post.n = n_original;
  post.nu0 = nu0;
  post.clamp_count = clamp_count;
  return post;
}

}  // namespace

double cov_estimate(const RaggedSample& sample, int k, int l, int m) {
  if (m < 2 || m > std::min(sample.size(k), sample.size(l))) {
    throw OutOfRange("cov_estimate: m=" + std::to_string(m) +
                     " outside common range of rows " + std::to_string(k) +
                     " and " + std::to_string(l));
  }
  const double mk = sample.restricted_mean(k, m);
  const double ml = sample.restricted_mean(l, m);
  double sum = 0.0;
  for (int j = 0; j < m; ++j) {
    sum += (sample(k, j) - mk) * (sample(l, j) - ml);
  }
  return sum / m;
}

CovEstimates cov_estimates(const RaggedSample& sample,
                           const std::vector<int>& perm) {
  check_monotone_perm(sample, perm);
  const int L = sample.solutions();
  CovEstimates cov;
  cov.block.reserve(L > 1 ? L - 1 : 0);
  cov.cross.reserve(L > 1 ? L - 1 : 0);
  for (int i = 1; i < L; ++i) {
    // Block over sorted positions 0..i-1 at their common count n_{i-1};
    // the cross covariances against level i+1 can only use the n_i
    // scenarios that row actually has.
    const int block_count = sample.size(perm[i - 1]);
    const int cross_count = sample.size(perm[i]);
    Eigen::MatrixXd block(i, i);
    for (int r = 0; r < i; ++r) {
      for (int s = 0; s <= r; ++s) {
        block(r, s) = cov_estimate(sample, perm[r], perm[s], block_count);
        block(s, r) = block(r, s);
      }
    }
    Eigen::VectorXd cross(i);
    for (int r = 0; r < i; ++r) {
      cross[r] = cov_estimate(sample, perm[i], perm[r], cross_count);
    }
    cov.block.push_back(std::move(block));
    cov.cross.push_back(std::move(cross));
  }
  return cov;
}

Eigen::VectorXd beta_hat(const CovEstimates& cov, int level) {
  if (level < 2 || level > static_cast<int>(cov.block.size()) + 1) {
    throw OutOfRange("beta_hat: level " + std::to_string(level) +
                     " out of range");
  }
  return solve_as_singular(cov.block[level - 2], cov.cross[level - 2]);
}

PosteriorState posterior_estimate(const RaggedSample& sample, double nu0) {
  const int L = sample.solutions();
  const std::vector<int> perm = ordering(sample);
  for (int i = 0; i < L; ++i) {
    if (sample.size(perm[i]) - (i + 1) + nu0 < 1.0) {
      throw DegenerateDF("posterior_estimate: n_i - i + nu0 < 1 at level " +
                         std::to_string(i + 1));
    }
  }

  const CovEstimates cov = cov_estimates(sample, perm);
  Eigen::VectorXd nu_p(L);
  Eigen::MatrixXd lambda_p(L, L);
  int clamps = 0;

  nu_p[0] = sample.mean(perm[0]);
  const int n1 = sample.size(perm[0]);
  lambda_p(0, 0) = cov_estimate(sample, perm[0], perm[0], n1) / (n1 - 1 + nu0);

  for (int i = 1; i < L; ++i) {
    const int ni = sample.size(perm[i]);
    const Eigen::VectorXd beta = beta_hat(cov, i + 1);

    Eigen::VectorXd restr(i);
    for (int r = 0; r < i; ++r) restr[r] = sample.restricted_mean(perm[r], ni);
    nu_p[i] = sample.mean(perm[i]) + beta.dot(nu_p.head(i) - restr);

    double cond = cov_estimate(sample, perm[i], perm[i], ni) -
                  beta.dot(cov.block[i - 1] * beta);
    if (cond < kVarianceFloor) {
      cond = kVarianceFloor;
      ++clamps;
    }
    const Eigen::VectorXd col = lambda_p.topLeftCorner(i, i) * beta;
    lambda_p.col(i).head(i) = col;
    lambda_p.row(i).head(i) = col.transpose();
    lambda_p(i, i) = cond / (ni - (i + 1) + nu0) + beta.dot(col);
  }

  return unpermute(perm, nu_p, lambda_p, sample.sizes(), nu0, clamps);
}

PosteriorState posterior_known_sigma(
    const RaggedSample& sample,
    const Eigen::Ref<const Eigen::MatrixXd>& sigma) {
  const int L = sample.solutions();
  if (sigma.rows() != L || sigma.cols() != L) {
    throw DimensionMismatch("posterior_known_sigma: sigma must be LxL");
  }
  const std::vector<int> perm = ordering(sample);
  Eigen::MatrixXd sigma_p(L, L);
  for (int r = 0; r < L; ++r) {
    for (int s = 0; s < L; ++s) sigma_p(r, s) = sigma(perm[r], perm[s]);
  }

  Eigen::VectorXd nu_p(L);
  Eigen::MatrixXd lambda_p(L, L);
  nu_p[0] = sample.mean(perm[0]);
  lambda_p(0, 0) = sigma_p(0, 0) / sample.size(perm[0]);

  for (int i = 1; i < L; ++i) {
    const int ni = sample.size(perm[i]);
    const Eigen::VectorXd beta =
        spd_solve(sigma_p.topLeftCorner(i, i), sigma_p.row(i).head(i).transpose());

    Eigen::VectorXd restr(i);
    for (int r = 0; r < i; ++r) restr[r] = sample.restricted_mean(perm[r], ni);
    nu_p[i] = sample.mean(perm[i]) + beta.dot(nu_p.head(i) - restr);

    const double cond =
        sigma_p(i, i) - beta.dot(sigma_p.topLeftCorner(i, i) * beta);
    const Eigen::VectorXd col = lambda_p.topLeftCorner(i, i) * beta;
    lambda_p.col(i).head(i) = col;
    lambda_p.row(i).head(i) = col.transpose();
    lambda_p(i, i) = cond / ni + beta.dot(col);
  }

  return unpermute(perm, nu_p, lambda_p, sample.sizes(), 0.0, 0);
}

PosteriorState posterior_marginal(const RaggedSample& sample) {
  const int L = sample.solutions();
  PosteriorState post;
  post.nu_hat.resize(L);
  post.lambda_hat = Eigen::MatrixXd::Zero(L, L);
  for (int i = 0; i < L; ++i) {
    const int ni = sample.size(i);
    if (ni < 2) {
      throw OutOfRange("posterior_marginal: row " + std::to_string(i) +
                       " has fewer than 2 observations");
    }
    post.nu_hat[i] = sample.mean(i);
    post.lambda_hat(i, i) = cov_estimate(sample, i, i, ni) / (ni - 1);
  }
  post.perm.resize(L);
  for (int i = 0; i < L; ++i) post.perm[i] = i;
  post.n = sample.sizes();
  post.nu0 = 0.0;
  return post;
}

double log_likelihood_known_sigma(
    const RaggedSample& sample, const Eigen::Ref<const Eigen::MatrixXd>& sigma,
    const Eigen::Ref<const Eigen::VectorXd>& mu) {
  const int L = sample.solutions();
  if (sigma.rows() != L || sigma.cols() != L || mu.size() != L) {
    throw DimensionMismatch("log_likelihood_known_sigma: dimensions disagree");
  }
  const std::vector<int> perm = ordering(sample);
  Eigen::MatrixXd sigma_p(L, L);
  Eigen::VectorXd mu_p(L);
  for (int r = 0; r < L; ++r) {
    mu_p[r] = mu[perm[r]];
    for (int s = 0; s < L; ++s) sigma_p(r, s) = sigma(perm[r], perm[s]);
  }

  const auto log_phi = [](double y, double mean, double var) {
    return -0.5 * std::log(2.0 * M_PI * var) -
           (y - mean) * (y - mean) / (2.0 * var);
  };

  double ll = log_phi(mu_p[0], sample.mean(perm[0]),
                      sigma_p(0, 0) / sample.size(perm[0]));
  for (int i = 1; i < L; ++i) {
    const int ni = sample.size(perm[i]);
    const Eigen::VectorXd beta =
        spd_solve(sigma_p.topLeftCorner(i, i), sigma_p.row(i).head(i).transpose());
    const double cond =
        sigma_p(i, i) - beta.dot(sigma_p.topLeftCorner(i, i) * beta);
    Eigen::VectorXd restr(i);
    for (int r = 0; r < i; ++r) restr[r] = sample.restricted_mean(perm[r], ni);
    const double loc =
        sample.mean(perm[i]) + beta.dot(mu_p.head(i) - restr);
    ll += log_phi(mu_p[i], loc, cond / ni);
  }
  return ll;
}

}  // namespace bayesrs
