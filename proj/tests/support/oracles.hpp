// Test-only oracles: independent likelihood evaluations, grid integration,
// brute-force rank checks and small statistics helpers. Everything here
// deliberately avoids the library code paths it is used to verify.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "bayesrs/sample.hpp"

namespace oracles {

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Multivariate normal log density via Eigen's own LLT (not the library's
// factorization).
inline double mvn_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                         const Eigen::MatrixXd& sigma) {
  const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  const Eigen::MatrixXd lower = llt.matrixL();
  const Eigen::VectorXd w = lower.triangularView<Eigen::Lower>().solve(y - mu);
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < lower.rows(); ++i) {
    logdet += std::log(lower(i, i));
  }
  return -0.5 * y.size() * std::log(2.0 * M_PI) - logdet -
         0.5 * w.squaredNorm();
}

// Builds a ragged sample holding exactly the given rows.
inline bayesrs::RaggedSample make_sample(
    const std::vector<std::vector<double>>& rows) {
  const int L = static_cast<int>(rows.size());
  int n0 = static_cast<int>(rows[0].size());
  for (const auto& r : rows) n0 = std::min(n0, static_cast<int>(r.size()));
  const bayesrs::ObserveFn observe = [&rows](int i, int k) {
    return rows[i][k];
  };
  bayesrs::RaggedSample s = bayesrs::RaggedSample::init(L, n0, observe);
  Eigen::VectorXi q(L);
  for (int i = 0; i < L; ++i) {
    q[i] = static_cast<int>(rows[i].size()) - n0;
  }
  s.append(q, observe);
  return s;
}

// Data log likelihood as a product over complete column blocks: scenarios
// seen by the deepest h solutions form h-dimensional normal columns. The
// sample's rows must be sorted by descending length.
inline double column_block_loglik(const bayesrs::RaggedSample& s,
                                  const Eigen::MatrixXd& sigma,
                                  const Eigen::VectorXd& mu) {
  const int L = s.solutions();
  double ll = 0.0;
  for (int k = 0; k < s.pool(); ++k) {
    int height = 0;
    while (height < L && s.size(height) > k) ++height;
    Eigen::VectorXd col(height);
    for (int i = 0; i < height; ++i) col[i] = s(i, k);
    ll += mvn_logpdf(col, mu.head(height), sigma.topLeftCorner(height, height));
  }
  return ll;
}

// The same likelihood through the chain of one-dimensional conditional
// densities, reordered per solution. Rows sorted by descending length.
inline double conditional_chain_loglik(const bayesrs::RaggedSample& s,
                                       const Eigen::MatrixXd& sigma,
                                       const Eigen::VectorXd& mu) {
  const int L = s.solutions();
  const auto log_phi = [](double y, double mean, double var) {
    return -0.5 * std::log(2.0 * M_PI * var) -
           (y - mean) * (y - mean) / (2.0 * var);
  };
  double ll = 0.0;
  for (int j = 0; j < s.size(0); ++j) {
    ll += log_phi(s(0, j), mu[0], sigma(0, 0));
  }
  for (int i = 1; i < L; ++i) {
    const Eigen::MatrixXd block = sigma.topLeftCorner(i, i);
    const Eigen::VectorXd beta =
        block.llt().solve(sigma.row(i).head(i).transpose());
    const double cond = sigma(i, i) - beta.dot(block * beta);
    for (int j = 0; j < s.size(i); ++j) {
      Eigen::VectorXd prev(i);
      for (int r = 0; r < i; ++r) prev[r] = s(r, j);
      const double mean = mu[i] + beta.dot(prev - mu.head(i));
      ll += log_phi(s(i, j), mean, cond);
    }
  }
  return ll;
}

// Posterior mean and covariance from flat-prior grid integration of the
// column-block likelihood (two solutions). Returns the grid spacing used.
struct GridPosterior {
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
  double h = 0.0;
};

inline GridPosterior grid_posterior_2d(const bayesrs::RaggedSample& s,
                                       const Eigen::MatrixXd& sigma,
                                       const Eigen::Vector2d& center,
                                       double halfwidth, int points) {
  GridPosterior out;
  out.h = 2.0 * halfwidth / points;
  Eigen::MatrixXd ll(points, points);
  double max_ll = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd grid(points);
  for (int a = 0; a < points; ++a) {
    grid[a] = center[0] - halfwidth + (a + 0.5) * out.h;
  }
  Eigen::VectorXd grid2(points);
  for (int b = 0; b < points; ++b) {
    grid2[b] = center[1] - halfwidth + (b + 0.5) * out.h;
  }
  for (int a = 0; a < points; ++a) {
    for (int b = 0; b < points; ++b) {
      const Eigen::Vector2d mu(grid[a], grid2[b]);
      ll(a, b) = column_block_loglik(s, sigma, mu);
      max_ll = std::max(max_ll, ll(a, b));
    }
  }
  double mass = 0.0;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d second = Eigen::Matrix2d::Zero();
  for (int a = 0; a < points; ++a) {
    for (int b = 0; b < points; ++b) {
      const double w = std::exp(ll(a, b) - max_ll);
      const Eigen::Vector2d mu(grid[a], grid2[b]);
      mass += w;
      mean += w * mu;
      second += w * mu * mu.transpose();
    }
  }
  out.mean = mean / mass;
  out.cov = second / mass - out.mean * out.mean.transpose();
  return out;
}

// Argmax of a smooth unimodal function by iterative grid refinement.
inline Eigen::VectorXd refine_grid_argmax(
    const std::function<double(const Eigen::VectorXd&)>& f,
    Eigen::VectorXd center, double halfwidth, int stages) {
  const int dims = static_cast<int>(center.size());
  const int per_dim = 21;
  for (int stage = 0; stage < stages; ++stage) {
    const double step = 2.0 * halfwidth / (per_dim - 1);
    Eigen::VectorXd best = center;
    double best_val = -std::numeric_limits<double>::infinity();
    std::vector<int> idx(dims, 0);
    while (true) {
      Eigen::VectorXd x(dims);
      for (int d = 0; d < dims; ++d) {
        x[d] = center[d] - halfwidth + idx[d] * step;
      }
      const double v = f(x);
      if (v > best_val) {
        best_val = v;
        best = x;
      }
      int d = 0;
      while (d < dims && ++idx[d] == per_dim) {
        idx[d] = 0;
        ++d;
      }
      if (d == dims) break;
    }
    center = best;
    halfwidth /= 5.0;
  }
  return center;
}

// One-sided Wilcoxon signed-rank p-value (normal approximation with tie
// correction) for the alternative "x tends to be smaller than y".
inline double wilcoxon_less_p(const std::vector<double>& x,
                              const std::vector<double>& y) {
  std::vector<double> d;
  for (size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    if (diff != 0.0) d.push_back(diff);
  }
  const size_t n = d.size();
  if (n == 0) return 1.0;
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::fabs(d[a]) < std::fabs(d[b]);
  });
  std::vector<double> rank(n);
  double tie_term = 0.0;
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j < n && std::fabs(d[order[j]]) == std::fabs(d[order[i]])) ++j;
    const double avg = 0.5 * (i + 1 + j);
    for (size_t k = i; k < j; ++k) rank[order[k]] = avg;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  double w_plus = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (d[i] > 0.0) w_plus += rank[i];
  }
  const double nn = static_cast<double>(n);
  const double mean = nn * (nn + 1.0) / 4.0;
  const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
  const double z = (w_plus - mean + 0.5) / std::sqrt(var);
  return normal_cdf(z);
}

// Well-conditioned random covariance with diagonal around [1, 3].
inline Eigen::MatrixXd random_spd(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
  }
  return a * a.transpose() / dim + Eigen::MatrixXd::Identity(dim, dim);
}

// Monotone CRN sample from N(mu, sigma): shared standard-normal columns,
// row i keeps its first n[i] entries. n must be achievable (all >= 1).
inline bayesrs::RaggedSample sample_from_model(const Eigen::VectorXd& mu,
                                               const Eigen::MatrixXd& sigma,
                                               const std::vector<int>& n,
                                               std::mt19937_64& rng) {
  const int L = static_cast<int>(mu.size());
  const int depth = *std::max_element(n.begin(), n.end());
  const Eigen::MatrixXd lower = Eigen::LLT<Eigen::MatrixXd>(sigma).matrixL();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> rows(L);
  for (int k = 0; k < depth; ++k) {
    Eigen::VectorXd z(L);
    for (int i = 0; i < L; ++i) z[i] = normal(rng);
    const Eigen::VectorXd col = mu + lower * z;
    for (int i = 0; i < L; ++i) {
      if (k < n[i]) rows[i].push_back(col[i]);
    }
  }
  return make_sample(rows);
}

}  // namespace oracles
