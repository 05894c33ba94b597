#include "bayesrs/testbed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "bayesrs/numerics.hpp"

namespace bayesrs {

MuCase parse_mu_case(const std::string& name) {
  if (name == "ufc") return MuCase::Ufc;
  if (name == "inc") return MuCase::Inc;
  if (name == "unif") return MuCase::Unif;
  throw InvalidParameter("parse_mu_case: unknown case '" + name + "'");
}

std::string to_string(MuCase mu_case) {
  switch (mu_case) {
    case MuCase::Ufc:
      return "ufc";
    case MuCase::Inc:
      return "inc";
    case MuCase::Unif:
      return "unif";
  }
  return "ufc";
}

SigmaCase parse_sigma_case(const std::string& name) {
  if (name == "wishart") return {SigmaCase::Kind::Wishart, 0.0};
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string head = name.substr(0, colon);
    double c = 0.0;
    try {
      c = std::stod(name.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidParameter("parse_sigma_case: bad correlation in '" + name +
                             "'");
    }
    if (head == "cor") return {SigmaCase::Kind::Cor, c};
    if (head == "altneg") return {SigmaCase::Kind::AltNeg, c};
  }
  throw InvalidParameter("parse_sigma_case: unknown case '" + name + "'");
}

std::string to_string(const SigmaCase& sigma_case) {
  char buf[32];
  switch (sigma_case.kind) {
    case SigmaCase::Kind::Wishart:
      return "wishart";
    case SigmaCase::Kind::Cor:
    case SigmaCase::Kind::AltNeg: {
      auto res = std::to_chars(buf, buf + sizeof(buf), sigma_case.c);
      return std::string(sigma_case.kind == SigmaCase::Kind::Cor ? "cor:"
                                                                 : "altneg:") +
             std::string(buf, res.ptr);
    }
  }
  return "wishart";
}

Eigen::VectorXd mu_case(MuCase kind, int L, const TargetScheme& scheme,
                        std::mt19937_64& rng, double min_gap) {
  Eigen::VectorXd mu(L);
  switch (kind) {
    case MuCase::Ufc: {
      switch (scheme.kind) {
        case SchemeKind::Best1:
          mu.setOnes();
          mu[0] = 0.0;
          break;
        case SchemeKind::BestM:
          if (scheme.m > L) throw InvalidScheme("mu_case: m exceeds L");
          mu.setOnes();
          mu.head(scheme.m).setZero();
          break;
        case SchemeKind::RankM:
          if (scheme.m > L) throw InvalidScheme("mu_case: m exceeds L");
          for (int i = 0; i < L; ++i) {
            mu[i] = std::min(i, scheme.m);
          }
          break;
        default:
          throw InvalidScheme(
              "mu_case: the unfavourable case is defined only for best/rank "
              "targets");
      }
      break;
    }
    case MuCase::Inc:
      for (int i = 0; i < L; ++i) mu[i] = i;
      break;
    case MuCase::Unif: {
      std::uniform_real_distribution<double> unif(0.0, 100.0);
      while (true) {
        for (int i = 0; i < L; ++i) mu[i] = unif(rng);
        std::sort(mu.begin(), mu.end());
        bool ok = true;
        for (int i = 1; i < L; ++i) {
          if (mu[i] - mu[i - 1] < min_gap) {
            ok = false;
            break;
          }
        }
        if (ok) break;
      }
      break;
    }
  }
  return mu;
}

namespace {

bool positive_definite(const Eigen::MatrixXd& m) {
  try {
    cholesky(m);
    return true;
  } catch (const NotPositiveDefinite&) {
    return false;
  }
}

Eigen::VectorXd random_variances(int L, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(1.0, 10.0);
  Eigen::VectorXd v(L);
  for (int i = 0; i < L; ++i) v[i] = unif(rng);
  return v;
}

Eigen::MatrixXd draw_sigma(const SigmaCase& kind, int L,
                           std::mt19937_64& rng) {
  const Eigen::VectorXd var = random_variances(L, rng);
  Eigen::MatrixXd sigma(L, L);
  switch (kind.kind) {
    case SigmaCase::Kind::Cor: {
      if (kind.c < 0.0 || kind.c >= 1.0) {
        throw InvalidParameter("sigma_case: cor needs c in [0,1)");
      }
      for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
          sigma(i, j) = i == j ? var[i]
                               : kind.c * std::sqrt(var[i] * var[j]);
        }
      }
      break;
    }
    case SigmaCase::Kind::AltNeg: {
      if (kind.c >= 0.0 || kind.c <= -1.0) {
        throw InvalidParameter("sigma_case: altneg needs c in (-1,0)");
      }
      const double a = std::fabs(kind.c);
      for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
          const double sign = (i - j) % 2 == 0 ? 1.0 : -1.0;
          sigma(i, j) = i == j ? var[i]
                               : sign * a * std::sqrt(var[i] * var[j]);
        }
      }
      break;
    }
    case SigmaCase::Kind::Wishart: {
      // Scale matrix D^(1/2) C D^(1/2) with C a random correlation matrix;
      // the draw is divided by the degrees of freedom so its expectation is
      // the scale matrix.
      std::normal_distribution<double> normal(0.0, 1.0);
      Eigen::MatrixXd a(L, L);
      for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) a(i, j) = normal(rng);
      }
      const Eigen::MatrixXd g = a * a.transpose();
      Eigen::MatrixXd scale(L, L);
      for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
          scale(i, j) = std::sqrt(var[i] * var[j]) * g(i, j) /
                        std::sqrt(g(i, i) * g(j, j));
        }
      }
      const Eigen::MatrixXd chol = cholesky(scale);
      Eigen::MatrixXd z(L, L);
      for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) z(i, j) = normal(rng);
      }
      const Eigen::MatrixXd y = chol * z;
      sigma = y * y.transpose() / L;
      break;
    }
  }
  return sigma;
}

}  // namespace

Eigen::MatrixXd sigma_case(const SigmaCase& kind, int L,
                           std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::MatrixXd sigma = draw_sigma(kind, L, rng);
    if (positive_definite(sigma)) return sigma;
  }
  throw GenerationFailed("sigma_case: no positive definite draw in 100 tries");
}

ProblemInstance make_instance(const Eigen::VectorXd& mu,
                              const Eigen::MatrixXd& sigma) {
  if (mu.size() != sigma.rows() || sigma.rows() != sigma.cols()) {
    throw DimensionMismatch("make_instance: dimensions disagree");
  }
  return {mu, sigma, cholesky(sigma)};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t seed_mix(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t state = 0x8000000080001489ULL;
  for (std::uint64_t p : parts) {
    state = splitmix64(state ^ splitmix64(p));
  }
  return state;
}

ObserveFn make_observer(const ProblemInstance& instance, std::uint64_t seed,
                        Sampling sampling) {
  const Eigen::VectorXd mu = instance.mu;
  const Eigen::MatrixXd chol = instance.chol;
  const int L = static_cast<int>(mu.size());
  return [mu, chol, L, seed, sampling](int solution, int scenario) {
    if (solution < 0 || solution >= L || scenario < 0) {
      throw OutOfRange("observe: bad solution/scenario index");
    }
    // Scenario inputs depend on the seed and the scenario counter alone
    // (plus the solution in independent mode).
    const std::uint64_t stream =
        sampling == Sampling::Crn
            ? seed_mix({seed, static_cast<std::uint64_t>(scenario)})
            : seed_mix({seed, static_cast<std::uint64_t>(scenario),
                        0xABCDULL + static_cast<std::uint64_t>(solution)});
    std::mt19937_64 rng(stream);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(L);
    for (int i = 0; i < L; ++i) z[i] = normal(rng);
    return mu[solution] + chol.row(solution).dot(z);
  };
}

std::string dump_instance(const ProblemInstance& instance) {
  const auto num = [](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  };
  std::string out = "{\n  \"mu\": [";
  for (Eigen::Index i = 0; i < instance.mu.size(); ++i) {
    if (i) out += ", ";
    out += num(instance.mu[i]);
  }
  out += "],\n  \"sigma\": [\n";
  for (Eigen::Index i = 0; i < instance.sigma.rows(); ++i) {
    out += "    [";
    for (Eigen::Index j = 0; j < instance.sigma.cols(); ++j) {
      if (j) out += ", ";
      out += num(instance.sigma(i, j));
    }
    out += i + 1 < instance.sigma.rows() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace bayesrs
