#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <random>

#include "bayesrs/numerics.hpp"
#include "bayesrs/testbed.hpp"

using namespace bayesrs;

TEST_CASE("unfavourable mean case per target") {
  std::mt19937_64 rng(71);
  const Eigen::VectorXd b1 = mu_case(MuCase::Ufc, 20, best1(), rng);
  CHECK(b1[0] == 0.0);
  CHECK(b1.tail(19).minCoeff() == 1.0);
  CHECK(b1.tail(19).maxCoeff() == 1.0);

  const Eigen::VectorXd b10 = mu_case(MuCase::Ufc, 20, best_m(10), rng);
  CHECK(b10.head(10).cwiseAbs().maxCoeff() == 0.0);
  CHECK(b10.tail(10).minCoeff() == 1.0);

  const Eigen::VectorXd r10 = mu_case(MuCase::Ufc, 20, rank_m(10), rng);
  for (int i = 0; i < 10; ++i) CHECK(r10[i] == static_cast<double>(i));
  for (int i = 10; i < 20; ++i) CHECK(r10[i] == 10.0);

  CHECK_THROWS_AS(mu_case(MuCase::Ufc, 20, median(), rng), InvalidScheme);
  CHECK_THROWS_AS(mu_case(MuCase::Ufc, 5, best_m(10), rng), InvalidScheme);
}

TEST_CASE("increasing mean case") {
  std::mt19937_64 rng(72);
  const Eigen::VectorXd mu = mu_case(MuCase::Inc, 4, best1(), rng);
  CHECK(mu == (Eigen::VectorXd(4) << 0, 1, 2, 3).finished());
}

TEST_CASE("uniform mean case is sorted with separated entries") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd mu = mu_case(MuCase::Unif, 12, best1(), rng);
    CHECK(mu.minCoeff() >= 0.0);
    CHECK(mu.maxCoeff() <= 100.0);
    for (int i = 1; i < 12; ++i) {
      CHECK(mu[i] - mu[i - 1] >= 0.01);
    }
  }
}

TEST_CASE("constant-correlation covariance case") {
  std::mt19937_64 rng(74);
  const Eigen::MatrixXd diag = sigma_case({SigmaCase::Kind::Cor, 0.0}, 5, rng);
  for (int i = 0; i < 5; ++i) {
    CHECK(diag(i, i) >= 1.0);
    CHECK(diag(i, i) <= 10.0);
    for (int j = 0; j < 5; ++j) {
      if (i != j) CHECK(diag(i, j) == 0.0);
    }
  }

  const Eigen::MatrixXd cor = sigma_case({SigmaCase::Kind::Cor, 0.9}, 5, rng);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (i != j) {
        CHECK(cor(i, j) ==
              doctest::Approx(0.9 * std::sqrt(cor(i, i) * cor(j, j)))
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("alternating-sign covariance case") {
  std::mt19937_64 rng(75);
  const Eigen::MatrixXd s = sigma_case({SigmaCase::Kind::AltNeg, -0.5}, 6, rng);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i == j) continue;
      const double expected =
          ((i - j) % 2 == 0 ? 0.5 : -0.5) * std::sqrt(s(i, i) * s(j, j));
      CHECK(s(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  CHECK_NOTHROW(cholesky(s));
}

TEST_CASE("wishart covariance case is symmetric positive definite") {
  std::mt19937_64 rng(76);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd s =
        sigma_case({SigmaCase::Kind::Wishart, 0.0}, 6, rng);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK_NOTHROW(cholesky(s));
  }
}

TEST_CASE("covariance case parameter guards") {
  std::mt19937_64 rng(77);
  CHECK_THROWS_AS(sigma_case({SigmaCase::Kind::Cor, -0.1}, 4, rng),
                  InvalidParameter);
  CHECK_THROWS_AS(sigma_case({SigmaCase::Kind::Cor, 1.0}, 4, rng),
                  InvalidParameter);
  CHECK_THROWS_AS(sigma_case({SigmaCase::Kind::AltNeg, 0.2}, 4, rng),
                  InvalidParameter);
}

TEST_CASE("case name parsing round trips") {
  CHECK(to_string(parse_mu_case("ufc")) == "ufc");
  CHECK(to_string(parse_mu_case("inc")) == "inc");
  CHECK(to_string(parse_mu_case("unif")) == "unif");
  CHECK(to_string(parse_sigma_case("cor:0.5")) == "cor:0.5");
  CHECK(to_string(parse_sigma_case("altneg:-0.9")) == "altneg:-0.9");
  CHECK(to_string(parse_sigma_case("wishart")) == "wishart");
  CHECK_THROWS_AS(parse_mu_case("flat"), InvalidParameter);
  CHECK_THROWS_AS(parse_sigma_case("cor"), InvalidParameter);
  CHECK_THROWS_AS(parse_sigma_case("cor:x"), InvalidParameter);
}

TEST_CASE("observations are deterministic and order independent") {
  Eigen::VectorXd mu(3);
  mu << 1.0, 2.0, 3.0;
  Eigen::MatrixXd sigma(3, 3);
  sigma << 2, 0.5, 0.2, 0.5, 1, 0.1, 0.2, 0.1, 1.5;
  const ProblemInstance inst = make_instance(mu, sigma);
  const ObserveFn observe = make_observer(inst, 123);

  const double first = observe(1, 7);
  // Interleave other queries, then ask again.
  observe(0, 0);
  observe(2, 7);
  observe(1, 8);
  CHECK(observe(1, 7) == first);

  // A fresh observer with the same seed agrees everywhere.
  const ObserveFn again = make_observer(inst, 123);
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 20; ++k) CHECK(again(i, k) == observe(i, k));
  }
  // A different seed disagrees somewhere.
  const ObserveFn other = make_observer(inst, 124);
  CHECK(other(1, 7) != first);
}

TEST_CASE("complete scenario columns have the model mean") {
  Eigen::VectorXd mu(3);
  mu << -1.0, 0.5, 2.0;
  Eigen::MatrixXd sigma(3, 3);
  sigma << 2, 0.8, 0.4, 0.8, 1, 0.3, 0.4, 0.3, 1.5;
  const ProblemInstance inst = make_instance(mu, sigma);
  const ObserveFn observe = make_observer(inst, 7);
  const int scenarios = 10000;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(3);
  for (int k = 0; k < scenarios; ++k) {
    for (int i = 0; i < 3; ++i) mean[i] += observe(i, k);
  }
  mean /= scenarios;
  for (int i = 0; i < 3; ++i) {
    const double se = std::sqrt(sigma(i, i) / scenarios);
    CHECK(std::fabs(mean[i] - mu[i]) <= 3.0 * se);
  }
}

TEST_CASE("CRN columns are correlated, independent streams are not") {
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXd sigma(2, 2);
  sigma << 1.0, 0.9, 0.9, 1.0;
  const ProblemInstance inst = make_instance(mu, sigma);
  const int scenarios = 10000;

  const auto empirical_corr = [&](const ObserveFn& observe) {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    double cross = 0.0;
    Eigen::Vector2d sq = Eigen::Vector2d::Zero();
    for (int k = 0; k < scenarios; ++k) {
      const double a = observe(0, k);
      const double b = observe(1, k);
      mean[0] += a;
      mean[1] += b;
      sq[0] += a * a;
      sq[1] += b * b;
      cross += a * b;
    }
    mean /= scenarios;
    const double va = sq[0] / scenarios - mean[0] * mean[0];
    const double vb = sq[1] / scenarios - mean[1] * mean[1];
    const double cab = cross / scenarios - mean[0] * mean[1];
    return cab / std::sqrt(va * vb);
  };

  CHECK(empirical_corr(make_observer(inst, 5, Sampling::Crn)) > 0.8);
  CHECK(std::fabs(empirical_corr(
            make_observer(inst, 5, Sampling::Independent))) < 0.05);
}

TEST_CASE("instance dump is valid json with the model values") {
  Eigen::VectorXd mu(2);
  mu << 0.25, -1.5;
  Eigen::MatrixXd sigma(2, 2);
  sigma << 2, 0.5, 0.5, 1;
  const std::string text = dump_instance(make_instance(mu, sigma));
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["mu"][0].get<double>() == 0.25);
  CHECK(j["mu"][1].get<double>() == -1.5);
  CHECK(j["sigma"][0][1].get<double>() == 0.5);
  CHECK(j["sigma"][1][1].get<double>() == 1.0);
}

TEST_CASE("seed mixing separates streams") {
  CHECK(seed_mix({1, 2, 3}) == seed_mix({1, 2, 3}));
  CHECK(seed_mix({1, 2, 3}) != seed_mix({1, 3, 2}));
  CHECK(seed_mix({0}) != seed_mix({1}));
}
