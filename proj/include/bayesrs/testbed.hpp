// Synthetic problem generators: mean-vector cases, covariance cases and the
// CRN observation callback backed by a multivariate normal model with
// counter-based scenario generation.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>

#include "bayesrs/sample.hpp"
#include "bayesrs/targets.hpp"

namespace bayesrs {

struct ProblemInstance {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
  // Lower Cholesky factor of sigma.
  Eigen::MatrixXd chol;
};

enum class MuCase { Ufc, Inc, Unif };

// Accepts ufc | inc | unif.
MuCase parse_mu_case(const std::string& name);
std::string to_string(MuCase mu_case);

struct SigmaCase {
  enum class Kind { Cor, AltNeg, Wishart };
  Kind kind = Kind::Cor;
  double c = 0.0;
};

// Accepts cor:<c> | altneg:<c> | wishart.
SigmaCase parse_sigma_case(const std::string& name);
std::string to_string(const SigmaCase& sigma_case);

// Mean vectors. "ufc" is scheme-dependent: one (or m) solutions at 0 and
// the rest one indifference-relevant step above; "inc" is 0,1,...,L-1;
// "unif" draws L values from [0,100], redrawing the whole vector until all
// pairwise gaps reach min_gap, then sorts ascending.
Eigen::VectorXd mu_case(MuCase kind, int L, const TargetScheme& scheme,
                        std::mt19937_64& rng, double min_gap = 0.01);

// Covariance matrices with variances uniform on [1,10]: constant
// correlation c, alternating-sign correlation (-1)^(i-j) |c|, or a Wishart
// draw with L degrees of freedom around a random scale matrix. Redraws up
// to 100 times if the result is not numerically positive definite.
Eigen::MatrixXd sigma_case(const SigmaCase& kind, int L,
                           std::mt19937_64& rng);

ProblemInstance make_instance(const Eigen::VectorXd& mu,
                              const Eigen::MatrixXd& sigma);

enum class Sampling {
  // All solutions share scenario k's standard-normal vector.
  Crn,
  // Each solution has its own scenario stream (comparison mode).
  Independent
};

// Observation callback over the instance. Scenario k's inputs are generated
// from (seed, k) alone, so a value is reproducible without replaying the
// draws before it and independent of the allocation history.
ObserveFn make_observer(const ProblemInstance& instance, std::uint64_t seed,
                        Sampling sampling = Sampling::Crn);

// Audit dump of mu and sigma as JSON text.
std::string dump_instance(const ProblemInstance& instance);

// Deterministic seed derivation for named streams.
std::uint64_t seed_mix(std::initializer_list<std::uint64_t> parts);

}  // namespace bayesrs
