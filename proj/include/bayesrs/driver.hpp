// The sequential procedure: initialize, then loop
// posterior -> selection -> lower bound -> allocate -> observe
// until the Bonferroni bound certifies the selection or the simulation cap
// is reached.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "bayesrs/allocation.hpp"
#include "bayesrs/sample.hpp"
#include "bayesrs/targets.hpp"

namespace bayesrs {

enum class CrnMode { IsCrn, NoCrn };

// Accepts isCRN | noCRN.
CrnMode parse_crn_mode(const std::string& name);
std::string to_string(CrnMode mode);

struct RunConfig {
  int solutions = 2;
  double alpha = 0.05;
  double delta = 0.01;
  int n0 = 3;
  int budget = 2;
  double nu0 = 1.0;
  TargetScheme scheme;
  Strategy strategy = Strategy::DpwPlus;
  CrnMode crn_mode = CrnMode::IsCrn;
  // Total-simulation cap; a first-class termination reason.
  long long cap = 150000;
  std::uint64_t seed = 0;
  // Record per-iteration strategy weights in the trace.
  bool record_weights = false;
};

void validate(const RunConfig& config);

enum class Termination { Certified, CapReached };

struct TraceRecord {
  int iteration = 0;
  Eigen::VectorXi n;
  double lb = 0.0;
  std::vector<int> selected;
  Eigen::VectorXd weights;
};

struct RunResult {
  // Final selection, including the pairwise relation used for the bound;
  // correctness scoring checks the true means against exactly this relation.
  Selection selection;
  long long total_simulations = 0;
  int iterations = 0;
  double final_lb = 0.0;
  Termination termination = Termination::Certified;
  std::vector<TraceRecord> trace;
  // Diagnostics accumulated over all iterations.
  int lambda_clamps = 0;
  int scale_clamps = 0;
};

// Runs the procedure. Errors from the statistical machinery are rethrown as
// RunError tagged with the iteration they occurred in.
RunResult run(const RunConfig& config, const ObserveFn& observe);

// Line-oriented trace: a header echoing the configuration, then one record
// per iteration. verbose adds the strategy weights (when recorded).
std::string trace_lines(const RunConfig& config, const RunResult& result,
                        bool verbose = false);

}  // namespace bayesrs
