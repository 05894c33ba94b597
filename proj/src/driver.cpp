#include "bayesrs/driver.hpp"

#include <charconv>

#include "bayesrs/pcs.hpp"
#include "bayesrs/posterior.hpp"

namespace bayesrs {

CrnMode parse_crn_mode(const std::string& name) {
  if (name == "isCRN") return CrnMode::IsCrn;
  if (name == "noCRN") return CrnMode::NoCrn;
  throw InvalidParameter("parse_crn_mode: unknown mode '" + name + "'");
}

std::string to_string(CrnMode mode) {
  return mode == CrnMode::IsCrn ? "isCRN" : "noCRN";
}

void validate(const RunConfig& config) {
  if (config.solutions < 2) {
    throw InvalidParameter("config: need at least two solutions");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw InvalidParameter("config: alpha must lie in (0,1)");
  }
  if (config.delta < 0.0) {
    throw InvalidParameter("config: delta must be >= 0");
  }
  if (config.n0 <= config.solutions) {
    throw InitialSampleTooSmall("config: n0 must be >= L+1");
  }
  if (config.budget < config.solutions) {
    throw BudgetTooSmall("config: budget must be >= L");
  }
  if (config.nu0 < 0.0) {
    throw InvalidParameter("config: nu0 must be >= 0");
  }
  if (config.cap <
      static_cast<long long>(config.solutions) * config.n0) {
    throw InvalidParameter("config: cap must be >= L * n0");
  }
  target_ranks(config.scheme, config.solutions);  // scheme fits L
}

RunResult run(const RunConfig& config, const ObserveFn& observe) {
  validate(config);
  RunResult result;
  RaggedSample sample = RaggedSample::init(config.solutions, config.n0,
                                           observe, /*strict=*/true);
  int iteration = 0;
  try {
    while (true) {
      const PosteriorState post =
          config.crn_mode == CrnMode::IsCrn
              ? posterior_estimate(sample, config.nu0)
              : posterior_marginal(sample);
      result.lambda_clamps += post.clamp_count;

      Selection selection = select(config.scheme, post.nu_hat);
      const DominanceTable table =
          dominance_table(post, selection, config.delta);
      result.scale_clamps += table.scale_clamps;
      const double lb = bonferroni_lb(table);

      result.trace.push_back(
          {iteration, sample.sizes(), lb, selection.selected, {}});

      if (lb >= 1.0 - config.alpha) {
        result.termination = Termination::Certified;
        result.selection = std::move(selection);
        result.final_lb = lb;
        break;
      }
      if (sample.total() >= config.cap) {
        result.termination = Termination::CapReached;
        result.selection = std::move(selection);
        result.final_lb = lb;
        break;
      }

      StrategyInputs inputs{post, table, config.budget, config.alpha,
                            config.delta};
      Eigen::VectorXd weights;
      const Eigen::VectorXi q = allocate(
          config.strategy, inputs, config.record_weights ? &weights : nullptr);
      if (config.record_weights) result.trace.back().weights = weights;
      sample.append(q, observe);
      ++iteration;
    }
  } catch (const Error& e) {
    throw RunError(iteration, e.what());
  }
  result.iterations = iteration;
  result.total_simulations = sample.total();
  return result;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename Vec>
std::string join(const Vec& v) {
  std::string out;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(v.size()); ++i) {
    if (i) out += ',';
    if constexpr (std::is_integral_v<std::decay_t<decltype(v[i])>>) {
      out += std::to_string(v[i]);
    } else {
      out += format_double(v[i]);
    }
  }
  return out;
}

}  // namespace

std::string trace_lines(const RunConfig& config, const RunResult& result,
                        bool verbose) {
  std::string out = "config L=" + std::to_string(config.solutions) +
                    " alpha=" + format_double(config.alpha) +
                    " delta=" + format_double(config.delta) +
                    " n0=" + std::to_string(config.n0) +
                    " b=" + std::to_string(config.budget) +
                    " nu0=" + format_double(config.nu0) +
                    " scheme=" + to_string(config.scheme) +
                    " strategy=" + to_string(config.strategy) +
                    " crn=" + to_string(config.crn_mode) +
                    " cap=" + std::to_string(config.cap) +
                    " seed=" + std::to_string(config.seed) + "\n";
  for (const TraceRecord& rec : result.trace) {
    out += "iter=" + std::to_string(rec.iteration) + " n=" + join(rec.n) +
           " lb=" + format_double(rec.lb) + " B=" + join(rec.selected);
    if (verbose && rec.weights.size() > 0) {
      out += " w=" + join(rec.weights);
    }
    out += '\n';
  }
  out += "result termination=";
  out += result.termination == Termination::Certified ? "certified"
                                                      : "cap_reached";
  out += " simulations=" + std::to_string(result.total_simulations) +
         " iterations=" + std::to_string(result.iterations) +
         " lb=" + format_double(result.final_lb) + " B=" +
         join(result.selection.selected) + "\n";
  return out;
}

}  // namespace bayesrs
