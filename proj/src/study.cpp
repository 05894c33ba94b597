#include "bayesrs/study.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace bayesrs {

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

constexpr std::uint64_t kMuStream = 0x6D75;
constexpr std::uint64_t kSigmaStream = 0x7369676D61;
constexpr std::uint64_t kObsStream = 0x6F6273;

}  // namespace

StudyConfig desk_scale() {
  StudyConfig c;
  c.rs_cases = {best1()};
  c.mu_cases = {MuCase::Ufc};
  c.sigma_cases = {{SigmaCase::Kind::Cor, 0.0},
                   {SigmaCase::Kind::Cor, 0.5},
                   {SigmaCase::Kind::Cor, 0.9}};
  c.crn_cases = {CrnMode::IsCrn};
  c.strategies = {Strategy::Equal, Strategy::GreedyOcba, Strategy::DpwPlus};
  c.m_cov = 5;
  c.m_mu = 5;
  c.m_rep = 10;
  c.solutions = 10;
  c.budget = 100;
  c.n0 = 11;
  c.cap = 60000;
  return c;
}

StudyConfig paper_scale() {
  StudyConfig c;
  c.rs_cases = {best1(), best_m(10), rank_m(10)};
  c.mu_cases = {MuCase::Ufc, MuCase::Inc, MuCase::Unif};
  c.sigma_cases = {{SigmaCase::Kind::Cor, 0.0},
                   {SigmaCase::Kind::Cor, 0.2},
                   {SigmaCase::Kind::Cor, 0.5},
                   {SigmaCase::Kind::Cor, 0.7},
                   {SigmaCase::Kind::Cor, 0.9},
                   {SigmaCase::Kind::AltNeg, -0.2},
                   {SigmaCase::Kind::AltNeg, -0.5},
                   {SigmaCase::Kind::AltNeg, -0.9},
                   {SigmaCase::Kind::Wishart, 0.0}};
  c.crn_cases = {CrnMode::IsCrn, CrnMode::NoCrn};
  c.strategies = {Strategy::Equal, Strategy::GreedyOcba, Strategy::DpwPlus};
  c.m_cov = 15;
  c.m_mu = 15;
  c.m_rep = 10;
  c.solutions = 20;
  c.budget = 200;
  c.n0 = 21;
  c.cap = 150000;
  return c;
}

StudyConfig load_study_config(const std::string& json_text,
                              const StudyConfig& base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("config: not valid JSON: ") + e.what());
  }
  StudyConfig c = base;
  try {
    if (j.contains("rs_cases")) {
      c.rs_cases.clear();
      for (const auto& s : j["rs_cases"]) {
        c.rs_cases.push_back(parse_scheme(s.get<std::string>()));
      }
    }
    if (j.contains("mu_cases")) {
      c.mu_cases.clear();
      for (const auto& s : j["mu_cases"]) {
        c.mu_cases.push_back(parse_mu_case(s.get<std::string>()));
      }
    }
    if (j.contains("sigma_cases")) {
      c.sigma_cases.clear();
      for (const auto& s : j["sigma_cases"]) {
        c.sigma_cases.push_back(parse_sigma_case(s.get<std::string>()));
      }
    }
    if (j.contains("crn_cases")) {
      c.crn_cases.clear();
      for (const auto& s : j["crn_cases"]) {
        c.crn_cases.push_back(parse_crn_mode(s.get<std::string>()));
      }
    }
    if (j.contains("strategies")) {
      c.strategies.clear();
      for (const auto& s : j["strategies"]) {
        c.strategies.push_back(parse_strategy(s.get<std::string>()));
      }
    }
    if (j.contains("m_cov")) c.m_cov = j["m_cov"].get<int>();
    if (j.contains("m_mu")) c.m_mu = j["m_mu"].get<int>();
    if (j.contains("m_rep")) c.m_rep = j["m_rep"].get<int>();
    if (j.contains("solutions")) c.solutions = j["solutions"].get<int>();
    if (j.contains("budget")) c.budget = j["budget"].get<int>();
    if (j.contains("n0")) c.n0 = j["n0"].get<int>();
    if (j.contains("nu0")) c.nu0 = j["nu0"].get<double>();
    if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
    if (j.contains("delta")) c.delta = j["delta"].get<double>();
    if (j.contains("cap")) c.cap = j["cap"].get<long long>();
    if (j.contains("base_seed")) c.base_seed = j["base_seed"].get<std::uint64_t>();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("config: bad field: ") + e.what());
  }
  return c;
}

std::string save_study_config(const StudyConfig& c) {
  nlohmann::json j;
  for (const auto& s : c.rs_cases) j["rs_cases"].push_back(to_string(s));
  for (const auto& s : c.mu_cases) j["mu_cases"].push_back(to_string(s));
  for (const auto& s : c.sigma_cases) j["sigma_cases"].push_back(to_string(s));
  for (const auto& s : c.crn_cases) j["crn_cases"].push_back(to_string(s));
  for (const auto& s : c.strategies) j["strategies"].push_back(to_string(s));
  j["m_cov"] = c.m_cov;
  j["m_mu"] = c.m_mu;
  j["m_rep"] = c.m_rep;
  j["solutions"] = c.solutions;
  j["budget"] = c.budget;
  j["n0"] = c.n0;
  j["nu0"] = c.nu0;
  j["alpha"] = c.alpha;
  j["delta"] = c.delta;
  j["cap"] = c.cap;
  j["base_seed"] = c.base_seed;
  j["threads"] = c.threads;
  return j.dump(2) + "\n";
}

std::uint64_t mu_seed(const StudyConfig& config, int i_mu) {
  return seed_mix({config.base_seed, kMuStream,
                   static_cast<std::uint64_t>(i_mu)});
}

std::uint64_t sigma_seed(const StudyConfig& config, int i_cov) {
  return seed_mix({config.base_seed, kSigmaStream,
                   static_cast<std::uint64_t>(i_cov)});
}

std::uint64_t observation_seed(const StudyConfig& config, int i_cov, int i_mu,
                               int rep) {
  return seed_mix({config.base_seed, kObsStream,
                   static_cast<std::uint64_t>(i_cov),
                   static_cast<std::uint64_t>(i_mu),
                   static_cast<std::uint64_t>(rep)});
}

namespace {

void validate_study(const StudyConfig& c) {
  if (c.rs_cases.empty() || c.mu_cases.empty() || c.sigma_cases.empty() ||
      c.crn_cases.empty() || c.strategies.empty()) {
    throw InvalidParameter("study: every case list must be nonempty");
  }
  if (c.m_cov < 1 || c.m_mu < 1 || c.m_rep < 1) {
    throw InvalidParameter("study: replication counts must be >= 1");
  }
  if (c.n0 <= c.solutions) {
    throw InitialSampleTooSmall("study: n0 must be >= L+1");
  }
  if (c.threads < 1) throw InvalidParameter("study: threads must be >= 1");
}

struct Task {
  int cell;
  int i_cov;
  int i_mu;
  int rep;
};

}  // namespace

std::pair<ProblemInstance, ObserveFn> replication_setup(
    const StudyConfig& config, const CellSpec& cell, int i_cov, int i_mu,
    int rep) {
  std::mt19937_64 mu_rng(mu_seed(config, i_mu));
  const Eigen::VectorXd mu = mu_case(cell.mu_case, config.solutions,
                                     cell.scheme, mu_rng, config.delta);
  std::mt19937_64 sigma_rng(sigma_seed(config, i_cov));
  const Eigen::MatrixXd sigma =
      sigma_case(cell.sigma_case, config.solutions, sigma_rng);
  ProblemInstance instance = make_instance(mu, sigma);
  ObserveFn observe =
      make_observer(instance, observation_seed(config, i_cov, i_mu, rep));
  return {std::move(instance), std::move(observe)};
}

namespace {

ReplicationRow run_replication(const StudyConfig& config, const CellSpec& cell,
                               const Task& task) {
  ReplicationRow row;
  row.cell = task.cell;
  row.i_cov = task.i_cov;
  row.i_mu = task.i_mu;
  row.rep = task.rep;
  try {
    auto [instance, observe] =
        replication_setup(config, cell, task.i_cov, task.i_mu, task.rep);

    RunConfig rc;
    rc.solutions = config.solutions;
    rc.alpha = config.alpha;
    rc.delta = config.delta;
    rc.n0 = config.n0;
    rc.budget = config.budget;
    rc.nu0 = config.nu0 < 0.0 ? config.solutions - 1 : config.nu0;
    rc.scheme = cell.scheme;
    rc.strategy = cell.strategy;
    rc.crn_mode = cell.crn_mode;
    rc.cap = config.cap;
    rc.seed = observation_seed(config, task.i_cov, task.i_mu, task.rep);

    const RunResult res = run(rc, observe);
    row.sims = res.total_simulations;
    row.termination = res.termination;
    // Cap-reached replications are scored as incorrect.
    row.correct = res.termination == Termination::Certified &&
                  is_correct(res.selection, instance.mu, config.delta);
  } catch (const Error& e) {
    row.failed = true;
    row.error = e.what();
  }
  return row;
}

}  // namespace

StudyResult run_study(const StudyConfig& config) {
  validate_study(config);
  StudyResult result;
  result.config = config;

  for (const auto& scheme : config.rs_cases) {
    for (const auto& mu : config.mu_cases) {
      for (const auto& sigma : config.sigma_cases) {
        for (const auto& crn : config.crn_cases) {
          for (const auto& strategy : config.strategies) {
            result.cells.push_back({scheme, mu, sigma, crn, strategy});
          }
        }
      }
    }
  }

  std::vector<Task> tasks;
  for (int cell = 0; cell < static_cast<int>(result.cells.size()); ++cell) {
    const int mu_draws =
        result.cells[cell].mu_case == MuCase::Unif ? config.m_mu : 1;
    for (int i_cov = 0; i_cov < config.m_cov; ++i_cov) {
      for (int i_mu = 0; i_mu < mu_draws; ++i_mu) {
        for (int rep = 0; rep < config.m_rep; ++rep) {
          tasks.push_back({cell, i_cov, i_mu, rep});
        }
      }
    }
  }

  result.rows.resize(tasks.size());
  const int threads =
      std::min<int>(config.threads, static_cast<int>(tasks.size()));
  if (threads <= 1) {
    for (size_t t = 0; t < tasks.size(); ++t) {
      result.rows[t] =
          run_replication(config, result.cells[tasks[t].cell], tasks[t]);
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          const size_t t = next.fetch_add(1);
          if (t >= tasks.size()) break;
          result.rows[t] =
              run_replication(config, result.cells[tasks[t].cell], tasks[t]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // Aggregate in task order; independent of the execution schedule.
  result.stats.resize(result.cells.size());
  std::vector<double> sum(result.cells.size(), 0.0);
  std::vector<double> sumsq(result.cells.size(), 0.0);
  std::vector<int> completed(result.cells.size(), 0);
  std::vector<int> correct(result.cells.size(), 0);
  for (const ReplicationRow& row : result.rows) {
    CellStats& st = result.stats[row.cell];
    ++st.n_reps;
    if (row.failed) {
      ++st.n_failures;
      continue;
    }
    if (row.termination == Termination::CapReached) ++st.n_failures;
    ++completed[row.cell];
    sum[row.cell] += static_cast<double>(row.sims);
    sumsq[row.cell] += static_cast<double>(row.sims) * row.sims;
    if (row.correct) ++correct[row.cell];
  }
  for (size_t c = 0; c < result.cells.size(); ++c) {
    CellStats& st = result.stats[c];
    if (completed[c] > 0) {
      st.mean_sims = sum[c] / completed[c];
      st.emp_pcs = static_cast<double>(correct[c]) / completed[c];
      if (completed[c] > 1) {
        const double var =
            (sumsq[c] - sum[c] * sum[c] / completed[c]) / (completed[c] - 1);
        st.std_sims = std::sqrt(std::max(var, 0.0));
      }
    }
  }
  return result;
}

std::string report(const StudyResult& result, ReportFormat format) {
  std::vector<CsvRow> rows;
  rows.reserve(result.cells.size());
  for (size_t c = 0; c < result.cells.size(); ++c) {
    const CellSpec& cell = result.cells[c];
    const CellStats& st = result.stats[c];
    rows.push_back({to_string(cell.scheme), to_string(cell.mu_case),
                    to_string(cell.sigma_case), to_string(cell.crn_mode),
                    to_string(cell.strategy), st.mean_sims, st.std_sims,
                    st.emp_pcs, st.n_reps, st.n_failures});
  }
  if (format == ReportFormat::Summary) return summary_from_rows(rows);
  std::string out =
      "rs_case,mu_case,sigma_case,crn_case,strategy,mean_sims,std_sims,"
      "emp_pcs,n_reps,n_failures\n";
  for (const CsvRow& r : rows) {
    out += r.rs_case + ',' + r.mu_case + ',' + r.sigma_case + ',' +
           r.crn_case + ',' + r.strategy + ',' + format_double(r.mean_sims) +
           ',' + format_double(r.std_sims) + ',' + format_double(r.emp_pcs) +
           ',' + std::to_string(r.n_reps) + ',' +
           std::to_string(r.n_failures) + '\n';
  }
  return out;
}

std::vector<CsvRow> parse_report_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidParameter("parse_report_csv: empty input");
  }
  if (line !=
      "rs_case,mu_case,sigma_case,crn_case,strategy,mean_sims,std_sims,"
      "emp_pcs,n_reps,n_failures") {
    throw InvalidParameter("parse_report_csv: unexpected header");
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 10) {
      throw InvalidParameter("parse_report_csv: bad row: " + line);
    }
    CsvRow r;
    r.rs_case = fields[0];
    r.mu_case = fields[1];
    r.sigma_case = fields[2];
    r.crn_case = fields[3];
    r.strategy = fields[4];
    r.mean_sims = std::stod(fields[5]);
    r.std_sims = std::stod(fields[6]);
    r.emp_pcs = std::stod(fields[7]);
    r.n_reps = std::stoi(fields[8]);
    r.n_failures = std::stoi(fields[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string summary_from_rows(const std::vector<CsvRow>& rows) {
  // Grouped like the study figures: one block per (target, mean case, CRN
  // case); covariance cases as lines, strategies as columns of mean
  // simulation counts with the empirical PCS in parentheses.
  std::vector<std::string> groups;
  for (const CsvRow& r : rows) {
    const std::string g = r.rs_case + " / " + r.mu_case + " / " + r.crn_case;
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) {
      groups.push_back(g);
    }
  }
  std::string out;
  char buf[128];
  for (const std::string& g : groups) {
    out += "== " + g + " ==\n";
    std::vector<std::string> sigmas;
    std::vector<std::string> strategies;
    for (const CsvRow& r : rows) {
      if (r.rs_case + " / " + r.mu_case + " / " + r.crn_case != g) continue;
      if (std::find(sigmas.begin(), sigmas.end(), r.sigma_case) ==
          sigmas.end()) {
        sigmas.push_back(r.sigma_case);
      }
      if (std::find(strategies.begin(), strategies.end(), r.strategy) ==
          strategies.end()) {
        strategies.push_back(r.strategy);
      }
    }
    std::snprintf(buf, sizeof(buf), "%-14s", "sigma");
    out += buf;
    for (const std::string& s : strategies) {
      std::snprintf(buf, sizeof(buf), " %-22s", s.c_str());
      out += buf;
    }
    out += '\n';
    for (const std::string& sc : sigmas) {
      std::snprintf(buf, sizeof(buf), "%-14s", sc.c_str());
      out += buf;
      for (const std::string& st : strategies) {
        bool found = false;
        for (const CsvRow& r : rows) {
          if (r.rs_case + " / " + r.mu_case + " / " + r.crn_case == g &&
              r.sigma_case == sc && r.strategy == st) {
            std::snprintf(buf, sizeof(buf), " %10.1f (pcs %.3f)", r.mean_sims,
                          r.emp_pcs);
            out += buf;
            found = true;
            break;
          }
        }
        if (!found) out += std::string(23, ' ');
      }
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

}  // namespace bayesrs
