// Command line front end: `run` executes a study grid and writes the CSV
// report, `report` reformats an existing CSV.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bayesrs/study.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bayesrs::InvalidParameter("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bayesrs::InvalidParameter("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential Bayesian ranking and selection under common "
               "random numbers"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string scale = "desk";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int parallel = 1;

  CLI::App* run_cmd = app.add_subcommand("run", "Run a study grid");
  run_cmd->add_option("--config", config_path,
                      "JSON study config; overrides the scale preset");
  run_cmd->add_option("--out", out_path, "CSV output path")->required();
  run_cmd
      ->add_option_function<std::uint64_t>(
          "--seed", [&](std::uint64_t v) { seed = v; seed_set = true; },
          "Base seed override")
      ->expected(1);
  run_cmd->add_option("--parallel", parallel, "Worker threads")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--scale", scale, "Preset: desk or paper")
      ->check(CLI::IsMember({"desk", "paper"}));

  std::string in_path;
  std::string format = "summary";
  CLI::App* report_cmd =
      app.add_subcommand("report", "Reformat a study CSV");
  report_cmd->add_option("--in", in_path, "CSV produced by run")->required();
  report_cmd->add_option("--format", format, "csv or summary")
      ->check(CLI::IsMember({"csv", "summary"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      bayesrs::StudyConfig config =
          scale == "paper" ? bayesrs::paper_scale() : bayesrs::desk_scale();
      if (!config_path.empty()) {
        config = bayesrs::load_study_config(read_file(config_path), config);
      }
      if (seed_set) config.base_seed = seed;
      config.threads = parallel;
      const bayesrs::StudyResult result = bayesrs::run_study(config);
      write_file(out_path, bayesrs::report(result, bayesrs::ReportFormat::Csv));
      std::cout << bayesrs::report(result, bayesrs::ReportFormat::Summary);
      return 0;
    }
    if (*report_cmd) {
      const auto rows = bayesrs::parse_report_csv(read_file(in_path));
      if (format == "summary") {
        std::cout << bayesrs::summary_from_rows(rows);
      } else {
        std::cout << read_file(in_path);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
