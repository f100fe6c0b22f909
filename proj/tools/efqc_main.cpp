// Command-line front end: `run`, `sweep` and `verify`.
//
// Exit status: 0 success, 1 verification failure, 2 configuration error.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "efqc/errors.hpp"
#include "efqc/harness.hpp"
#include "efqc/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string protocol = "optical_reject";
  std::string error_model = "none";
  double p = 0.0;
  double theta = 0.0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  bool exact = false;
  unsigned workers = 1;
  std::vector<std::size_t> positions;
  std::vector<double> values;
};

void add_experiment_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--protocol", o.protocol,
                 "repetition_correct | parity_reject | teleport | optical_reject | end_to_end | "
                 "dual_distribution")
      ->capture_default_str();
  cmd.add_option("--error-model", o.error_model, "none | bitflip | rotation | phaseflip")
      ->capture_default_str();
  cmd.add_option("--p", o.p, "flip probability for bitflip / phaseflip");
  cmd.add_option("--theta", o.theta, "rotation angle in radians");
  cmd.add_option("--trials", o.trials, "trials per parameter value")->capture_default_str();
  cmd.add_option("--seed", o.seed, "master seed")->capture_default_str();
  cmd.add_option("--out", o.out, "output file (stdout when omitted)");
  cmd.add_option("--format", o.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd.add_flag("--exact", o.exact, "enumerate all branches instead of sampling");
  cmd.add_option("--workers", o.workers, "worker threads")->capture_default_str();
  cmd.add_option("--positions", o.positions, "noisy channel positions (default: all)")
      ->delimiter(',');
}

efqc::ExperimentConfig to_config(const Options& o) {
  efqc::ExperimentConfig config;
  const auto protocol = efqc::parse_protocol(o.protocol);
  if (!protocol) throw efqc::ConfigError("unknown protocol '" + o.protocol + "'");
  const auto model = efqc::parse_model(o.error_model);
  if (!model) throw efqc::ConfigError("unknown error model '" + o.error_model + "'");
  config.protocol = *protocol;
  config.model = *model;
  config.p = o.p;
  config.theta = o.theta;
  config.trials = o.trials;
  config.seed = o.seed;
  config.mode = o.exact ? efqc::ExecutionMode::exact : efqc::ExecutionMode::trajectory;
  config.workers = o.workers;
  config.noisy_positions = o.positions;
  config.sweep = o.values;
  config.format = o.format == "json" ? efqc::OutputFormat::json : efqc::OutputFormat::csv;
  if (!o.out.empty()) config.output_path = o.out;
  return config;
}

void report_timing(const std::vector<efqc::ExperimentStats>& rows) {
  for (const auto& r : rows) {
    std::cerr << "param " << efqc::format_number(r.param) << ": " << r.trials << " trials in "
              << r.wall_time << " s\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for CNOT-free optical error rejection"};
  app.require_subcommand(1);

  Options run_opts;
  CLI::App* run = app.add_subcommand("run", "run one experiment");
  add_experiment_flags(*run, run_opts);

  Options sweep_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "run one experiment per parameter value");
  add_experiment_flags(*sweep, sweep_opts);
  sweep->add_option("--values", sweep_opts.values, "comma-separated p or theta values")
      ->delimiter(',')
      ->required();

  app.add_subcommand("verify", "run the built-in exact checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) {
      const efqc::ExperimentConfig config = to_config(run_opts);
      const std::vector<efqc::ExperimentStats> rows{efqc::run_experiment(config)};
      efqc::write_results(config, rows, std::cout);
      report_timing(rows);
      return 0;
    }
    if (sweep->parsed()) {
      const efqc::ExperimentConfig config = to_config(sweep_opts);
      const std::vector<efqc::ExperimentStats> rows = efqc::sweep(config);
      efqc::write_results(config, rows, std::cout);
      report_timing(rows);
      return 0;
    }
    const bool ok = efqc::print_report(std::cout, efqc::verify());
    return ok ? 0 : kExitVerifyFailed;
  } catch (const efqc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const efqc::OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
  }
  return kExitConfig;
}
