#include "efqc/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "efqc/errors.hpp"
#include "efqc/stats.hpp"
#include "json.hpp"

namespace efqc {

namespace {

constexpr std::array<std::pair<ProtocolKind, std::string_view>, 6> kProtocolNames{{
    {ProtocolKind::repetition_correct, "repetition_correct"},
    {ProtocolKind::parity_reject, "parity_reject"},
    {ProtocolKind::teleport, "teleport"},
    {ProtocolKind::optical_reject, "optical_reject"},
    {ProtocolKind::end_to_end, "end_to_end"},
    {ProtocolKind::dual_distribution, "dual_distribution"},
}};

constexpr std::array<std::pair<ModelKind, std::string_view>, 4> kModelNames{{
    {ModelKind::none, "none"},
    {ModelKind::bitflip, "bitflip"},
    {ModelKind::rotation, "rotation"},
    {ModelKind::phaseflip, "phaseflip"},
}};

// Per-trial contribution. In trajectory mode `accepted` and `fatal` are 0/1;
// in exact mode they are probabilities summed over enumerated branches.
struct TrialTally {
  double accepted = 0.0;
  double fidelity_sum = 0.0;
  double fatal = 0.0;
};

ErrorModel make_model(ModelKind kind, double value) {
  switch (kind) {
    case ModelKind::none: return ErrorModel::none();
    case ModelKind::bitflip: return ErrorModel::bit_flip(value);
    case ModelKind::rotation: return ErrorModel::rotation(value);
    case ModelKind::phaseflip: return ErrorModel::phase_flip(value);
  }
  return ErrorModel::none();
}

void check_model_value(ModelKind kind, double value) {
  std::ostringstream msg;
  if ((kind == ModelKind::bitflip || kind == ModelKind::phaseflip) &&
      !(value >= 0.0 && value <= 1.0)) {
    msg << to_string(kind) << " probability " << value << " is outside [0, 1]";
    throw ConfigError(msg.str());
  }
  if (kind == ModelKind::rotation && !std::isfinite(value)) {
    throw ConfigError("rotation angle must be finite");
  }
}

TrialTally tally(const ProtocolOutcome& outcome, double weight) {
  if (!outcome.accepted()) return {};
  const double f = *outcome.fidelity;
  return {weight, weight * f, f < kFatalFidelity ? weight : 0.0};
}

TrialTally run_trial(const ExperimentConfig& config, const std::vector<ErrorModel>& models,
                     const RandomSource& source, std::uint64_t trial) {
  Rng rng = source.substream(trial);
  const PureState input = takes_input(config.protocol) ? random_qubit(rng)
                                                       : PureState::basis({labels::particle1}, 0);
  auto run = [&](OutcomeChooser& chooser) {
    return run_protocol(config.protocol, models, input, chooser);
  };
  if (config.mode == ExecutionMode::trajectory) {
    SampledChooser chooser(rng);
    return tally(run(chooser), 1.0);
  }
  TrialTally total;
  for (const auto& path : enumerate_paths(run)) {
    const TrialTally t = tally(path.result, path.weight);
    total.accepted += t.accepted;
    total.fidelity_sum += t.fidelity_sum;
    total.fatal += t.fatal;
  }
  return total;
}

std::vector<TrialTally> run_trials(const ExperimentConfig& config,
                                   const std::vector<ErrorModel>& models) {
  const RandomSource source(config.seed);
  std::vector<TrialTally> tallies(config.trials);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(config.workers, config.trials));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < config.trials; ++i) tallies[i] = run_trial(config, models, source, i);
    return tallies;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < config.trials; i += workers) {
          tallies[i] = run_trial(config, models, source, i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return tallies;
}

}  // namespace

std::optional<ProtocolKind> parse_protocol(std::string_view name) {
  for (const auto& [kind, n] : kProtocolNames) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

std::optional<ModelKind> parse_model(std::string_view name) {
  for (const auto& [kind, n] : kModelNames) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(ProtocolKind kind) {
  for (const auto& [k, n] : kProtocolNames) {
    if (k == kind) return n;
  }
  return "?";
}

std::string_view to_string(ModelKind kind) {
  for (const auto& [k, n] : kModelNames) {
    if (k == kind) return n;
  }
  return "?";
}

std::size_t channel_count(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::repetition_correct: return 3;
    case ProtocolKind::parity_reject: return 2;
    case ProtocolKind::teleport: return 1;
    case ProtocolKind::optical_reject: return 2;
    case ProtocolKind::end_to_end: return 2;
    case ProtocolKind::dual_distribution: return 4;
  }
  return 0;
}

bool takes_input(ProtocolKind kind) {
  return kind == ProtocolKind::repetition_correct || kind == ProtocolKind::parity_reject ||
         kind == ProtocolKind::teleport || kind == ProtocolKind::end_to_end;
}

void validate(const ExperimentConfig& config) {
  if (config.trials < 1) throw ConfigError("trials must be at least 1");
  if (config.workers < 1) throw ConfigError("workers must be at least 1");
  const std::size_t channels = channel_count(config.protocol);
  for (std::size_t i = 0; i < config.noisy_positions.size(); ++i) {
    const std::size_t pos = config.noisy_positions[i];
    if (pos >= channels) {
      throw ConfigError("channel position " + std::to_string(pos) + " out of range: " +
                        std::string(to_string(config.protocol)) + " has " +
                        std::to_string(channels) + " channel(s)");
    }
    if (std::count(config.noisy_positions.begin(), config.noisy_positions.end(), pos) > 1) {
      throw ConfigError("channel position " + std::to_string(pos) + " listed twice");
    }
  }
  check_model_value(config.model, model_parameter(config));
  if (!config.sweep.empty() && config.model == ModelKind::none) {
    throw ConfigError("cannot sweep the parameter of error model 'none'");
  }
  for (double v : config.sweep) check_model_value(config.model, v);
}

double model_parameter(const ExperimentConfig& config) {
  switch (config.model) {
    case ModelKind::none: return 0.0;
    case ModelKind::rotation: return config.theta;
    case ModelKind::bitflip:
    case ModelKind::phaseflip: return config.p;
  }
  return 0.0;
}

std::vector<ErrorModel> channel_models(const ExperimentConfig& config) {
  const std::size_t n = channel_count(config.protocol);
  std::vector<ErrorModel> models(n, ErrorModel::none());
  const ErrorModel noisy = make_model(config.model, model_parameter(config));
  if (config.noisy_positions.empty()) {
    std::fill(models.begin(), models.end(), noisy);
  } else {
    for (std::size_t pos : config.noisy_positions) models.at(pos) = noisy;
  }
  return models;
}

ProtocolOutcome run_protocol(ProtocolKind kind, const std::vector<ErrorModel>& models,
                             const PureState& input, OutcomeChooser& chooser) {
  if (models.size() != channel_count(kind)) {
    throw ConfigError(std::string(to_string(kind)) + " needs " +
                      std::to_string(channel_count(kind)) + " channel model(s)");
  }
  switch (kind) {
    case ProtocolKind::repetition_correct:
      return repetition_correct(input, {models[0], models[1], models[2]}, chooser);
    case ProtocolKind::parity_reject:
      return parity_reject(input, models[0], models[1], chooser);
    case ProtocolKind::teleport:
      return teleport(input, chooser, BellCorrections::standard(), models[0]);
    case ProtocolKind::optical_reject:
      return optical_reject_transmit(models[0], models[1], chooser);
    case ProtocolKind::end_to_end:
      return end_to_end_teleport(input, models[0], models[1], chooser);
    case ProtocolKind::dual_distribution:
      return dual_distribution({models[0], models[1], models[2], models[3]}, chooser);
  }
  throw ConfigError("unknown protocol");
}

ExperimentStats run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const std::vector<TrialTally> tallies = run_trials(config, channel_models(config));

  // Reduce in trial order for schedule-independent floating-point sums.
  TrialTally total;
  for (const auto& t : tallies) {
    total.accepted += t.accepted;
    total.fidelity_sum += t.fidelity_sum;
    total.fatal += t.fatal;
  }

  ExperimentStats stats;
  stats.param = model_parameter(config);
  stats.trials = config.trials;
  stats.seed = config.seed;
  const double n = static_cast<double>(config.trials);
  stats.accept_rate = total.accepted / n;
  stats.mean_fidelity = total.accepted > 0.0 ? total.fidelity_sum / total.accepted
                                             : std::numeric_limits<double>::quiet_NaN();
  stats.fatal_rate = total.accepted > 0.0 ? total.fatal / total.accepted
                                          : std::numeric_limits<double>::quiet_NaN();
  if (config.mode == ExecutionMode::trajectory) {
    const auto accepted = static_cast<std::uint64_t>(std::llround(total.accepted));
    const auto fatal = static_cast<std::uint64_t>(std::llround(total.fatal));
    const Interval a = wilson_interval(accepted, config.trials);
    const Interval f = wilson_interval(fatal, accepted);
    stats.accept_lo = a.lo;
    stats.accept_hi = a.hi;
    stats.fatal_lo = f.lo;
    stats.fatal_hi = f.hi;
    if (accepted == 0) stats.fatal_rate = std::numeric_limits<double>::quiet_NaN();
  } else {
    stats.accept_lo = stats.accept_hi = stats.accept_rate;
    stats.fatal_lo = stats.fatal_hi = stats.fatal_rate;
  }
  stats.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

std::vector<ExperimentStats> sweep(const ExperimentConfig& config) {
  if (config.sweep.empty()) throw ConfigError("sweep needs at least one parameter value");
  validate(config);
  std::vector<double> values = config.sweep;
  std::sort(values.begin(), values.end());
  std::vector<ExperimentStats> rows;
  rows.reserve(values.size());
  for (double v : values) {
    ExperimentConfig point = config;
    point.sweep.clear();
    if (config.model == ModelKind::rotation) {
      point.theta = v;
    } else {
      point.p = v;
    }
    rows.push_back(run_experiment(point));
  }
  return rows;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

void write_csv(std::ostream& out, const std::vector<ExperimentStats>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.param) << ',' << r.trials << ',' << format_number(r.accept_rate) << ','
        << format_number(r.accept_lo) << ',' << format_number(r.accept_hi) << ','
        << format_number(r.mean_fidelity) << ',' << format_number(r.fatal_rate) << ','
        << format_number(r.fatal_lo) << ',' << format_number(r.fatal_hi) << ',' << r.seed << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ExperimentStats>& rows) {
  const auto number = [](double v) -> nlohmann::ordered_json {
    if (std::isnan(v)) return nullptr;
    return v;
  };
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    table.push_back({
        {"param", number(r.param)},
        {"trials", r.trials},
        {"accept_rate", number(r.accept_rate)},
        {"accept_lo", number(r.accept_lo)},
        {"accept_hi", number(r.accept_hi)},
        {"mean_fidelity", number(r.mean_fidelity)},
        {"fatal_rate", number(r.fatal_rate)},
        {"fatal_lo", number(r.fatal_lo)},
        {"fatal_hi", number(r.fatal_hi)},
        {"seed", r.seed},
    });
  }
  out << table.dump(2) << '\n';
}

void write_results(const ExperimentConfig& config, const std::vector<ExperimentStats>& rows,
                   std::ostream& fallback) {
  const auto emit = [&](std::ostream& out) {
    if (config.format == OutputFormat::json) {
      write_json(out, rows);
    } else {
      write_csv(out, rows);
    }
  };
  if (!config.output_path) {
    emit(fallback);
    return;
  }
  std::ofstream file(*config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot open " + config.output_path->string() + " for writing");
  emit(file);
  file.flush();
  if (!file) throw OutputError("failed writing " + config.output_path->string());
}

}  // namespace efqc
