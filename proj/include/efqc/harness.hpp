#pragma once

// Monte Carlo / exact experiment runner and result tables.
//
// Every trial draws from its own substream of the master seed and trial
// results are reduced in trial order, so output is bit-identical for a given
// configuration no matter how many workers run it.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "efqc/channels.hpp"
#include "efqc/protocols.hpp"

namespace efqc {

enum class ProtocolKind {
  repetition_correct,
  parity_reject,
  teleport,
  optical_reject,
  end_to_end,
  dual_distribution,
};

enum class ModelKind { none, bitflip, rotation, phaseflip };

/// trajectory: sample every random decision. exact: enumerate all channel
/// and measurement branches of each trial with their probabilities.
enum class ExecutionMode { trajectory, exact };

enum class OutputFormat { csv, json };

std::optional<ProtocolKind> parse_protocol(std::string_view name);
std::optional<ModelKind> parse_model(std::string_view name);
std::string_view to_string(ProtocolKind kind);
std::string_view to_string(ModelKind kind);

/// Noisy channel positions of a protocol, in order:
///   repetition_correct  particle1, ancilla1, ancilla2
///   parity_reject       particle1, ancilla1
///   teleport            particle3
///   optical_reject      particle3, particle4
///   end_to_end          particle3, particle4
///   dual_distribution   particle1..particle4
std::size_t channel_count(ProtocolKind kind);

/// True for protocols that carry a Haar-random input qubit per trial.
bool takes_input(ProtocolKind kind);

struct ExperimentConfig {
  ProtocolKind protocol = ProtocolKind::optical_reject;
  ModelKind model = ModelKind::none;
  double p = 0.0;      // bitflip / phaseflip probability
  double theta = 0.0;  // rotation angle in radians
  /// Channel positions that get the model; empty means all of them.
  std::vector<std::size_t> noisy_positions;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  /// Values substituted for p (or theta) by sweep().
  std::vector<double> sweep;
  ExecutionMode mode = ExecutionMode::trajectory;
  unsigned workers = 1;
  std::optional<std::filesystem::path> output_path;
  OutputFormat format = OutputFormat::csv;
};

struct ExperimentStats {
  double param = 0.0;
  std::uint64_t trials = 0;
  double accept_rate = 0.0;
  double accept_lo = 0.0;
  double accept_hi = 0.0;
  /// Mean fidelity over accepted runs; NaN if nothing was accepted.
  double mean_fidelity = 0.0;
  /// Fraction of accepted runs with fidelity below kFatalFidelity.
  double fatal_rate = 0.0;
  double fatal_lo = 0.0;
  double fatal_hi = 0.0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds; not written to result files
};

inline constexpr double kFatalFidelity = 0.5;

/// Throws ConfigError describing the first problem found.
void validate(const ExperimentConfig& config);

/// One model per channel position of the configured protocol.
std::vector<ErrorModel> channel_models(const ExperimentConfig& config);

/// The swept quantity (p or theta) of the configured model.
double model_parameter(const ExperimentConfig& config);

/// Runs one protocol instance. `models` holds one entry per channel
/// position; `input` is ignored by protocols without an input qubit.
ProtocolOutcome run_protocol(ProtocolKind kind, const std::vector<ErrorModel>& models,
                             const PureState& input, OutcomeChooser& chooser);

ExperimentStats run_experiment(const ExperimentConfig& config);

/// One run_experiment per sweep value, ordered by value. Throws ConfigError
/// on an empty sweep list.
std::vector<ExperimentStats> sweep(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "param,trials,accept_rate,accept_lo,accept_hi,mean_fidelity,fatal_rate,fatal_lo,fatal_hi,seed";

void write_csv(std::ostream& out, const std::vector<ExperimentStats>& rows);
void write_json(std::ostream& out, const std::vector<ExperimentStats>& rows);

/// Writes to config.output_path, or to `fallback` when no path is set.
/// Throws OutputError when the file cannot be written.
void write_results(const ExperimentConfig& config, const std::vector<ExperimentStats>& rows,
                   std::ostream& fallback);

/// Shortest round-trip decimal form; "nan" for NaN.
std::string format_number(double value);

}  // namespace efqc
