#pragma once

#include <stdexcept>
#include <string>

namespace efqc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A qubit label was missing, duplicated, or otherwise inconsistent.
class LabelError : public Error {
 public:
  using Error::Error;
};

class NonUnitaryGate : public Error {
 public:
  explicit NonUnitaryGate(double deviation);
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

/// A forced measurement outcome has (numerically) zero Born weight.
class ZeroProbabilityOutcome : public Error {
 public:
  ZeroProbabilityOutcome(std::size_t outcome, double probability);
  std::size_t outcome() const noexcept { return outcome_; }
  double probability() const noexcept { return probability_; }

 private:
  std::size_t outcome_;
  double probability_;
};

/// Amplitudes or probabilities that violate a state/model invariant.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Result table could not be written.
class OutputError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration rejected before any trial runs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace efqc
