#pragma once

// Built-in self-check run by `efqc verify`: deterministic (exact-mode)
// checks of every protocol against closed-form expectations.

#include <iosfwd>
#include <string>
#include <vector>

#include "efqc/protocols.hpp"

namespace efqc {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string measured;
  std::string expected;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Correction table used by the teleportation checks; swapping in a broken
  /// table must make those checks fail.
  BellCorrections corrections = BellCorrections::standard();
};

std::vector<CheckResult> verify(const VerifyOptions& options = {});

/// One line per check; returns true when every check passed.
bool print_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace efqc
