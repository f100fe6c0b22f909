#pragma once

#include <cstdint>

namespace efqc {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo;
  double hi;
};

/// Wilson score interval for `successes` out of `trials`. Returns [0, 1] when
/// there are no trials.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

}  // namespace efqc
