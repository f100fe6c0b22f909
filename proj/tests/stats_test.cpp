#include "efqc/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "efqc/random.hpp"

using namespace efqc;

TEST(Wilson, NoTrialsIsUninformative) {
  const Interval i = wilson_interval(0, 0);
  EXPECT_EQ(i.lo, 0.0);
  EXPECT_EQ(i.hi, 1.0);
}

TEST(Wilson, KnownValue) {
  // 8 of 10 at z = 1.96.
  const Interval i = wilson_interval(8, 10);
  EXPECT_NEAR(i.lo, 0.4901624, 1e-6);
  EXPECT_NEAR(i.hi, 0.9433178, 1e-6);
}

TEST(Wilson, ExtremesStayInUnitInterval) {
  const Interval none = wilson_interval(0, 25);
  EXPECT_EQ(none.lo, 0.0);
  EXPECT_GT(none.hi, 0.0);
  const Interval all = wilson_interval(25, 25);
  EXPECT_EQ(all.hi, 1.0);
  EXPECT_LT(all.lo, 1.0);
}

TEST(Wilson, ContainsEstimateAndShrinks) {
  for (std::uint64_t n : {1ULL, 7ULL, 100ULL, 100000ULL}) {
    for (std::uint64_t k = 0; k <= n; k += std::max<std::uint64_t>(1, n / 13)) {
      const Interval i = wilson_interval(k, n);
      const double p = static_cast<double>(k) / static_cast<double>(n);
      EXPECT_LE(i.lo, p);
      EXPECT_GE(i.hi, p);
    }
  }
  const Interval small = wilson_interval(30, 100);
  const Interval large = wilson_interval(3000, 10000);
  EXPECT_LT(large.hi - large.lo, small.hi - small.lo);
}

TEST(WilsonProperty, CoverageNearNominal) {
  Rng rng(2024);
  std::mt19937_64 engine(rng.next());
  const double p = 0.3;
  const std::uint64_t n = 60;
  std::binomial_distribution<std::uint64_t> draw(n, p);
  int covered = 0;
  const int experiments = 200;
  for (int e = 0; e < experiments; ++e) {
    const Interval i = wilson_interval(draw(engine), n);
    covered += (i.lo <= p && p <= i.hi);
  }
  EXPECT_GE(covered, 0.93 * experiments);
}
