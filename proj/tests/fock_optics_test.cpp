#include "efqc/fock_optics.hpp"

#include <gtest/gtest.h>

#include <numbers>

#include "efqc/errors.hpp"
#include "efqc/protocols.hpp"
#include "test_util.hpp"

using namespace efqc;
using namespace efqc::labels;

namespace {

constexpr std::size_t aH = output_mode_index({Arm::out_a, Polarization::H});
constexpr std::size_t aV = output_mode_index({Arm::out_a, Polarization::V});
constexpr std::size_t bH = output_mode_index({Arm::out_b, Polarization::H});
constexpr std::size_t bV = output_mode_index({Arm::out_b, Polarization::V});

Occupation occ(std::initializer_list<std::size_t> modes) {
  Occupation o{};
  for (auto m : modes) ++o[m];
  return o;
}

PureState input(std::size_t index) { return PureState::basis({particle3, particle4}, index); }

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

TEST(PbsTransform, HHGoesOnePhotonPerArm) {
  const FockState f = pbs_transform(input(0b00));
  ASSERT_EQ(f.terms().size(), 1U);
  EXPECT_EQ(f.amplitude(occ({aH, bH})), Amplitude{1.0});
}

TEST(PbsTransform, HVBunchesInArmA) {
  const FockState f = pbs_transform(input(0b01));
  EXPECT_EQ(f.amplitude(occ({aH, aV})), Amplitude{1.0});
}

TEST(PbsTransform, GhzPairIsEqualSuperposition) {
  const FockState f = pbs_transform(PureState({particle3, particle4}, {kInvSqrt2, 0, 0, kInvSqrt2}));
  EXPECT_NEAR(f.amplitude(occ({aH, bH})).real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(f.amplitude(occ({aV, bV})).real(), kInvSqrt2, 1e-15);
  EXPECT_EQ(f.terms().size(), 2U);
}

TEST(PbsTransform, ConservesPhotonNumber) {
  Rng rng(11);
  for (int n = 0; n < 50; ++n) {
    const FockState f = pbs_transform(efqc::testing::random_state(rng, {particle3, particle4}));
    for (const auto& [config, amp] : f.terms()) EXPECT_EQ(photon_count(config), 2U);
  }
}

TEST(PbsTransform, RejectsWrongPhotonCount) {
  EXPECT_THROW(pbs_transform(PureState::basis({particle3}, 0)), InvalidState);
}

TEST(Coincidence, RejectsBunchedPair) {
  const CoincidenceResult r = coincidence_project(pbs_transform(input(0b01)));
  EXPECT_FALSE(r.accepted());
  EXPECT_EQ(r.accept_probability, 0.0);
}

TEST(Coincidence, AcceptsHH) {
  const CoincidenceResult r = coincidence_project(pbs_transform(input(0b00)));
  ASSERT_TRUE(r.accepted());
  EXPECT_DOUBLE_EQ(r.accept_probability, 1.0);
  EXPECT_EQ(r.conditional->labels(), (std::vector<QubitLabel>{arm_a, arm_b}));
  EXPECT_EQ(r.conditional->amplitude(0b00), Amplitude{1.0});
}

TEST(Coincidence, HalfAcceptedSuperposition) {
  const PureState in({particle3, particle4}, {kInvSqrt2, kInvSqrt2, 0, 0});
  const CoincidenceResult r = coincidence_project(pbs_transform(in));
  ASSERT_TRUE(r.accepted());
  EXPECT_NEAR(r.accept_probability, 0.5, 1e-15);
  EXPECT_NEAR(std::abs(r.conditional->amplitude(0b00)), 1.0, 1e-15);
}

TEST(Coincidence, ParityLawOverBasisInputs) {
  for (std::size_t idx = 0; idx < 4; ++idx) {
    const bool equal = (idx == 0b00 || idx == 0b11);
    EXPECT_EQ(coincidence_project(pbs_transform(input(idx))).accepted(), equal) << "input " << idx;
  }
}

TEST(Coincidence, RequiresTwoPhotons) {
  const FockState three({{occ({aH, aH, bV}), Amplitude{1.0}}});
  EXPECT_THROW(coincidence_project(three), InvalidState);
}

TEST(FockState, DoubleOccupationIsRepresented) {
  const FockState f({{occ({aH, aH}), Amplitude{1.0}}});
  EXPECT_EQ(occ({aH, aH})[0], 2);
  EXPECT_EQ(f.amplitude(occ({aH, aH})), Amplitude{1.0});
  EXPECT_FALSE(coincidence_project(f).accepted());
}

TEST(FockState, RejectsMixedPhotonNumbers) {
  EXPECT_THROW(FockState({{occ({aH}), Amplitude{kInvSqrt2}}, {occ({aH, bH}), Amplitude{kInvSqrt2}}}),
               InvalidState);
}

TEST(FockOracle, MatchesQubitProjectionOnRandomStates) {
  Rng rng(12);
  for (int n = 0; n < 1000; ++n) {
    const PureState in = efqc::testing::random_state(rng, {particle3, particle4});
    const CoincidenceResult fock = coincidence_project(pbs_transform(in));
    const CoincidenceResult qubit = qubit_coincidence(in);
    EXPECT_NEAR(fock.accept_probability, qubit.accept_probability, 1e-12);
    ASSERT_EQ(fock.accepted(), qubit.accepted());
    EXPECT_LT(efqc::testing::max_abs_diff_up_to_phase(*qubit.conditional, *fock.conditional), 1e-12);
  }
}
