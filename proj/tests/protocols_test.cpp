#include "efqc/protocols.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "efqc/errors.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace efqc;
using namespace efqc::labels;
using efqc::testing::max_abs_diff;

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

const ErrorModel kNone = ErrorModel::none();
const ErrorModel kFlip = ErrorModel::bit_flip(1.0);

struct Exact {
  double accept = 0.0;
  double min_fidelity = 1.0;
  double max_fidelity = 0.0;
};

template <class Run>
Exact exact(Run&& run) {
  Exact e;
  for (const auto& path : enumerate_paths(run)) {
    if (!path.result.accepted()) continue;
    e.accept += path.weight;
    e.min_fidelity = std::min(e.min_fidelity, *path.result.fidelity);
    e.max_fidelity = std::max(e.max_fidelity, *path.result.fidelity);
  }
  return e;
}

// The (alpha, beta) test grid: 10 polar angles x 10 phases.
std::vector<std::pair<Amplitude, Amplitude>> amplitude_grid() {
  std::vector<std::pair<Amplitude, Amplitude>> grid;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double t = i * std::numbers::pi / 9.0;
      grid.emplace_back(std::cos(t / 2), std::polar(std::sin(t / 2), j * 2 * std::numbers::pi / 10));
    }
  }
  return grid;
}

}  // namespace

// --- repetition code -----------------------------------------------------------

TEST(EncodeRepetition, BasisInput) {
  const PureState s = encode_repetition(1.0, 0.0);
  EXPECT_EQ(s.amplitude(0b000), Amplitude{1.0});
  EXPECT_EQ(s.labels(), (std::vector<QubitLabel>{particle1, ancilla(1), ancilla(2)}));
}

TEST(EncodeRepetition, BalancedInput) {
  const PureState s = encode_repetition(kInvSqrt2, kInvSqrt2);
  EXPECT_NEAR(s.amplitude(0b000).real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(s.amplitude(0b111).real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(EncodeRepetition, MatchesDirectConstruction) {
  Rng rng(21);
  for (int n = 0; n < 50; ++n) {
    const PureState in = random_qubit(rng);
    const Amplitude a = in.amplitude(0);
    const Amplitude b = in.amplitude(1);
    const PureState direct({particle1, ancilla(1), ancilla(2)}, {a, 0, 0, 0, 0, 0, 0, b});
    EXPECT_LT(max_abs_diff(direct, encode_repetition(a, b)), 1e-12);
  }
}

TEST(EncodeRepetition, RejectsUnnormalizedInput) {
  EXPECT_THROW(encode_repetition(1.0, 1.0), InvalidState);
}

TEST(SyndromeCorrect, CleanCodeword) {
  const SyndromeResult r = syndrome_correct(encode_repetition(0.6, Amplitude(0, 0.8)));
  EXPECT_EQ(r.syndrome, (std::array<std::size_t, 2>{0, 0}));
  EXPECT_NEAR(fidelity(r.corrected, PureState::qubit(particle1, 0.6, Amplitude(0, 0.8))), 1.0, 1e-15);
}

TEST(SyndromeCorrect, FlipOnParticleOneGivesElevenSyndrome) {
  const PureState word = apply_single(encode_repetition(0.6, 0.8), particle1, gates::pauli_x());
  const SyndromeResult r = syndrome_correct(word);
  EXPECT_EQ(r.syndrome, (std::array<std::size_t, 2>{1, 1}));
  EXPECT_NEAR(fidelity(r.corrected, PureState::qubit(particle1, 0.6, 0.8)), 1.0, 1e-15);
}

TEST(SyndromeCorrect, EverySingleFlipOnGrid) {
  const std::array<QubitLabel, 3> carriers{particle1, ancilla(1), ancilla(2)};
  const std::array<std::array<std::size_t, 2>, 3> syndromes{{{1, 1}, {1, 0}, {0, 1}}};
  for (const auto& [a, b] : amplitude_grid()) {
    const PureState input = PureState::qubit(particle1, a, b);
    for (std::size_t e = 0; e < 3; ++e) {
      const SyndromeResult r =
          syndrome_correct(apply_single(encode_repetition(a, b), carriers[e], gates::pauli_x()));
      EXPECT_EQ(r.syndrome, syndromes[e]);
      EXPECT_NEAR(fidelity(r.corrected, input), 1.0, 1e-12);
      EXPECT_NEAR(r.probability, 1.0, 1e-12);
    }
  }
}

TEST(RepetitionCorrect, DoubleFlipIsMiscorrected) {
  const PureState input = PureState::qubit(particle1, 1.0, 0.0);
  ForcedChooser chooser;
  const ProtocolOutcome out = repetition_correct(input, {kFlip, kFlip, kNone}, chooser);
  EXPECT_TRUE(out.accepted());
  EXPECT_NEAR(*out.fidelity, 0.0, 1e-15);
  EXPECT_EQ(out.error_record.traversals.size(), 3U);
}

// --- single-ancilla rejection -----------------------------------------------

TEST(ParityReject, NoNoiseAccepts) {
  Rng rng(22);
  const PureState in = random_qubit(rng);
  ForcedChooser chooser;
  const ProtocolOutcome out = parity_reject(in, kNone, kNone, chooser);
  ASSERT_TRUE(out.accepted());
  EXPECT_NEAR(*out.fidelity, 1.0, 1e-12);
  EXPECT_EQ(out.message.syndrome_bits, std::vector<std::size_t>{0});
}

TEST(ParityReject, SingleFlipIsRejected) {
  Rng rng(23);
  const PureState in = random_qubit(rng);
  EXPECT_EQ(exact([&](OutcomeChooser& c) { return parity_reject(in, kFlip, kNone, c); }).accept, 0.0);
  EXPECT_EQ(exact([&](OutcomeChooser& c) { return parity_reject(in, kNone, kFlip, c); }).accept, 0.0);
}

TEST(ParityReject, DoubleFlipIsFatal) {
  const PureState in = PureState::qubit(particle1, 1.0, 0.0);
  ForcedChooser chooser;
  const ProtocolOutcome out = parity_reject(in, kFlip, kFlip, chooser);
  ASSERT_TRUE(out.accepted());
  EXPECT_NEAR(*out.fidelity, 0.0, 1e-15);
}

// --- teleportation ---------------------------------------------------------

TEST(Teleport, BasisInputAllOutcomes) {
  const PureState in = PureState::basis({particle1}, 0);
  for (std::size_t k = 0; k < 4; ++k) {
    ForcedChooser chooser;
    chooser.force(Step::bell_measurement, k);
    const ProtocolOutcome out = teleport(in, chooser);
    EXPECT_EQ(out.message.bell_outcome, k);
    EXPECT_NEAR(*out.fidelity, 1.0, 1e-15);
  }
}

TEST(Teleport, ComplexInputIsExactPerOutcome) {
  const PureState in = PureState::qubit(particle1, kInvSqrt2, Amplitude(0, kInvSqrt2));
  for (std::size_t k = 0; k < 4; ++k) {
    ForcedChooser chooser;
    chooser.force(Step::bell_measurement, k);
    const ProtocolOutcome out = teleport(in, chooser);
    EXPECT_NEAR(*out.fidelity, 1.0, 1e-12);
    // The standard table undoes the residual Pauli exactly, global phase included.
    EXPECT_LT(max_abs_diff(*out.final_state, relabel(in, particle1, particle3)), 1e-12);
  }
}

TEST(Teleport, OutcomesAreUniformForAnyInput) {
  Rng rng(24);
  for (int n = 0; n < 50; ++n) {
    const PureState in = random_qubit(rng);
    const auto paths = enumerate_paths([&](OutcomeChooser& c) { return teleport(in, c).message.bell_outcome; });
    ASSERT_EQ(paths.size(), 4U);
    for (const auto& p : paths) EXPECT_NEAR(p.weight, 0.25, 1e-12);
  }
}

TEST(Teleport, AcceptsAnyInputLabel) {
  const PureState in = PureState::qubit(ancilla(7), 0.6, 0.8);
  ForcedChooser chooser;
  EXPECT_NEAR(*teleport(in, chooser).fidelity, 1.0, 1e-12);
}

TEST(Teleport, BrokenCorrectionTableFails) {
  BellCorrections broken = BellCorrections::standard();
  std::swap(broken.table[1], broken.table[2]);
  const PureState in = PureState::basis({particle1}, 0);
  ForcedChooser chooser;
  chooser.force(Step::bell_measurement, 2);
  EXPECT_LT(*teleport(in, chooser, broken).fidelity, 0.99);
}

// --- GHZ preparation -------------------------------------------------------

TEST(PrepareGhz3, Amplitudes) {
  const PureState g = prepare_ghz3();
  EXPECT_NEAR(g.norm(), 1.0, 1e-15);
  EXPECT_EQ(g.labels(), (std::vector<QubitLabel>{particle2, particle3, particle4}));
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(g.amplitude(i), (i == 0 || i == 7) ? Amplitude{kInvSqrt2} : Amplitude{});
  }
}

TEST(PrepareGhz3, SingleParticleMarginalsAreUniform) {
  const PureState g = prepare_ghz3();
  for (const auto& l : g.labels()) {
    const auto p = outcome_probabilities(g, l, SingleQubitBasis::computational());
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);
  }
}

// --- optical rejection ------------------------------------------------------

TEST(OpticalReject, NoiselessPlusOutcomeGivesPhiPlus) {
  ForcedChooser chooser;
  chooser.force(Step::b_measurement, 0);
  const ProtocolOutcome out =
      optical_reject_transmit(kNone, kNone, chooser, ParityRoute::qubit_projection, false);
  ASSERT_TRUE(out.accepted());
  EXPECT_EQ(out.final_state->labels(), (std::vector<QubitLabel>{particle2, arm_a}));
  EXPECT_LT(max_abs_diff(*out.final_state, bell_state(BellState::phi_plus, particle2, arm_a)), 1e-12);
  EXPECT_EQ(out.message.b_outcomes, std::vector<std::size_t>{0});
}

TEST(OpticalReject, NoiselessMinusOutcomeGivesPhiMinusBeforeFix) {
  ForcedChooser chooser;
  chooser.force(Step::b_measurement, 1);
  const ProtocolOutcome out =
      optical_reject_transmit(kNone, kNone, chooser, ParityRoute::qubit_projection, false);
  EXPECT_LT(max_abs_diff(*out.final_state, bell_state(BellState::phi_minus, particle2, arm_a)), 1e-12);
}

TEST(OpticalReject, PhaseFixAlwaysDeliversPhiPlus) {
  const auto paths = enumerate_paths([](OutcomeChooser& c) { return optical_reject_transmit(kNone, kNone, c); });
  ASSERT_EQ(paths.size(), 2U);
  for (const auto& p : paths) {
    EXPECT_NEAR(p.weight, 0.5, 1e-15);
    EXPECT_LT(max_abs_diff(*p.result.final_state, bell_state(BellState::phi_plus, particle2, arm_a)), 1e-12);
  }
}

TEST(OpticalReject, RotationOnOnePhotonIsQuantized) {
  for (double theta : {0.1, 0.7, 1.2, 2.5}) {
    const Exact e = exact([&](OutcomeChooser& c) {
      return optical_reject_transmit(ErrorModel::rotation(theta), kNone, c);
    });
    EXPECT_NEAR(e.accept, std::cos(theta) * std::cos(theta), 1e-12);
    EXPECT_NEAR(e.accept, oracle::rotation_acceptance(theta), 1e-12);
    EXPECT_NEAR(e.min_fidelity, 1.0, 1e-12);
  }
}

TEST(OpticalReject, SingleFlipsAreRejected) {
  EXPECT_EQ(exact([](OutcomeChooser& c) { return optical_reject_transmit(kFlip, kNone, c); }).accept, 0.0);
  EXPECT_EQ(exact([](OutcomeChooser& c) { return optical_reject_transmit(kNone, kFlip, c); }).accept, 0.0);
}

TEST(OpticalReject, RejectedOutcomeCarriesNoState) {
  ForcedChooser chooser;
  const ProtocolOutcome out = optical_reject_transmit(kFlip, kNone, chooser);
  EXPECT_FALSE(out.accepted());
  EXPECT_FALSE(out.final_state.has_value());
  EXPECT_FALSE(out.fidelity.has_value());
  EXPECT_TRUE(out.message.b_outcomes.empty());
  EXPECT_EQ(out.accept_probability, 0.0);
  ASSERT_NE(out.error_record.find(particle3), nullptr);
  EXPECT_TRUE(out.error_record.find(particle3)->flipped());
}

TEST(OpticalReject, DoubleFlipYieldsFlippedBellState) {
  const auto paths = enumerate_paths([](OutcomeChooser& c) { return optical_reject_transmit(kFlip, kFlip, c); });
  double accept = 0;
  for (const auto& p : paths) {
    ASSERT_TRUE(p.result.accepted());
    accept += p.weight;
    const PureState flipped = apply_single(bell_state(BellState::phi_plus, particle2, arm_a), particle2, gates::pauli_x());
    EXPECT_NEAR(fidelity(*p.result.final_state, flipped), 1.0, 1e-12);
    EXPECT_NEAR(*p.result.fidelity, 0.0, 1e-12);
  }
  EXPECT_NEAR(accept, 1.0, 1e-15);
}

TEST(OpticalReject, FockRouteMatchesQubitRoute) {
  Rng rng(25);
  for (int n = 0; n < 200; ++n) {
    const ErrorModel m3 = ErrorModel::rotation(2 * std::numbers::pi * rng.uniform());
    const ErrorModel m4 = ErrorModel::rotation(2 * std::numbers::pi * rng.uniform());
    for (std::size_t b = 0; b < 2; ++b) {
      ForcedChooser qc;
      qc.force(Step::b_measurement, b);
      ForcedChooser fc;
      fc.force(Step::b_measurement, b);
      const ProtocolOutcome q = optical_reject_transmit(m3, m4, qc, ParityRoute::qubit_projection);
      const ProtocolOutcome f = optical_reject_transmit(m3, m4, fc, ParityRoute::fock_oracle);
      EXPECT_NEAR(q.accept_probability, f.accept_probability, 1e-12);
      ASSERT_EQ(q.accepted(), f.accepted());
      if (q.accepted()) {
        EXPECT_LT(efqc::testing::max_abs_diff_up_to_phase(*q.final_state, *f.final_state), 1e-12);
      }
    }
  }
}

TEST(PbsParityCheck, ForcedRejectDropsState) {
  ForcedChooser chooser;
  chooser.force(Step::coincidence, 1);
  const PureState s({particle3, particle4}, {kInvSqrt2, kInvSqrt2, 0, 0});
  const ParityCheck check = pbs_parity_check(s, particle3, particle4, arm_a, arm_b, chooser);
  EXPECT_FALSE(check.accepted());
  EXPECT_NEAR(check.accept_probability, 0.5, 1e-15);
}

// --- end-to-end ----------------------------------------------------------------

TEST(EndToEnd, NoiselessAllBranches) {
  Rng rng(26);
  for (int n = 0; n < 100; ++n) {
    const PureState in = random_qubit(rng);
    for (std::size_t bell = 0; bell < 4; ++bell) {
      for (std::size_t b = 0; b < 2; ++b) {
        ForcedChooser chooser;
        chooser.force(Step::bell_measurement, bell).force(Step::b_measurement, b);
        const ProtocolOutcome out = end_to_end_teleport(in, kNone, kNone, chooser);
        ASSERT_TRUE(out.accepted());
        EXPECT_EQ(out.message.bell_outcome, bell);
        EXPECT_EQ(out.message.b_outcomes, std::vector<std::size_t>{b});
        EXPECT_NEAR(*out.fidelity, 1.0, 1e-12);
      }
    }
  }
}

TEST(EndToEnd, AcceptanceUnderBitFlipsMatchesPatternCount) {
  for (double p : {0.05, 0.1, 0.3}) {
    const PureState in = PureState::qubit(particle1, 0.6, 0.8);
    const ErrorModel m = ErrorModel::bit_flip(p);
    const Exact e = exact([&](OutcomeChooser& c) { return end_to_end_teleport(in, m, m, c); });
    EXPECT_NEAR(e.accept, (1 - p) * (1 - p) + p * p, 1e-12);
  }
}

TEST(EndToEnd, PhaseFlipPassesUndetected) {
  const PureState plus = PureState::qubit(particle1, kInvSqrt2, kInvSqrt2);
  const Exact e = exact([&](OutcomeChooser& c) {
    return end_to_end_teleport(plus, ErrorModel::phase_flip(1.0), kNone, c);
  });
  EXPECT_NEAR(e.accept, 1.0, 1e-15);
  EXPECT_NEAR(e.max_fidelity, 0.0, 1e-12);
}

// --- two-sided distribution ----------------------------------------------------

TEST(DualDistribution, NoiselessDeliversPhiPlusWithUniformOutcomes) {
  const std::array<ErrorModel, 4> none{kNone, kNone, kNone, kNone};
  const auto paths = enumerate_paths([&](OutcomeChooser& c) { return dual_distribution(none, c); });
  ASSERT_EQ(paths.size(), 4U);
  for (const auto& p : paths) {
    EXPECT_NEAR(p.weight, 0.25, 1e-15);
    ASSERT_TRUE(p.result.accepted());
    EXPECT_EQ(p.result.final_state->labels(), (std::vector<QubitLabel>{arm_a_left, arm_a_right}));
    EXPECT_NEAR(*p.result.fidelity, 1.0, 1e-12);
  }
}

TEST(DualDistribution, AnySingleFlipIsRejected) {
  for (std::size_t photon = 0; photon < 4; ++photon) {
    std::array<ErrorModel, 4> models{kNone, kNone, kNone, kNone};
    models[photon] = kFlip;
    EXPECT_EQ(exact([&](OutcomeChooser& c) { return dual_distribution(models, c); }).accept, 0.0)
        << "photon " << photon;
  }
}

TEST(DualDistribution, AcceptanceMatchesSixteenPatternOracle) {
  for (double p : {0.0, 0.1, 0.25, 0.5}) {
    const ErrorModel m = ErrorModel::bit_flip(p);
    const Exact e = exact([&](OutcomeChooser& c) { return dual_distribution({m, m, m, m}, c); });
    EXPECT_NEAR(e.accept, oracle::two_sided_flip_acceptance(p), 1e-12);
  }
}

TEST(DualDistribution, FockRouteAgrees) {
  const std::array<ErrorModel, 4> models{ErrorModel::rotation(0.4), kNone, ErrorModel::rotation(1.1),
                                         ErrorModel::rotation(-0.3)};
  const Exact q = exact([&](OutcomeChooser& c) { return dual_distribution(models, c); });
  const Exact f = exact([&](OutcomeChooser& c) {
    return dual_distribution(models, c, ParityRoute::fock_oracle);
  });
  EXPECT_NEAR(q.accept, f.accept, 1e-12);
  EXPECT_NEAR(q.min_fidelity, f.min_fidelity, 1e-12);
}

// --- properties ---------------------------------------------------------------

TEST(ProtocolProperty, ErrorQuantizationOnGrid) {
  for (int k = 0; k < 50; ++k) {
    const double theta = k * std::numbers::pi / 50;
    for (int photon = 0; photon < 2; ++photon) {
      const ErrorModel rot = ErrorModel::rotation(theta);
      const Exact e = exact([&](OutcomeChooser& c) {
        return photon == 0 ? optical_reject_transmit(rot, kNone, c) : optical_reject_transmit(kNone, rot, c);
      });
      EXPECT_NEAR(e.accept, oracle::rotation_acceptance(theta), 1e-12);
      if (e.accept > 0) EXPECT_NEAR(e.min_fidelity, 1.0, 1e-12);
    }
  }
}

TEST(ProtocolProperty, SampledRunsAreReproducible) {
  const ErrorModel m = ErrorModel::bit_flip(0.3);
  const RandomSource source(5);
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    Rng a = source.substream(trial);
    Rng b = source.substream(trial);
    SampledChooser ca(a);
    SampledChooser cb(b);
    const ProtocolOutcome x = optical_reject_transmit(m, m, ca);
    const ProtocolOutcome y = optical_reject_transmit(m, m, cb);
    EXPECT_EQ(x.error_record, y.error_record);
    EXPECT_EQ(x.verdict, y.verdict);
    EXPECT_EQ(x.message.b_outcomes, y.message.b_outcomes);
  }
}
