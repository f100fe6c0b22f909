#pragma once

// Executable protocols: the three-qubit repetition code, single-ancilla
// parity rejection, teleportation, and the CNOT-free optical rejection scheme
// (one-sided from a three-photon GHZ state, two-sided from a four-photon GHZ
// state), optionally followed by teleportation over the accepted pair.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "efqc/channels.hpp"
#include "efqc/fock_optics.hpp"
#include "efqc/outcomes.hpp"
#include "efqc/statevec.hpp"

namespace efqc {

enum class Verdict { accepted, rejected };

struct ClassicalMessage {
  std::optional<std::size_t> bell_outcome;
  /// One arm-b result per PBS that reached the rotated-basis measurement.
  std::vector<std::size_t> b_outcomes;
  std::vector<std::size_t> syndrome_bits;
};

struct ProtocolOutcome {
  Verdict verdict = Verdict::rejected;
  ClassicalMessage message;
  std::optional<PureState> final_state;
  PureState target_state;
  std::optional<double> fidelity;
  ErrorRecord error_record;
  /// Probability that the acceptance test(s) pass given the channel events
  /// that actually occurred. 1 for protocols that never reject.
  double accept_probability = 1.0;

  bool accepted() const noexcept { return verdict == Verdict::accepted; }
};

/// Correction applied to the receiving qubit for each Bell outcome
/// (indexed as BellState).
struct BellCorrections {
  std::array<Gate, 4> table;

  /// I, Z, X and X-then-Z: each gate exactly undoes the residual Pauli left
  /// by the corresponding Bell outcome.
  static BellCorrections standard();
};

/// How the PBS coincidence is evaluated.
enum class ParityRoute {
  qubit_projection,  // projection onto span{|00>, |11>}
  fock_oracle,       // explicit PBS routing over occupation numbers
};

/// Haar-random qubit (cos(t/2), e^{i phi} sin(t/2)) with cos t uniform in
/// [-1, 1] and phi uniform in [0, 2 pi).
PureState random_qubit(Rng& rng, QubitLabel label = labels::particle1);

// --- Repetition code --------------------------------------------------------

/// alpha|000> + beta|111> on (particle1, ancilla1, ancilla2), built with two
/// CNOTs from particle1. Throws InvalidState for non-normalized input.
PureState encode_repetition(Amplitude alpha, Amplitude beta);

struct SyndromeResult {
  PureState corrected;  // particle1 only
  std::array<std::size_t, 2> syndrome;
  double probability;
};

/// Decoding CNOTs, computational measurement of both ancillas, then X on
/// particle1 for syndrome (1,1). Syndromes (1,0) and (0,1) point at an ancilla
/// and need no action on particle1.
SyndromeResult syndrome_correct(const PureState& codeword, OutcomeChooser& chooser);
SyndromeResult syndrome_correct(const PureState& codeword);

/// Encode, one channel per codeword qubit, decode. Never rejects.
ProtocolOutcome repetition_correct(const PureState& input, const std::array<ErrorModel, 3>& models,
                                   OutcomeChooser& chooser);

// --- Single-ancilla rejection ----------------------------------------------

/// Encodes alpha|00> + beta|11> on (particle1, ancilla1), sends both through
/// their channels, and accepts iff the CNOT parity ancilla reads 0.
ProtocolOutcome parity_reject(const PureState& input, const ErrorModel& model_particle,
                              const ErrorModel& model_ancilla, OutcomeChooser& chooser);

// --- Teleportation -----------------------------------------------------------

/// Teleports `input` (any single qubit) from particle1 to particle3 over a
/// Phi+ pair on (particle2, particle3). `channel` acts on particle3 in
/// transit.
ProtocolOutcome teleport(const PureState& input, OutcomeChooser& chooser,
                         const BellCorrections& corrections = BellCorrections::standard(),
                         const ErrorModel& channel = ErrorModel::none());

// --- Optical rejection -----------------------------------------------------

/// (|000> + |111>)/sqrt2 on (particle2, particle3, particle4).
PureState prepare_ghz3();
/// (|0000> + |1111>)/sqrt2 on particle1..particle4.
PureState prepare_ghz4();

/// Qubit-level PBS coincidence: projects (in1, in2) onto equal polarizations
/// and renames them to (out_a, out_b). `state` may hold other qubits.
struct ParityCheck {
  double accept_probability = 0.0;
  std::optional<PureState> conditional;
  bool accepted() const noexcept { return conditional.has_value(); }
};

ParityCheck pbs_parity_check(const PureState& state, const QubitLabel& in1, const QubitLabel& in2,
                             const QubitLabel& out_a, const QubitLabel& out_b,
                             OutcomeChooser& chooser,
                             ParityRoute route = ParityRoute::qubit_projection);

/// Qubit-projection route restricted to a two-photon input, in the same
/// shape as coincidence_project(pbs_transform(input)).
CoincidenceResult qubit_coincidence(const PureState& input);

/// Sends particles 3 and 4 of the GHZ state through their channels, checks
/// parity at the PBS, measures arm b in the diagonal basis, and applies Z to
/// arm_a after outcome 1' so the accepted (particle2, arm_a) pair is Phi+.
/// With `apply_phase_fix` false the pair is left as measured (Phi+ or Phi-).
ProtocolOutcome optical_reject_transmit(const ErrorModel& model3, const ErrorModel& model4,
                                        OutcomeChooser& chooser,
                                        ParityRoute route = ParityRoute::qubit_projection,
                                        bool apply_phase_fix = true);

/// Optical rejection followed by teleportation of `input` (particle1) over
/// the accepted pair. The correction on arm_a combines the arm-b result and
/// the Bell outcome.
ProtocolOutcome end_to_end_teleport(const PureState& input, const ErrorModel& model3,
                                    const ErrorModel& model4, OutcomeChooser& chooser,
                                    const BellCorrections& corrections = BellCorrections::standard());

/// Two-sided distribution from the four-photon GHZ state: particles 1,2 go to
/// the left PBS and 3,4 to the right one. Models are ordered particle1..4.
/// The surviving pair is (arm_aL, arm_aR), phase-fixed to Phi+.
ProtocolOutcome dual_distribution(const std::array<ErrorModel, 4>& models,
                                  OutcomeChooser& chooser,
                                  ParityRoute route = ParityRoute::qubit_projection);

}  // namespace efqc
