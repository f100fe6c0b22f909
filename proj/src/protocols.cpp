#include "efqc/protocols.hpp"

#include <cmath>
#include <numbers>

#include "efqc/errors.hpp"

namespace efqc {

namespace {

using namespace labels;

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

PureState as_label(const PureState& input, const QubitLabel& label) {
  if (input.num_qubits() != 1) {
    throw LabelError("protocol input must be a single qubit, got " +
                     std::to_string(input.num_qubits()));
  }
  return relabel(input, input.labels().front(), label);
}

ProtocolOutcome make_outcome(PureState target) {
  return ProtocolOutcome{.verdict = Verdict::rejected,
                         .message = {},
                         .final_state = std::nullopt,
                         .target_state = std::move(target),
                         .fidelity = std::nullopt,
                         .error_record = {},
                         .accept_probability = 1.0};
}

void accept(ProtocolOutcome& outcome, PureState final_state) {
  outcome.verdict = Verdict::accepted;
  outcome.fidelity = fidelity(final_state, outcome.target_state);
  outcome.final_state = std::move(final_state);
}

PureState transmit(PureState state, const QubitLabel& photon, const ErrorModel& model,
                   OutcomeChooser& chooser, ErrorRecord& record) {
  ChannelResult r = apply_channel(state, photon, model, chooser);
  record.traversals.push_back(std::move(r.record));
  return std::move(r.state);
}

PureState phase_fix(PureState pair, const QubitLabel& arm, std::size_t b_outcome) {
  return b_outcome == 1 ? apply_single(pair, arm, gates::pauli_z()) : pair;
}

// Projects (in1, in2) onto equal polarizations via explicit PBS routing of
// each two-photon slice. Linear in the input, so slicing over the remaining
// qubits' basis states reproduces the full projection.
std::vector<Amplitude> fock_projection(const PureState& state, std::size_t p1, std::size_t p2) {
  const std::size_t n = state.num_qubits();
  std::vector<Amplitude> out(state.dimension());
  const std::size_t m1 = std::size_t{1} << (n - 1 - p1);
  const std::size_t m2 = std::size_t{1} << (n - 1 - p2);
  for (std::size_t base = 0; base < state.dimension(); ++base) {
    if ((base & m1) || (base & m2)) continue;  // one slice per assignment of the other qubits
    const std::array<std::size_t, 4> idx{base, base | m2, base | m1, base | m1 | m2};
    std::vector<Amplitude> slice(4);
    double weight = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      slice[k] = state.amplitude(idx[k]);
      weight += std::norm(slice[k]);
    }
    if (weight == 0.0) continue;
    const double scale = std::sqrt(weight);
    const CoincidenceResult c =
        coincidence_project(pbs_transform(PureState::normalized({particle3, particle4}, slice)));
    if (!c.accepted()) continue;
    const double amp_scale = scale * std::sqrt(c.accept_probability);
    for (std::size_t k = 0; k < 4; ++k) out[idx[k]] = amp_scale * c.conditional->amplitude(k);
  }
  return out;
}

std::vector<Amplitude> qubit_projection(const PureState& state, std::size_t p1, std::size_t p2) {
  std::vector<Amplitude> out(state.dimension());
  for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
    if (state.bit(idx, p1) == state.bit(idx, p2)) out[idx] = state.amplitude(idx);
  }
  return out;
}

ParityCheck project_parity(const PureState& state, const QubitLabel& in1, const QubitLabel& in2,
                           const QubitLabel& out_a, const QubitLabel& out_b, ParityRoute route) {
  if (in1 == in2) throw LabelError("PBS inputs must be two distinct photons");
  const std::size_t p1 = state.position(in1);
  const std::size_t p2 = state.position(in2);
  std::vector<Amplitude> projected = route == ParityRoute::fock_oracle
                                         ? fock_projection(state, p1, p2)
                                         : qubit_projection(state, p1, p2);
  ParityCheck check;
  for (const auto& a : projected) check.accept_probability += std::norm(a);
  if (check.accept_probability > kMinOutcomeProbability) {
    std::vector<QubitLabel> names = state.labels();
    names[p1] = out_a;
    names[p2] = out_b;
    check.conditional =
        PureState::normalized(std::move(names), std::move(projected), state.tolerances());
  }
  return check;
}

bool choose_coincidence(ParityCheck& check, OutcomeChooser& chooser) {
  const std::array<double, 2> probs{check.accept_probability, 1.0 - check.accept_probability};
  if (chooser.choose(Step::coincidence, probs) != 0) check.conditional.reset();
  return check.accepted();
}

// Bell-measures (particle1, sender) and corrects `receiver`. `pre_correction`
// is applied to the receiver before the Bell-outcome correction.
PureState teleport_over(const PureState& joint, const QubitLabel& sender,
                        const QubitLabel& receiver, OutcomeChooser& chooser,
                        const BellCorrections& corrections, const Gate& pre_correction,
                        ClassicalMessage& message) {
  MeasureResult bell = bell_measure(joint, particle1, sender, chooser);
  message.bell_outcome = bell.outcome;
  const Gate u = gates::multiply(corrections.table[bell.outcome], pre_correction);
  return apply_single(bell.post_state, receiver, u);
}

struct OpticalRun {
  ProtocolOutcome outcome;
  std::optional<PureState> pair;  // (particle2, arm_a) before any phase fix
};

OpticalRun optical_core(const ErrorModel& model3, const ErrorModel& model4,
                        OutcomeChooser& chooser, ParityRoute route) {
  OpticalRun run{make_outcome(bell_state(BellState::phi_plus, particle2, arm_a)), std::nullopt};
  PureState state = prepare_ghz3();
  state = transmit(std::move(state), particle3, model3, chooser, run.outcome.error_record);
  state = transmit(std::move(state), particle4, model4, chooser, run.outcome.error_record);

  ParityCheck check = project_parity(state, particle3, particle4, arm_a, arm_b, route);
  run.outcome.accept_probability = check.accept_probability;
  if (!choose_coincidence(check, chooser)) return run;

  MeasureResult b =
      measure(*check.conditional, arm_b, SingleQubitBasis::diagonal(), chooser, Step::b_measurement);
  run.outcome.message.b_outcomes.push_back(b.outcome);
  run.pair = std::move(b.post_state);
  return run;
}

}  // namespace

BellCorrections BellCorrections::standard() {
  return {{gates::identity(), gates::pauli_z(), gates::pauli_x(),
           gates::multiply(gates::pauli_z(), gates::pauli_x())}};
}

PureState random_qubit(Rng& rng, QubitLabel label) {
  const double cos_t = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double c = std::sqrt(std::max(0.0, 0.5 * (1.0 + cos_t)));
  const double s = std::sqrt(std::max(0.0, 0.5 * (1.0 - cos_t)));
  return PureState::normalized({label}, {c, std::polar(s, phi)});
}

// ---------------------------------------------------------------------------
// Repetition code

PureState encode_repetition(Amplitude alpha, Amplitude beta) {
  PureState state = tensor(PureState::qubit(particle1, alpha, beta),
                           PureState::basis({ancilla(1), ancilla(2)}, 0));
  state = apply_cnot(state, particle1, ancilla(1));
  return apply_cnot(state, particle1, ancilla(2));
}

SyndromeResult syndrome_correct(const PureState& codeword, OutcomeChooser& chooser) {
  PureState state = apply_cnot(codeword, particle1, ancilla(1));
  state = apply_cnot(state, particle1, ancilla(2));
  MeasureResult s1 =
      measure(state, ancilla(1), SingleQubitBasis::computational(), chooser, Step::syndrome);
  MeasureResult s2 =
      measure(s1.post_state, ancilla(2), SingleQubitBasis::computational(), chooser, Step::syndrome);
  const std::array<std::size_t, 2> syndrome{s1.outcome, s2.outcome};
  PureState decoded = std::move(s2.post_state);
  if (syndrome[0] == 1 && syndrome[1] == 1) {
    decoded = apply_single(decoded, particle1, gates::pauli_x());
  }
  return {std::move(decoded), syndrome, s1.probability * s2.probability};
}

SyndromeResult syndrome_correct(const PureState& codeword) {
  ForcedChooser most_likely;
  return syndrome_correct(codeword, most_likely);
}

ProtocolOutcome repetition_correct(const PureState& input, const std::array<ErrorModel, 3>& models,
                                   OutcomeChooser& chooser) {
  const PureState in = as_label(input, particle1);
  ProtocolOutcome outcome = make_outcome(in);
  PureState state = encode_repetition(in.amplitude(0), in.amplitude(1));
  const std::array<QubitLabel, 3> carriers{particle1, ancilla(1), ancilla(2)};
  for (std::size_t i = 0; i < 3; ++i) {
    state = transmit(std::move(state), carriers[i], models[i], chooser, outcome.error_record);
  }
  SyndromeResult decoded = syndrome_correct(state, chooser);
  outcome.message.syndrome_bits.assign(decoded.syndrome.begin(), decoded.syndrome.end());
  accept(outcome, std::move(decoded.corrected));
  return outcome;
}

// ---------------------------------------------------------------------------
// Parity rejection

ProtocolOutcome parity_reject(const PureState& input, const ErrorModel& model_particle,
                              const ErrorModel& model_ancilla, OutcomeChooser& chooser) {
  const PureState in = as_label(input, particle1);
  ProtocolOutcome outcome = make_outcome(in);
  PureState state =
      tensor(in, PureState::basis({ancilla(1)}, 0));
  state = apply_cnot(state, particle1, ancilla(1));
  state = transmit(std::move(state), particle1, model_particle, chooser, outcome.error_record);
  state = transmit(std::move(state), ancilla(1), model_ancilla, chooser, outcome.error_record);
  state = apply_cnot(state, particle1, ancilla(1));

  outcome.accept_probability =
      outcome_probabilities(state, ancilla(1), SingleQubitBasis::computational())[0];
  MeasureResult parity = measure(state, ancilla(1), SingleQubitBasis::computational(), chooser,
                                 Step::parity_ancilla);
  outcome.message.syndrome_bits.push_back(parity.outcome);
  if (parity.outcome == 0) accept(outcome, std::move(parity.post_state));
  return outcome;
}

// ---------------------------------------------------------------------------
// Teleportation

ProtocolOutcome teleport(const PureState& input, OutcomeChooser& chooser,
                         const BellCorrections& corrections, const ErrorModel& channel) {
  const PureState in = as_label(input, particle1);
  ProtocolOutcome outcome = make_outcome(as_label(input, particle3));
  PureState joint = tensor(in, bell_state(BellState::phi_plus, particle2, particle3));
  joint = transmit(std::move(joint), particle3, channel, chooser, outcome.error_record);
  PureState received = teleport_over(joint, particle2, particle3, chooser, corrections,
                                     gates::identity(), outcome.message);
  accept(outcome, std::move(received));
  return outcome;
}

// ---------------------------------------------------------------------------
// Optical rejection

PureState prepare_ghz3() {
  std::vector<Amplitude> amps(8);
  amps[0b000] = kInvSqrt2;
  amps[0b111] = kInvSqrt2;
  return PureState({particle2, particle3, particle4}, std::move(amps));
}

PureState prepare_ghz4() {
  std::vector<Amplitude> amps(16);
  amps[0b0000] = kInvSqrt2;
  amps[0b1111] = kInvSqrt2;
  return PureState({particle1, particle2, particle3, particle4}, std::move(amps));
}

ParityCheck pbs_parity_check(const PureState& state, const QubitLabel& in1, const QubitLabel& in2,
                             const QubitLabel& out_a, const QubitLabel& out_b,
                             OutcomeChooser& chooser, ParityRoute route) {
  ParityCheck check = project_parity(state, in1, in2, out_a, out_b, route);
  choose_coincidence(check, chooser);
  return check;
}

CoincidenceResult qubit_coincidence(const PureState& input) {
  if (input.num_qubits() != 2) throw InvalidState("PBS input must be a two-photon state");
  const ParityCheck check = project_parity(input, input.labels()[0], input.labels()[1], arm_a,
                                           arm_b, ParityRoute::qubit_projection);
  return {check.accept_probability, check.conditional};
}

ProtocolOutcome optical_reject_transmit(const ErrorModel& model3, const ErrorModel& model4,
                                        OutcomeChooser& chooser, ParityRoute route,
                                        bool apply_phase_fix) {
  OpticalRun run = optical_core(model3, model4, chooser, route);
  if (!run.pair) return std::move(run.outcome);
  const std::size_t b = run.outcome.message.b_outcomes.front();
  if (apply_phase_fix) {
    accept(run.outcome, phase_fix(std::move(*run.pair), arm_a, b));
  } else {
    run.outcome.target_state =
        bell_state(b == 0 ? BellState::phi_plus : BellState::phi_minus, particle2, arm_a);
    accept(run.outcome, std::move(*run.pair));
  }
  return std::move(run.outcome);
}

ProtocolOutcome end_to_end_teleport(const PureState& input, const ErrorModel& model3,
                                    const ErrorModel& model4, OutcomeChooser& chooser,
                                    const BellCorrections& corrections) {
  const PureState in = as_label(input, particle1);
  OpticalRun run = optical_core(model3, model4, chooser, ParityRoute::qubit_projection);
  ProtocolOutcome outcome = std::move(run.outcome);
  outcome.target_state = as_label(input, arm_a);
  if (!run.pair) return outcome;

  const std::size_t b = outcome.message.b_outcomes.front();
  const Gate b_fix = b == 1 ? gates::pauli_z() : gates::identity();
  PureState received = teleport_over(tensor(in, *run.pair), particle2, arm_a, chooser, corrections,
                                     b_fix, outcome.message);
  accept(outcome, std::move(received));
  return outcome;
}

ProtocolOutcome dual_distribution(const std::array<ErrorModel, 4>& models,
                                  OutcomeChooser& chooser, ParityRoute route) {
  ProtocolOutcome outcome = make_outcome(bell_state(BellState::phi_plus, arm_a_left, arm_a_right));
  PureState state = prepare_ghz4();
  const std::array<QubitLabel, 4> photons{particle1, particle2, particle3, particle4};
  for (std::size_t i = 0; i < 4; ++i) {
    state = transmit(std::move(state), photons[i], models[i], chooser, outcome.error_record);
  }

  ParityCheck left = project_parity(state, particle1, particle2, arm_a_left, arm_b_left, route);
  ParityCheck right;
  if (left.accepted()) {
    right = project_parity(*left.conditional, particle3, particle4, arm_a_right, arm_b_right, route);
  }
  outcome.accept_probability = left.accept_probability * right.accept_probability;
  if (!choose_coincidence(left, chooser) || !choose_coincidence(right, chooser)) return outcome;

  const SingleQubitBasis diagonal = SingleQubitBasis::diagonal();
  MeasureResult b_left = measure(*right.conditional, arm_b_left, diagonal, chooser, Step::b_measurement);
  MeasureResult b_right =
      measure(b_left.post_state, arm_b_right, diagonal, chooser, Step::b_measurement);
  outcome.message.b_outcomes = {b_left.outcome, b_right.outcome};

  PureState pair = phase_fix(std::move(b_right.post_state), arm_a_left, b_left.outcome);
  pair = phase_fix(std::move(pair), arm_a_right, b_right.outcome);
  accept(outcome, std::move(pair));
  return outcome;
}

}  // namespace efqc
