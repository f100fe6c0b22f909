#include "efqc/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "efqc/errors.hpp"

namespace efqc {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::string label_list(const std::vector<QubitLabel>& labels) {
  std::string out = "[";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i != 0) out += ", ";
    out += to_string(labels[i]);
  }
  return out + "]";
}

// Basis index with the bits at `removed` (tensor positions) dropped.
std::size_t reduced_index(std::size_t index, std::size_t num_qubits,
                          std::initializer_list<std::size_t> removed) {
  std::size_t out = 0;
  for (std::size_t pos = 0; pos < num_qubits; ++pos) {
    if (std::find(removed.begin(), removed.end(), pos) != removed.end()) continue;
    out = (out << 1) | ((index >> (num_qubits - 1 - pos)) & 1U);
  }
  return out;
}

std::vector<QubitLabel> without(const std::vector<QubitLabel>& labels,
                                std::initializer_list<std::size_t> removed) {
  std::vector<QubitLabel> out;
  for (std::size_t pos = 0; pos < labels.size(); ++pos) {
    if (std::find(removed.begin(), removed.end(), pos) == removed.end()) out.push_back(labels[pos]);
  }
  return out;
}

double squared_norm(std::span<const Amplitude> amps) {
  double sum = 0.0;
  for (const auto& a : amps) sum += std::norm(a);
  return sum;
}

std::vector<Amplitude> scaled(std::vector<Amplitude> amps, double factor) {
  for (auto& a : amps) a *= factor;
  return amps;
}

// Projected (unnormalized) amplitudes of the remaining qubits after
// contracting `target` with the conjugate of `vec`.
std::vector<Amplitude> contract(const PureState& state, std::size_t pos,
                                const std::array<Amplitude, 2>& vec) {
  std::vector<Amplitude> out(state.dimension() / 2);
  for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
    out[reduced_index(idx, state.num_qubits(), {pos})] +=
        std::conj(vec[state.bit(idx, pos)]) * state.amplitude(idx);
  }
  return out;
}

constexpr std::array<std::array<double, 4>, 4> kBellComponents{{
    {kInvSqrt2, 0.0, 0.0, kInvSqrt2},
    {kInvSqrt2, 0.0, 0.0, -kInvSqrt2},
    {0.0, kInvSqrt2, kInvSqrt2, 0.0},
    {0.0, kInvSqrt2, -kInvSqrt2, 0.0},
}};

std::vector<Amplitude> contract_bell(const PureState& state, std::size_t p1, std::size_t p2,
                                     std::size_t which) {
  std::vector<Amplitude> out(state.dimension() / 4);
  for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
    const std::size_t pair = 2 * state.bit(idx, p1) + state.bit(idx, p2);
    out[reduced_index(idx, state.num_qubits(), {p1, p2})] +=
        kBellComponents[which][pair] * state.amplitude(idx);
  }
  return out;
}

}  // namespace

std::string to_string(const QubitLabel& label) {
  const auto side = [&] {
    switch (label.index) {
      case 0: return std::string();
      case 1: return std::string("L");
      case 2: return std::string("R");
      default: return std::to_string(label.index);
    }
  };
  switch (label.role) {
    case Role::particle: return "particle" + std::to_string(label.index);
    case Role::ancilla: return "ancilla" + std::to_string(label.index);
    case Role::arm_a: return "arm_a" + side();
    case Role::arm_b: return "arm_b" + side();
  }
  return "?";
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes,
                     Tolerances tol)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)), tol_(tol) {
  if (labels_.size() > kMaxQubits) {
    throw LabelError("state has " + std::to_string(labels_.size()) + " qubits; at most " +
                     std::to_string(kMaxQubits) + " are supported");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = i + 1; j < labels_.size(); ++j) {
      if (labels_[i] == labels_[j]) throw LabelError("duplicate label " + to_string(labels_[i]));
    }
  }
  if (amplitudes_.size() != (std::size_t{1} << labels_.size())) {
    throw InvalidState("expected " + std::to_string(std::size_t{1} << labels_.size()) +
                       " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw InvalidState("non-finite amplitude");
    }
  }
  const double n = norm();
  if (std::abs(n - 1.0) > tol_.invariant) {
    std::ostringstream msg;
    msg << "state norm " << n << " deviates from 1 by more than " << tol_.invariant;
    throw InvalidState(msg.str());
  }
}

PureState PureState::normalized(std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes,
                                 Tolerances tol) {
  const double n = std::sqrt(squared_norm(amplitudes));
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidState("cannot normalize a zero vector");
  return PureState(std::move(labels), scaled(std::move(amplitudes), 1.0 / n), tol);
}

PureState PureState::basis(std::vector<QubitLabel> labels, std::uint64_t index, Tolerances tol) {
  std::vector<Amplitude> amps(std::size_t{1} << std::min(labels.size(), kMaxQubits + 1));
  if (index >= amps.size()) throw InvalidState("basis index out of range");
  amps[index] = 1.0;
  return PureState(std::move(labels), std::move(amps), tol);
}

PureState PureState::qubit(QubitLabel label, Amplitude alpha, Amplitude beta, Tolerances tol) {
  return PureState({label}, {alpha, beta}, tol);
}

bool PureState::contains(const QubitLabel& label) const noexcept {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t PureState::position(const QubitLabel& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw LabelError("label " + to_string(label) + " not in state " + label_list(labels_));
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

double PureState::norm() const noexcept { return std::sqrt(squared_norm(amplitudes_)); }

PureState scalar_state(Tolerances tol) { return PureState({}, {Amplitude{1.0}}, tol); }

// ---------------------------------------------------------------------------
// Gates

namespace gates {

Gate identity() { return {1.0, 0.0, 0.0, 1.0}; }
Gate pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
Gate pauli_y() { return {0.0, Amplitude{0, -1}, Amplitude{0, 1}, 0.0}; }
Gate pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }
Gate hadamard() { return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}; }

Gate x_rotation(double theta) {
  const double c = std::cos(theta);
  const Amplitude is{0.0, std::sin(theta)};
  return {c, is, is, c};
}

Gate multiply(const Gate& a, const Gate& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Gate adjoint(const Gate& g) {
  return {std::conj(g[0]), std::conj(g[2]), std::conj(g[1]), std::conj(g[3])};
}

double unitarity_deviation(const Gate& g) {
  const Gate product = multiply(adjoint(g), g);
  const Gate id = identity();
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double d = std::abs(product[i] - id[i]);
    if (!(d <= worst)) worst = d;  // NaN propagates as non-unitary
  }
  return worst;
}

}  // namespace gates

// ---------------------------------------------------------------------------
// Bases

SingleQubitBasis::SingleQubitBasis(std::array<Amplitude, 2> first, std::array<Amplitude, 2> second,
                                   double tolerance)
    : vectors_{first, second} {
  const auto dot = [](const std::array<Amplitude, 2>& u, const std::array<Amplitude, 2>& v) {
    return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
  };
  const double deviation = std::max({std::abs(dot(first, first) - 1.0),
                                     std::abs(dot(second, second) - 1.0),
                                     std::abs(dot(first, second))});
  if (!(deviation <= tolerance)) {
    std::ostringstream msg;
    msg << "basis is not orthonormal (deviation " << deviation << ")";
    throw InvalidState(msg.str());
  }
}

SingleQubitBasis SingleQubitBasis::computational() { return {{1.0, 0.0}, {0.0, 1.0}}; }

SingleQubitBasis SingleQubitBasis::diagonal() {
  return {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
}

// ---------------------------------------------------------------------------
// Gate application

PureState apply_single(const PureState& state, const QubitLabel& target, const Gate& gate) {
  const std::size_t pos = state.position(target);
  const double deviation = gates::unitarity_deviation(gate);
  if (!(deviation <= state.tolerances().invariant)) throw NonUnitaryGate(deviation);

  const std::size_t stride = std::size_t{1} << (state.num_qubits() - 1 - pos);
  std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    if (idx & stride) continue;
    const Amplitude a0 = out[idx];
    const Amplitude a1 = out[idx | stride];
    out[idx] = gate[0] * a0 + gate[1] * a1;
    out[idx | stride] = gate[2] * a0 + gate[3] * a1;
  }
  return PureState(state.labels(), std::move(out), state.tolerances());
}

PureState apply_cnot(const PureState& state, const QubitLabel& control, const QubitLabel& target) {
  if (control == target) throw LabelError("CNOT control and target coincide: " + to_string(control));
  const std::size_t c = state.position(control);
  const std::size_t t = state.position(target);
  const std::size_t cmask = std::size_t{1} << (state.num_qubits() - 1 - c);
  const std::size_t tmask = std::size_t{1} << (state.num_qubits() - 1 - t);
  std::vector<Amplitude> out(state.dimension());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    out[(idx & cmask) ? (idx ^ tmask) : idx] = state.amplitude(idx);
  }
  return PureState(state.labels(), std::move(out), state.tolerances());
}

// ---------------------------------------------------------------------------
// Measurement

std::array<double, 2> outcome_probabilities(const PureState& state, const QubitLabel& target,
                                            const SingleQubitBasis& basis) {
  const std::size_t pos = state.position(target);
  return {squared_norm(contract(state, pos, basis.vector(0))),
          squared_norm(contract(state, pos, basis.vector(1)))};
}

MeasureResult measure(const PureState& state, const QubitLabel& target,
                      const SingleQubitBasis& basis, OutcomeChooser& chooser, Step step) {
  const std::size_t pos = state.position(target);
  std::array<std::vector<Amplitude>, 2> branches{contract(state, pos, basis.vector(0)),
                                                 contract(state, pos, basis.vector(1))};
  const std::array<double, 2> probs{squared_norm(branches[0]), squared_norm(branches[1])};
  const std::size_t outcome = chooser.choose(step, probs);
  return {outcome, probs[outcome],
          PureState::normalized(without(state.labels(), {pos}), std::move(branches[outcome]),
                                state.tolerances())};
}

MeasureResult measure(const PureState& state, const QubitLabel& target,
                      const SingleQubitBasis& basis, Rng& rng) {
  SampledChooser chooser(rng);
  return measure(state, target, basis, chooser);
}

MeasureResult measure(const PureState& state, const QubitLabel& target,
                      const SingleQubitBasis& basis, std::size_t outcome) {
  ForcedChooser chooser;
  chooser.force(Step::projective, outcome);
  return measure(state, target, basis, chooser);
}

PureState bell_state(BellState which, const QubitLabel& first, const QubitLabel& second,
                     Tolerances tol) {
  const auto& c = kBellComponents[static_cast<std::size_t>(which)];
  return PureState({first, second}, {c[0], c[1], c[2], c[3]}, tol);
}

std::array<double, 4> bell_probabilities(const PureState& state, const QubitLabel& q1,
                                         const QubitLabel& q2) {
  if (q1 == q2) throw LabelError("Bell measurement needs two distinct qubits");
  const std::size_t p1 = state.position(q1);
  const std::size_t p2 = state.position(q2);
  std::array<double, 4> probs{};
  for (std::size_t k = 0; k < 4; ++k) probs[k] = squared_norm(contract_bell(state, p1, p2, k));
  return probs;
}

MeasureResult bell_measure(const PureState& state, const QubitLabel& q1, const QubitLabel& q2,
                           OutcomeChooser& chooser) {
  if (q1 == q2) throw LabelError("Bell measurement needs two distinct qubits");
  const std::size_t p1 = state.position(q1);
  const std::size_t p2 = state.position(q2);
  std::array<std::vector<Amplitude>, 4> branches;
  std::array<double, 4> probs{};
  for (std::size_t k = 0; k < 4; ++k) {
    branches[k] = contract_bell(state, p1, p2, k);
    probs[k] = squared_norm(branches[k]);
  }
  const std::size_t outcome = chooser.choose(Step::bell_measurement, probs);
  return {outcome, probs[outcome],
          PureState::normalized(without(state.labels(), {p1, p2}), std::move(branches[outcome]),
                                state.tolerances())};
}

MeasureResult bell_measure(const PureState& state, const QubitLabel& q1, const QubitLabel& q2,
                           Rng& rng) {
  SampledChooser chooser(rng);
  return bell_measure(state, q1, q2, chooser);
}

MeasureResult bell_measure(const PureState& state, const QubitLabel& q1, const QubitLabel& q2,
                           std::size_t outcome) {
  ForcedChooser chooser;
  chooser.force(Step::bell_measurement, outcome);
  return bell_measure(state, q1, q2, chooser);
}

// ---------------------------------------------------------------------------
// Composition

Amplitude inner_product(const PureState& reference, const PureState& state) {
  const PureState aligned = permute(reference, state.labels());
  Amplitude sum = 0.0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    sum += std::conj(aligned.amplitude(i)) * state.amplitude(i);
  }
  return sum;
}

double fidelity(const PureState& state, const PureState& reference) {
  return std::clamp(std::norm(inner_product(reference, state)), 0.0, 1.0);
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<QubitLabel> joined = a.labels();
  for (const auto& label : b.labels()) {
    if (a.contains(label)) throw LabelError("label collision on " + to_string(label));
    joined.push_back(label);
  }
  std::vector<Amplitude> amps(a.dimension() * b.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    for (std::size_t j = 0; j < b.dimension(); ++j) {
      amps[i * b.dimension() + j] = a.amplitude(i) * b.amplitude(j);
    }
  }
  return PureState(std::move(joined), std::move(amps), a.tolerances());
}

PureState permute(const PureState& state, const std::vector<QubitLabel>& order) {
  if (order.size() != state.num_qubits()) {
    throw LabelError("permutation " + label_list(order) + " does not match state labels " +
                     label_list(state.labels()));
  }
  std::vector<std::size_t> source(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) {
    if (!state.contains(order[j])) {
      throw LabelError("permutation " + label_list(order) + " does not match state labels " +
                       label_list(state.labels()));
    }
    source[j] = state.position(order[j]);
  }
  const std::size_t n = order.size();
  std::vector<Amplitude> amps(state.dimension());
  for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
    std::size_t new_idx = 0;
    for (std::size_t j = 0; j < n; ++j) new_idx = (new_idx << 1) | state.bit(idx, source[j]);
    amps[new_idx] = state.amplitude(idx);
  }
  // Duplicates in `order` are caught by the PureState constructor.
  return PureState(order, std::move(amps), state.tolerances());
}

PureState relabel(const PureState& state, const QubitLabel& from, const QubitLabel& to) {
  std::vector<QubitLabel> labels = state.labels();
  labels[state.position(from)] = to;
  return PureState(std::move(labels),
                   std::vector<Amplitude>(state.amplitudes().begin(), state.amplitudes().end()),
                   state.tolerances());
}

}  // namespace efqc
