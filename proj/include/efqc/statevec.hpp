#pragma once

// Dense state-vector engine for a handful of labeled qubits.
//
// Amplitude index convention: the first label is the most significant bit, so
// for labels [q0, q1] the amplitude of |q0=0, q1=1> sits at index 1.

#include <array>
#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "efqc/outcomes.hpp"

namespace efqc {

using Amplitude = std::complex<double>;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Gate = std::array<Amplitude, 4>;

inline constexpr std::size_t kMaxQubits = 5;

struct Tolerances {
  double invariant = 1e-10;
  double identity = 1e-12;
};

enum class Role : std::uint8_t { particle, ancilla, arm_a, arm_b };

/// Protocol-level name of a qubit. `index` numbers particles (1-4) and
/// ancillas; for arms it selects the side (0 single-sided, 1 left, 2 right).
struct QubitLabel {
  Role role = Role::particle;
  int index = 0;

  friend constexpr auto operator<=>(const QubitLabel&, const QubitLabel&) = default;
};

std::string to_string(const QubitLabel& label);

namespace labels {
inline constexpr QubitLabel particle1{Role::particle, 1};
inline constexpr QubitLabel particle2{Role::particle, 2};
inline constexpr QubitLabel particle3{Role::particle, 3};
inline constexpr QubitLabel particle4{Role::particle, 4};
inline constexpr QubitLabel arm_a{Role::arm_a, 0};
inline constexpr QubitLabel arm_b{Role::arm_b, 0};
inline constexpr QubitLabel arm_a_left{Role::arm_a, 1};
inline constexpr QubitLabel arm_b_left{Role::arm_b, 1};
inline constexpr QubitLabel arm_a_right{Role::arm_a, 2};
inline constexpr QubitLabel arm_b_right{Role::arm_b, 2};
constexpr QubitLabel ancilla(int k) { return {Role::ancilla, k}; }
}  // namespace labels

/// Normalized pure state over an ordered list of distinct labels.
class PureState {
 public:
  /// Throws InvalidState when the amplitude count is not 2^n, an amplitude
  /// is not finite, or the norm deviates from 1 by more than
  /// `tol.invariant`; LabelError on duplicate labels or more than kMaxQubits.
  PureState(std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes,
            Tolerances tol = {});

  /// Rescales to unit norm first. Throws InvalidState on a zero vector.
  static PureState normalized(std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes,
                              Tolerances tol = {});

  /// Computational basis state |index>.
  static PureState basis(std::vector<QubitLabel> labels, std::uint64_t index, Tolerances tol = {});

  /// alpha|0> + beta|1> on one qubit.
  static PureState qubit(QubitLabel label, Amplitude alpha, Amplitude beta, Tolerances tol = {});

  std::size_t num_qubits() const noexcept { return labels_.size(); }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  const std::vector<QubitLabel>& labels() const noexcept { return labels_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  Amplitude amplitude(std::size_t index) const { return amplitudes_.at(index); }
  const Tolerances& tolerances() const noexcept { return tol_; }

  bool contains(const QubitLabel& label) const noexcept;
  /// Tensor position of `label`; throws LabelError when absent.
  std::size_t position(const QubitLabel& label) const;

  double norm() const noexcept;

  /// Value of the qubit at tensor position `pos` within basis index `index`.
  std::size_t bit(std::size_t index, std::size_t pos) const noexcept {
    return (index >> (num_qubits() - 1 - pos)) & 1U;
  }

 private:
  std::vector<QubitLabel> labels_;
  std::vector<Amplitude> amplitudes_;
  Tolerances tol_;
};

namespace gates {
Gate identity();
Gate pauli_x();
Gate pauli_y();
Gate pauli_z();
Gate hadamard();
/// cos(theta) I + i sin(theta) X.
Gate x_rotation(double theta);
/// Matrix product a * b (apply b first).
Gate multiply(const Gate& a, const Gate& b);
Gate adjoint(const Gate& g);
/// Largest entry of |g^dagger g - I|.
double unitarity_deviation(const Gate& g);
}  // namespace gates

/// Orthonormal single-qubit measurement basis.
class SingleQubitBasis {
 public:
  /// Throws InvalidState when the vectors are not orthonormal within `tolerance`.
  SingleQubitBasis(std::array<Amplitude, 2> first, std::array<Amplitude, 2> second,
                   double tolerance = 1e-12);

  static SingleQubitBasis computational();
  /// |0'> = (|0> + |1>)/sqrt2, |1'> = (|0> - |1>)/sqrt2.
  static SingleQubitBasis diagonal();

  const std::array<Amplitude, 2>& vector(std::size_t outcome) const { return vectors_.at(outcome); }

 private:
  std::array<std::array<Amplitude, 2>, 2> vectors_;
};

struct MeasureResult {
  std::size_t outcome;
  double probability;
  PureState post_state;  // measured qubit(s) removed
};

PureState apply_single(const PureState& state, const QubitLabel& target, const Gate& gate);
PureState apply_cnot(const PureState& state, const QubitLabel& control, const QubitLabel& target);

/// Born probabilities of the two basis outcomes on `target`.
std::array<double, 2> outcome_probabilities(const PureState& state, const QubitLabel& target,
                                            const SingleQubitBasis& basis);

MeasureResult measure(const PureState& state, const QubitLabel& target,
                      const SingleQubitBasis& basis, OutcomeChooser& chooser,
                      Step step = Step::projective);
MeasureResult measure(const PureState& state, const QubitLabel& target,
                      const SingleQubitBasis& basis, Rng& rng);
/// Throws ZeroProbabilityOutcome when `outcome` has probability <= 1e-12.
MeasureResult measure(const PureState& state, const QubitLabel& target,
                      const SingleQubitBasis& basis, std::size_t outcome);

/// Bell basis in fixed order: 0 Phi+, 1 Phi-, 2 Psi+, 3 Psi-.
enum class BellState : std::size_t { phi_plus = 0, phi_minus = 1, psi_plus = 2, psi_minus = 3 };

PureState bell_state(BellState which, const QubitLabel& first, const QubitLabel& second,
                     Tolerances tol = {});

std::array<double, 4> bell_probabilities(const PureState& state, const QubitLabel& q1,
                                         const QubitLabel& q2);

MeasureResult bell_measure(const PureState& state, const QubitLabel& q1, const QubitLabel& q2,
                           OutcomeChooser& chooser);
MeasureResult bell_measure(const PureState& state, const QubitLabel& q1, const QubitLabel& q2,
                           Rng& rng);
MeasureResult bell_measure(const PureState& state, const QubitLabel& q1, const QubitLabel& q2,
                           std::size_t outcome);

/// <reference|state> after aligning `reference` to the label order of `state`.
Amplitude inner_product(const PureState& reference, const PureState& state);

/// |<reference|state>|^2. Throws LabelError when the label sets differ.
double fidelity(const PureState& state, const PureState& reference);

PureState tensor(const PureState& a, const PureState& b);
PureState permute(const PureState& state, const std::vector<QubitLabel>& order);
PureState relabel(const PureState& state, const QubitLabel& from, const QubitLabel& to);

/// Zero-qubit state holding a single unit amplitude.
PureState scalar_state(Tolerances tol = {});

}  // namespace efqc
