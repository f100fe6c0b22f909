#pragma once

// Second-quantized model of a polarizing beam splitter followed by
// coincidence detection. Photons are tracked only through occupation numbers
// of the output modes, so no particle-exchange bookkeeping is needed.
//
// Routing convention: H (|0>) is transmitted and V (|1>) is reflected, i.e.
//   in1,H -> out_a,H   in1,V -> out_b,V
//   in2,H -> out_b,H   in2,V -> out_a,V
// with all routing amplitudes +1.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>

#include "efqc/statevec.hpp"

namespace efqc {

enum class Arm : std::uint8_t { in1, in2, out_a, out_b };
enum class Polarization : std::uint8_t { H = 0, V = 1 };

struct ModeLabel {
  Arm arm;
  Polarization polarization;

  friend constexpr auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

/// Photon counts per output mode, indexed by output_mode_index().
using Occupation = std::array<std::uint8_t, 4>;

/// Output modes in occupation order: (a,H), (a,V), (b,H), (b,V).
constexpr std::size_t output_mode_index(ModeLabel mode) {
  return (mode.arm == Arm::out_a ? 0 : 2) + static_cast<std::size_t>(mode.polarization);
}

class FockState {
 public:
  /// Throws InvalidState if the squared amplitudes do not sum to 1 within
  /// `tolerance` or if terms carry different photon numbers.
  explicit FockState(std::map<Occupation, Amplitude> terms, double tolerance = 1e-10);

  const std::map<Occupation, Amplitude>& terms() const noexcept { return terms_; }
  /// Amplitude of `config`, zero when absent.
  Amplitude amplitude(const Occupation& config) const;
  std::size_t photon_number() const noexcept { return photons_; }

 private:
  std::map<Occupation, Amplitude> terms_;
  std::size_t photons_ = 0;
};

std::size_t photon_count(const Occupation& config);

/// Routes a two-photon polarization state through the PBS. The first label of
/// `input` is the photon entering in1, the second the photon entering in2.
FockState pbs_transform(const PureState& input);

struct CoincidenceResult {
  double accept_probability = 0.0;
  /// Renormalized polarization state on (arm_a, arm_b); empty on rejection.
  std::optional<PureState> conditional;

  bool accepted() const noexcept { return conditional.has_value(); }
};

/// Keeps the configurations with exactly one photon in each output arm.
/// Rejects when that component has probability below 1e-12. Throws
/// InvalidState unless the state carries exactly two photons.
CoincidenceResult coincidence_project(const FockState& state, QubitLabel arm_a_label = labels::arm_a,
                                      QubitLabel arm_b_label = labels::arm_b);

}  // namespace efqc
