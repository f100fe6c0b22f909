#include "efqc/fock_optics.hpp"

#include <cmath>
#include <numeric>

#include "efqc/errors.hpp"

namespace efqc {

namespace {

ModeLabel route(Arm input, Polarization pol) {
  const bool transmitted = pol == Polarization::H;
  if (input == Arm::in1) return {transmitted ? Arm::out_a : Arm::out_b, pol};
  return {transmitted ? Arm::out_b : Arm::out_a, pol};
}

}  // namespace

std::size_t photon_count(const Occupation& config) {
  return std::accumulate(config.begin(), config.end(), std::size_t{0});
}

FockState::FockState(std::map<Occupation, Amplitude> terms, double tolerance)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw InvalidState("Fock state has no terms");
  photons_ = photon_count(terms_.begin()->first);
  double total = 0.0;
  for (const auto& [config, amp] : terms_) {
    if (photon_count(config) != photons_) {
      throw InvalidState("Fock state terms carry different photon numbers");
    }
    total += std::norm(amp);
  }
  if (std::abs(total - 1.0) > tolerance) {
    throw InvalidState("Fock state squared amplitudes sum to " + std::to_string(total));
  }
}

Amplitude FockState::amplitude(const Occupation& config) const {
  auto it = terms_.find(config);
  return it == terms_.end() ? Amplitude{} : it->second;
}

FockState pbs_transform(const PureState& input) {
  if (input.num_qubits() != 2) {
    throw InvalidState("PBS input must be a two-photon polarization state");
  }
  std::map<Occupation, Amplitude> terms;
  for (std::size_t idx = 0; idx < 4; ++idx) {
    const Amplitude amp = input.amplitude(idx);
    if (amp == Amplitude{}) continue;
    Occupation config{};
    ++config[output_mode_index(route(Arm::in1, static_cast<Polarization>(input.bit(idx, 0))))];
    ++config[output_mode_index(route(Arm::in2, static_cast<Polarization>(input.bit(idx, 1))))];
    terms[config] += amp;
  }
  return FockState(std::move(terms), input.tolerances().invariant);
}

CoincidenceResult coincidence_project(const FockState& state, QubitLabel arm_a_label,
                                      QubitLabel arm_b_label) {
  if (state.photon_number() != 2) {
    throw InvalidState("coincidence detection needs exactly two photons, got " +
                       std::to_string(state.photon_number()));
  }
  // One photon per arm: the polarization in each arm is then a qubit.
  std::vector<Amplitude> amps(4);
  for (const auto& [config, amp] : state.terms()) {
    const std::size_t in_a = config[0] + config[1];
    const std::size_t in_b = config[2] + config[3];
    if (in_a != 1 || in_b != 1) continue;
    const std::size_t pol_a = config[1];
    const std::size_t pol_b = config[3];
    amps[2 * pol_a + pol_b] += amp;
  }
  double p = 0.0;
  for (const auto& a : amps) p += std::norm(a);
  CoincidenceResult result;
  result.accept_probability = p;
  if (p > kMinOutcomeProbability) {
    result.conditional = PureState::normalized({arm_a_label, arm_b_label}, std::move(amps));
  }
  return result;
}

}  // namespace efqc
