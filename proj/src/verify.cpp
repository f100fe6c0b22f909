#include "efqc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "efqc/harness.hpp"

namespace efqc {

namespace {

using namespace labels;

constexpr double kTol = 1e-12;

std::string sci(double v) {
  std::ostringstream out;
  out << std::setprecision(3) << std::scientific << v;
  return out.str();
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream out;
  out << std::setprecision(digits) << std::fixed << v;
  return out.str();
}

CheckResult named(std::string name) {
  CheckResult r;
  r.name = std::move(name);
  return r;
}

struct ExactSummary {
  double accept = 0.0;
  double fidelity_sum = 0.0;  // weighted by acceptance
  double fatal = 0.0;
  double min_fidelity = 1.0;
};

template <class Run>
ExactSummary summarize(Run&& run) {
  ExactSummary s;
  for (const auto& path : enumerate_paths(run)) {
    if (!path.result.accepted()) continue;
    const double f = *path.result.fidelity;
    s.accept += path.weight;
    s.fidelity_sum += path.weight * f;
    if (f < kFatalFidelity) s.fatal += path.weight;
    s.min_fidelity = std::min(s.min_fidelity, f);
  }
  return s;
}

double max_amplitude_error(const PureState& a, const PureState& b) {
  const PureState aligned = permute(b, a.labels());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    worst = std::max(worst, std::abs(a.amplitude(i) - aligned.amplitude(i)));
  }
  return worst;
}

// Deterministic pseudo-random complex two-qubit state (Box-Muller).
PureState random_two_qubit(Rng& rng) {
  std::vector<Amplitude> amps(4);
  for (auto& a : amps) {
    const double r = std::sqrt(-2.0 * std::log(1.0 - rng.uniform()));
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    a = std::polar(r, phi);
  }
  return PureState::normalized({particle3, particle4}, std::move(amps));
}

CheckResult eq56_exactness() {
  CheckResult r = named("noiseless arm-b projections (Phi+ / Phi-)");
  double worst_amp = 0.0;
  double worst_prob = 0.0;
  for (std::size_t b = 0; b < 2; ++b) {
    ForcedChooser chooser;
    chooser.force(Step::b_measurement, b);
    const ProtocolOutcome out = optical_reject_transmit(
        ErrorModel::none(), ErrorModel::none(), chooser, ParityRoute::qubit_projection, false);
    const PureState expected =
        bell_state(b == 0 ? BellState::phi_plus : BellState::phi_minus, particle2, arm_a);
    worst_amp = std::max(worst_amp, max_amplitude_error(expected, *out.final_state));
    const auto probs = enumerate_paths([](OutcomeChooser& c) {
      return optical_reject_transmit(ErrorModel::none(), ErrorModel::none(), c).message.b_outcomes;
    });
    for (const auto& path : probs) worst_prob = std::max(worst_prob, std::abs(path.weight - 0.5));
  }
  r.passed = worst_amp < kTol && worst_prob < kTol;
  r.measured = "amp err " + sci(worst_amp) + ", |P(b)-0.5| " + sci(worst_prob);
  r.expected = "< 1e-12";
  return r;
}

CheckResult rejection_completeness() {
  CheckResult r = named("single bit flips are always rejected");
  const ErrorModel x = ErrorModel::bit_flip(1.0);
  const ErrorModel id = ErrorModel::none();
  double worst = 0.0;
  for (std::size_t photon = 0; photon < 2; ++photon) {
    const ErrorModel& m3 = photon == 0 ? x : id;
    const ErrorModel& m4 = photon == 1 ? x : id;
    worst = std::max(worst, summarize([&](OutcomeChooser& c) {
                              return optical_reject_transmit(m3, m4, c);
                            }).accept);
  }
  for (std::size_t photon = 0; photon < 4; ++photon) {
    std::array<ErrorModel, 4> models{id, id, id, id};
    models[photon] = x;
    worst = std::max(worst, summarize([&](OutcomeChooser& c) {
                              return dual_distribution(models, c);
                            }).accept);
  }
  r.passed = worst == 0.0;
  r.measured = "max acceptance " + sci(worst) + " over 6 patterns";
  r.expected = "0";
  return r;
}

CheckResult double_error_residual() {
  CheckResult r = named("double flips pass with probability p^2 (p = 0.1)");
  const ErrorModel m = ErrorModel::bit_flip(0.1);
  const ExactSummary s = summarize([&](OutcomeChooser& c) { return optical_reject_transmit(m, m, c); });
  const double fatal = s.fatal / s.accept;
  const double expected_accept = 0.9 * 0.9 + 0.1 * 0.1;
  const double expected_fatal = 0.1 * 0.1 / expected_accept;
  r.passed = std::abs(s.accept - expected_accept) < kTol && std::abs(fatal - expected_fatal) < kTol;
  r.measured = "accept " + fixed(s.accept, 12) + ", fatal|accept " + fixed(fatal, 12);
  r.expected = "accept " + fixed(expected_accept, 12) + ", fatal|accept " + fixed(expected_fatal, 12);
  return r;
}

CheckResult error_quantization() {
  CheckResult r = named("coherent rotation: acceptance cos^2(theta), fidelity 1");
  double worst_accept = 0.0;
  double worst_fid = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double theta = k * std::numbers::pi / 50.0;
    const ErrorModel rot = ErrorModel::rotation(theta);
    const ExactSummary s = summarize([&](OutcomeChooser& c) {
      return optical_reject_transmit(rot, ErrorModel::none(), c);
    });
    const double c = std::cos(theta);
    worst_accept = std::max(worst_accept, std::abs(s.accept - c * c));
    if (s.accept > 0.0) worst_fid = std::max(worst_fid, 1.0 - s.min_fidelity);
  }
  r.passed = worst_accept < kTol && worst_fid < kTol;
  r.measured = "|accept-cos^2| " + sci(worst_accept) + ", 1-fidelity " + sci(worst_fid);
  r.expected = "< 1e-12 over 50 angles";
  return r;
}

CheckResult phase_error_limitation(const BellCorrections& corrections) {
  CheckResult r = named("phase flip on photon 3 passes undetected");
  const PureState plus = PureState::qubit(particle1, std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2);
  const ExactSummary s = summarize([&](OutcomeChooser& c) {
    return end_to_end_teleport(plus, ErrorModel::phase_flip(1.0), ErrorModel::none(), c, corrections);
  });
  const double mean_fid = s.fidelity_sum / s.accept;
  r.passed = std::abs(s.accept - 1.0) < kTol && mean_fid < kTol;
  r.measured = "accept " + fixed(s.accept) + ", fidelity " + sci(mean_fid);
  r.expected = "accept 1, fidelity 0";
  return r;
}

CheckResult repetition_code() {
  CheckResult r = named("repetition code corrects every single flip");
  double worst = 0.0;
  bool syndromes_ok = true;
  const std::array<std::array<std::size_t, 2>, 4> expected{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}};
  const std::array<QubitLabel, 3> carriers{particle1, ancilla(1), ancilla(2)};
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double t = i * std::numbers::pi / 9.0;
      const double phi = j * 2.0 * std::numbers::pi / 10.0;
      const Amplitude alpha = std::cos(t / 2);
      const Amplitude beta = std::polar(std::sin(t / 2), phi);
      const PureState input = PureState::qubit(particle1, alpha, beta);
      for (std::size_t e = 0; e < 4; ++e) {
        PureState word = encode_repetition(alpha, beta);
        if (e > 0) word = apply_single(word, carriers[e - 1], gates::pauli_x());
        const SyndromeResult s = syndrome_correct(word);
        syndromes_ok = syndromes_ok && s.syndrome == expected[e];
        worst = std::max(worst, 1.0 - fidelity(s.corrected, input));
      }
    }
  }
  r.passed = syndromes_ok && worst < kTol;
  r.measured = std::string(syndromes_ok ? "syndromes ok" : "syndrome mismatch") +
               ", 1-fidelity " + sci(worst);
  r.expected = "syndromes 00/11/10/01, 1-fidelity < 1e-12";
  return r;
}

CheckResult teleportation(const BellCorrections& corrections) {
  CheckResult r = named("teleportation and end-to-end, all branches");
  Rng rng(0x7e1e7047ULL);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const PureState input = random_qubit(rng);
    for (std::size_t bell = 0; bell < 4; ++bell) {
      ForcedChooser direct;
      direct.force(Step::bell_measurement, bell);
      worst = std::max(worst, 1.0 - *teleport(input, direct, corrections).fidelity);
      for (std::size_t b = 0; b < 2; ++b) {
        ForcedChooser chained;
        chained.force(Step::bell_measurement, bell).force(Step::b_measurement, b);
        const ProtocolOutcome out = end_to_end_teleport(input, ErrorModel::none(),
                                                        ErrorModel::none(), chained, corrections);
        worst = std::max(worst, 1.0 - *out.fidelity);
      }
    }
  }
  r.passed = worst < kTol;
  r.measured = "1-fidelity " + sci(worst) + " over 100 inputs x 12 branches";
  r.expected = "< 1e-12";
  return r;
}

CheckResult fock_equivalence() {
  CheckResult r = named("PBS Fock model matches qubit parity projection");
  Rng rng(0xf0c4ULL);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const PureState input = random_two_qubit(rng);
    const CoincidenceResult q = qubit_coincidence(input);
    const CoincidenceResult f = coincidence_project(pbs_transform(input));
    worst = std::max(worst, std::abs(q.accept_probability - f.accept_probability));
    if (q.accepted() != f.accepted()) {
      worst = 1.0;
      continue;
    }
    if (!q.accepted()) continue;
    const Amplitude overlap = inner_product(*q.conditional, *f.conditional);
    const Amplitude phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : 1.0;
    for (std::size_t k = 0; k < 4; ++k) {
      worst = std::max(worst,
                       std::abs(f.conditional->amplitude(k) - phase * q.conditional->amplitude(k)));
    }
  }
  r.passed = worst < kTol;
  r.measured = "max deviation " + sci(worst) + " over 1000 states";
  r.expected = "< 1e-12";
  return r;
}

CheckResult two_sided_law() {
  CheckResult r = named("two-sided acceptance is ((1-p)^2 + p^2)^2 (p = 0.1)");
  const ErrorModel m = ErrorModel::bit_flip(0.1);
  const ExactSummary s = summarize([&](OutcomeChooser& c) { return dual_distribution({m, m, m, m}, c); });
  const double expected = 0.82 * 0.82;
  r.passed = std::abs(s.accept - expected) < kTol;
  r.measured = "accept " + fixed(s.accept, 12);
  r.expected = "accept " + fixed(expected, 12);
  return r;
}

CheckResult reproducibility() {
  CheckResult r = named("sweep output independent of worker count");
  ExperimentConfig config;
  config.protocol = ProtocolKind::optical_reject;
  config.model = ModelKind::bitflip;
  config.trials = 2000;
  config.seed = 20011;
  config.sweep = {0.0, 0.05, 0.1};
  std::ostringstream one;
  std::ostringstream many;
  write_csv(one, sweep(config));
  config.workers = 8;
  write_csv(many, sweep(config));
  r.passed = one.str() == many.str();
  r.measured = r.passed ? "identical" : "differs";
  r.expected = "identical CSV for 1 and 8 workers";
  return r;
}

}  // namespace

std::vector<CheckResult> verify(const VerifyOptions& options) {
  const std::vector<std::function<CheckResult()>> checks{
      eq56_exactness,
      rejection_completeness,
      double_error_residual,
      error_quantization,
      [&] { return phase_error_limitation(options.corrections); },
      repetition_code,
      [&] { return teleportation(options.corrections); },
      fock_equivalence,
      two_sided_law,
      reproducibility,
  };
  std::vector<CheckResult> results;
  for (const auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult result = check();
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(result));
  }
  return results;
}

bool print_report(std::ostream& out, const std::vector<CheckResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": measured " << r.measured
        << "; expected " << r.expected << " (" << std::fixed << std::setprecision(3) << r.seconds
        << "s)\n";
  }
  out << (all ? "all checks passed" : "verification FAILED") << '\n';
  return all;
}

}  // namespace efqc
