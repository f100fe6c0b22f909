#pragma once

// Every random decision in the simulator (a stochastic channel event or a
// measurement outcome) is delegated to an OutcomeChooser. Swapping the chooser
// switches a protocol run between Monte Carlo sampling, scripted (forced)
// outcomes, and exhaustive enumeration of all branches.

#include <cstddef>
#include <deque>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "efqc/random.hpp"

namespace efqc {

/// Outcomes with Born weight at or below this are treated as impossible.
inline constexpr double kMinOutcomeProbability = 1e-12;

enum class Step {
  bit_flip,
  phase_flip,
  coincidence,  // 0 = coincidence (accept), 1 = no coincidence
  b_measurement,
  bell_measurement,
  syndrome,
  parity_ancilla,
  projective,
};

class OutcomeChooser {
 public:
  virtual ~OutcomeChooser() = default;

  /// Returns an index into `probabilities`, which sum to one.
  virtual std::size_t choose(Step step, std::span<const double> probabilities) = 0;
};

/// Draws each outcome with its Born probability from an Rng.
class SampledChooser final : public OutcomeChooser {
 public:
  explicit SampledChooser(Rng& rng) : rng_(&rng) {}
  std::size_t choose(Step step, std::span<const double> probabilities) override;

 private:
  Rng* rng_;
};

/// Replays queued outcomes per step. Unforced steps are sampled from the
/// fallback Rng when one is given, otherwise the most likely outcome is taken
/// (lowest index on ties). Forcing an outcome of probability at most
/// kMinOutcomeProbability throws ZeroProbabilityOutcome.
class ForcedChooser final : public OutcomeChooser {
 public:
  ForcedChooser() = default;
  explicit ForcedChooser(Rng& fallback) : fallback_(&fallback) {}

  ForcedChooser& force(Step step, std::size_t outcome);
  std::size_t choose(Step step, std::span<const double> probabilities) override;

 private:
  std::map<Step, std::deque<std::size_t>> queued_;
  Rng* fallback_ = nullptr;
};

template <class Result>
struct WeightedPath {
  double weight;
  Result result;
};

namespace detail {

struct Decision {
  std::vector<double> probabilities;
  std::size_t choice;
};

std::size_t first_viable(const std::vector<double>& probabilities, std::size_t from);

class ScriptedChooser final : public OutcomeChooser {
 public:
  explicit ScriptedChooser(std::vector<Decision>& trail) : trail_(&trail) {}
  std::size_t choose(Step step, std::span<const double> probabilities) override;
  double weight() const noexcept { return weight_; }
  std::size_t depth() const noexcept { return depth_; }

 private:
  std::vector<Decision>* trail_;
  std::size_t depth_ = 0;
  double weight_ = 1.0;
};

/// Advances the trail to the next unexplored branch; false when exhausted.
bool advance(std::vector<Decision>& trail);

}  // namespace detail

/// Runs `run(chooser)` once per branch of its decision tree and returns each
/// result with the product of the probabilities along its path. Branches with
/// probability at most kMinOutcomeProbability are pruned. `run` must be
/// deterministic given the chooser's answers.
template <class Run>
auto enumerate_paths(Run&& run) {
  using Result = decltype(run(std::declval<OutcomeChooser&>()));
  std::vector<WeightedPath<Result>> paths;
  std::vector<detail::Decision> trail;
  do {
    detail::ScriptedChooser chooser(trail);
    Result result = run(static_cast<OutcomeChooser&>(chooser));
    trail.resize(chooser.depth());
    paths.push_back({chooser.weight(), std::move(result)});
  } while (detail::advance(trail));
  return paths;
}

}  // namespace efqc
