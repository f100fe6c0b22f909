#include "efqc/outcomes.hpp"

#include <algorithm>

#include "efqc/errors.hpp"

namespace efqc {

std::size_t SampledChooser::choose(Step /*step*/, std::span<const double> probabilities) {
  const double u = rng_->uniform();
  double cumulative = 0.0;
  std::size_t last_possible = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    last_possible = i;
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  // Rounding left u above the cumulative sum.
  return last_possible;
}

ForcedChooser& ForcedChooser::force(Step step, std::size_t outcome) {
  queued_[step].push_back(outcome);
  return *this;
}

std::size_t ForcedChooser::choose(Step step, std::span<const double> probabilities) {
  auto it = queued_.find(step);
  if (it != queued_.end() && !it->second.empty()) {
    const std::size_t outcome = it->second.front();
    it->second.pop_front();
    const double p = outcome < probabilities.size() ? probabilities[outcome] : 0.0;
    if (p <= kMinOutcomeProbability) throw ZeroProbabilityOutcome(outcome, p);
    return outcome;
  }
  if (fallback_ != nullptr) return SampledChooser(*fallback_).choose(step, probabilities);
  return static_cast<std::size_t>(
      std::max_element(probabilities.begin(), probabilities.end()) - probabilities.begin());
}

namespace detail {

std::size_t first_viable(const std::vector<double>& probabilities, std::size_t from) {
  for (std::size_t i = from; i < probabilities.size(); ++i) {
    if (probabilities[i] > kMinOutcomeProbability) return i;
  }
  return probabilities.size();
}

std::size_t ScriptedChooser::choose(Step /*step*/, std::span<const double> probabilities) {
  if (depth_ == trail_->size()) {
    std::vector<double> probs(probabilities.begin(), probabilities.end());
    std::size_t choice = first_viable(probs, 0);
    if (choice == probs.size()) {
      choice = static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
    }
    trail_->push_back({std::move(probs), choice});
  }
  const Decision& decision = (*trail_)[depth_++];
  weight_ *= probabilities[decision.choice];
  return decision.choice;
}

bool advance(std::vector<Decision>& trail) {
  while (!trail.empty()) {
    Decision& last = trail.back();
    const std::size_t next = first_viable(last.probabilities, last.choice + 1);
    if (next < last.probabilities.size()) {
      last.choice = next;
      return true;
    }
    trail.pop_back();
  }
  return false;
}

}  // namespace detail
}  // namespace efqc
