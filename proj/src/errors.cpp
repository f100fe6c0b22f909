#include "efqc/errors.hpp"

#include <sstream>

namespace efqc {

namespace {

std::string describe_gate_deviation(double deviation) {
  std::ostringstream out;
  out << "gate is not unitary: max |U^dagger U - I| entry is " << deviation;
  return out.str();
}

std::string describe_zero_outcome(std::size_t outcome, double probability) {
  std::ostringstream out;
  out << "cannot force outcome " << outcome << ": its probability is " << probability;
  return out.str();
}

}  // namespace

NonUnitaryGate::NonUnitaryGate(double deviation)
    : Error(describe_gate_deviation(deviation)), deviation_(deviation) {}

ZeroProbabilityOutcome::ZeroProbabilityOutcome(std::size_t outcome, double probability)
    : Error(describe_zero_outcome(outcome, probability)),
      outcome_(outcome),
      probability_(probability) {}

}  // namespace efqc
