#include "efqc/channels.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "efqc/errors.hpp"

namespace efqc {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << what << " probability " << p << " is outside [0, 1]";
    throw ConfigError(msg.str());
  }
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

PureState apply_model(PureState state, const QubitLabel& target, const ErrorModel& model,
                      OutcomeChooser& chooser, std::vector<ChannelEvent>& events) {
  return std::visit(
      Overloaded{
          [&](const ErrorModel::None&) { return state; },
          [&](const ErrorModel::BitFlip& m) {
            const std::array<double, 2> probs{1.0 - m.p, m.p};
            const bool flip = chooser.choose(Step::bit_flip, probs) == 1;
            events.push_back({ChannelEvent::Kind::bit_flip, flip});
            return flip ? apply_single(state, target, gates::pauli_x()) : state;
          },
          [&](const ErrorModel::Rotation& m) {
            events.push_back({ChannelEvent::Kind::rotation, true, m.theta});
            return apply_single(state, target, gates::x_rotation(m.theta));
          },
          [&](const ErrorModel::PhaseFlip& m) {
            const std::array<double, 2> probs{1.0 - m.p, m.p};
            const bool flip = chooser.choose(Step::phase_flip, probs) == 1;
            events.push_back({ChannelEvent::Kind::phase_flip, flip});
            return flip ? apply_single(state, target, gates::pauli_z()) : state;
          },
          [&](const ErrorModel::Sequence& m) {
            for (const auto& member : m.members) {
              state = apply_model(std::move(state), target, member, chooser, events);
            }
            return state;
          },
      },
      model.variant());
}

}  // namespace

ErrorModel ErrorModel::none() { return ErrorModel(None{}); }

ErrorModel ErrorModel::bit_flip(double p) {
  check_probability(p, "bit-flip");
  return ErrorModel(BitFlip{p});
}

ErrorModel ErrorModel::phase_flip(double p) {
  check_probability(p, "phase-flip");
  return ErrorModel(PhaseFlip{p});
}

ErrorModel ErrorModel::rotation(double theta) {
  if (!std::isfinite(theta)) throw ConfigError("rotation angle must be finite");
  return ErrorModel(Rotation{theta});
}

ErrorModel ErrorModel::sequence(std::vector<ErrorModel> members) {
  if (members.empty()) throw ConfigError("error-model sequence must not be empty");
  return ErrorModel(Sequence{std::move(members)});
}

std::string ErrorModel::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const None&) { out << "none"; },
                 [&](const BitFlip& m) { out << "bitflip(p=" << m.p << ")"; },
                 [&](const Rotation& m) { out << "rotation(theta=" << m.theta << ")"; },
                 [&](const PhaseFlip& m) { out << "phaseflip(p=" << m.p << ")"; },
                 [&](const Sequence& m) {
                   out << "sequence(";
                   for (std::size_t i = 0; i < m.members.size(); ++i) {
                     out << (i ? ", " : "") << m.members[i].describe();
                   }
                   out << ")";
                 },
             },
             variant_);
  return out.str();
}

bool TraversalRecord::flipped() const noexcept {
  bool odd = false;
  for (const auto& e : events) {
    if (e.kind == ChannelEvent::Kind::bit_flip && e.applied) odd = !odd;
  }
  return odd;
}

bool TraversalRecord::phase_flipped() const noexcept {
  bool odd = false;
  for (const auto& e : events) {
    if (e.kind == ChannelEvent::Kind::phase_flip && e.applied) odd = !odd;
  }
  return odd;
}

double TraversalRecord::rotation_angle() const noexcept {
  double total = 0.0;
  for (const auto& e : events) {
    if (e.kind == ChannelEvent::Kind::rotation) total += e.angle;
  }
  return total;
}

const TraversalRecord* ErrorRecord::find(const QubitLabel& photon) const noexcept {
  for (const auto& t : traversals) {
    if (t.photon == photon) return &t;
  }
  return nullptr;
}

ChannelResult apply_channel(const PureState& state, const QubitLabel& target,
                            const ErrorModel& model, OutcomeChooser& chooser) {
  state.position(target);  // unknown label -> LabelError before any randomness is consumed
  TraversalRecord record{target, {}};
  PureState out = apply_model(state, target, model, chooser, record.events);
  return {std::move(out), std::move(record)};
}

ChannelResult apply_channel(const PureState& state, const QubitLabel& target,
                            const ErrorModel& model, Rng& rng) {
  SampledChooser chooser(rng);
  return apply_channel(state, target, model, chooser);
}

}  // namespace efqc
