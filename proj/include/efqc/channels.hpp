#pragma once

// Per-photon noise models. Stochastic events (bit and phase flips) are
// decided through an OutcomeChooser, so a channel can be sampled as a
// trajectory or enumerated exactly; coherent rotations are deterministic.

#include <string>
#include <variant>
#include <vector>

#include "efqc/outcomes.hpp"
#include "efqc/statevec.hpp"

namespace efqc {

class ErrorModel {
 public:
  struct None {
    friend bool operator==(const None&, const None&) = default;
  };
  /// X with probability p.
  struct BitFlip {
    double p;
    friend bool operator==(const BitFlip&, const BitFlip&) = default;
  };
  /// cos(theta) I + i sin(theta) X, applied every time.
  struct Rotation {
    double theta;
    friend bool operator==(const Rotation&, const Rotation&) = default;
  };
  /// Z with probability p.
  struct PhaseFlip {
    double p;
    friend bool operator==(const PhaseFlip&, const PhaseFlip&) = default;
  };
  /// Members applied in order.
  struct Sequence {
    std::vector<ErrorModel> members;
    friend bool operator==(const Sequence&, const Sequence&) = default;
  };
  using Variant = std::variant<None, BitFlip, Rotation, PhaseFlip, Sequence>;

  ErrorModel() = default;

  static ErrorModel none();
  /// Throw ConfigError unless p is in [0, 1].
  static ErrorModel bit_flip(double p);
  static ErrorModel phase_flip(double p);
  /// Throws ConfigError for a non-finite angle.
  static ErrorModel rotation(double theta);
  /// Throws ConfigError for an empty list.
  static ErrorModel sequence(std::vector<ErrorModel> members);

  const Variant& variant() const noexcept { return variant_; }
  std::string describe() const;

  friend bool operator==(const ErrorModel&, const ErrorModel&) = default;

 private:
  explicit ErrorModel(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

struct ChannelEvent {
  enum class Kind { bit_flip, rotation, phase_flip };
  Kind kind;
  bool applied;
  double angle = 0.0;  // rotations only

  friend bool operator==(const ChannelEvent&, const ChannelEvent&) = default;
};

/// Everything one photon experienced during one channel traversal.
struct TraversalRecord {
  QubitLabel photon;
  std::vector<ChannelEvent> events;

  /// Net X: an odd number of applied bit flips.
  bool flipped() const noexcept;
  bool phase_flipped() const noexcept;
  double rotation_angle() const noexcept;

  friend bool operator==(const TraversalRecord&, const TraversalRecord&) = default;
};

struct ErrorRecord {
  std::vector<TraversalRecord> traversals;

  /// First traversal of `photon`, or nullptr.
  const TraversalRecord* find(const QubitLabel& photon) const noexcept;

  friend bool operator==(const ErrorRecord&, const ErrorRecord&) = default;
};

struct ChannelResult {
  PureState state;
  TraversalRecord record;
};

ChannelResult apply_channel(const PureState& state, const QubitLabel& target,
                            const ErrorModel& model, OutcomeChooser& chooser);
ChannelResult apply_channel(const PureState& state, const QubitLabel& target,
                            const ErrorModel& model, Rng& rng);

}  // namespace efqc
