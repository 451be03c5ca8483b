#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace dhg {

struct Transition {
  double time;
  bool value;
  friend bool operator==(const Transition&, const Transition&) = default;
};

// Right-continuous binary signal on [0, horizon]. `initial` is the value
// before time 0; transitions alternate, start with !initial and have
// strictly increasing times in [0, horizon].
class BinarySignal {
 public:
  BinarySignal(bool initial, std::vector<Transition> transitions,
               double horizon);
  static BinarySignal constant(bool value, double horizon);

  bool initial() const { return initial_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  double horizon() const { return horizon_; }
  bool value_at(double t) const;
  bool final_value() const;

  friend bool operator==(const BinarySignal&, const BinarySignal&) = default;

 private:
  bool initial_;
  std::vector<Transition> transitions_;
  double horizon_;
};

// Identity of the ODE governing a gate between two switches. `family`
// distinguishes different right-hand sides sharing an input vector.
struct ModeId {
  int family = 0;
  std::uint32_t inputs = 0;
  friend bool operator==(const ModeId&, const ModeId&) = default;
};

// A mode together with the data its trajectory family needs: for each
// (delayed) input, the time it last changed, or -inf if never.
struct Mode {
  ModeId id;
  std::vector<double> input_edge_time;
};

struct ModeSwitch {
  double time;
  Mode mode;
};

class ModeSwitchSignal {
 public:
  ModeSwitchSignal(Mode initial, std::vector<ModeSwitch> switches,
                   double horizon);

  const Mode& initial() const { return initial_; }
  const std::vector<ModeSwitch>& switches() const { return switches_; }
  double horizon() const { return horizon_; }
  const Mode& mode_at(double t) const;

 private:
  Mode initial_;
  std::vector<ModeSwitch> switches_;
  double horizon_;
};

// Shift every transition by delta >= 0; ones pushed past the horizon drop.
BinarySignal pure_delay_shift(const BinarySignal& s, double delta);

// Lebesgue measure of {t in [0, T] : s1(t) != s2(t)}.
double l1_distance(const BinarySignal& s1, const BinarySignal& s2);

// Lebesgue measure of {t in [0, T] : mode ids differ}.
double mode_distance(const ModeSwitchSignal& m1, const ModeSwitchSignal& m2);

struct Pulse {
  double start;
  double width;
};

// A pulse is the zero signal with exactly one rising and one falling edge.
std::optional<Pulse> is_pulse(const BinarySignal& s);

struct SpfReport {
  bool short_pulse = false;      // output has a pulse of width <= epsilon
  bool late_transition = false;  // output switches after T0 + width + K
  bool nonzero = false;          // output is not the zero signal
};

SpfReport spf_check(const BinarySignal& output, double epsilon, double k,
                    const Pulse& input_pulse);

}  // namespace dhg
