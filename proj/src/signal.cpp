#include "dhg/signal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dhg/errors.hpp"

namespace dhg {

BinarySignal::BinarySignal(bool initial, std::vector<Transition> transitions,
                           double horizon)
    : initial_(initial), transitions_(std::move(transitions)), horizon_(horizon) {
  if (!(horizon_ >= 0.0) || !std::isfinite(horizon_)) {
    throw ValidationError("signal horizon must be finite and >= 0");
  }
  bool level = initial_;
  double last = -1.0;
  for (const auto& tr : transitions_) {
    if (!std::isfinite(tr.time) || tr.time < 0.0 || tr.time > horizon_) {
      std::ostringstream msg;
      msg << "transition time " << tr.time << " outside [0, " << horizon_ << "]";
      throw ValidationError(msg.str());
    }
    if (!(tr.time > last)) {
      throw ValidationError("transition times must be strictly increasing");
    }
    if (tr.value == level) {
      throw ValidationError("transitions must alternate in value");
    }
    level = tr.value;
    last = tr.time;
  }
}

BinarySignal BinarySignal::constant(bool value, double horizon) {
  return BinarySignal(value, {}, horizon);
}

bool BinarySignal::value_at(double t) const {
  auto it = std::upper_bound(
      transitions_.begin(), transitions_.end(), t,
      [](double x, const Transition& tr) { return x < tr.time; });
  if (it == transitions_.begin()) return initial_;
  return std::prev(it)->value;
}

bool BinarySignal::final_value() const {
  return transitions_.empty() ? initial_ : transitions_.back().value;
}

ModeSwitchSignal::ModeSwitchSignal(Mode initial, std::vector<ModeSwitch> switches,
                                   double horizon)
    : initial_(std::move(initial)), switches_(std::move(switches)), horizon_(horizon) {
  double last = -1.0;
  for (const auto& sw : switches_) {
    if (!(sw.time > last) || sw.time > horizon_) {
      throw ValidationError("mode switches must be increasing within the horizon");
    }
    last = sw.time;
  }
}

const Mode& ModeSwitchSignal::mode_at(double t) const {
  auto it = std::upper_bound(
      switches_.begin(), switches_.end(), t,
      [](double x, const ModeSwitch& sw) { return x < sw.time; });
  if (it == switches_.begin()) return initial_;
  return std::prev(it)->mode;
}

BinarySignal pure_delay_shift(const BinarySignal& s, double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw DomainError("pure delay must be finite and >= 0");
  }
  std::vector<Transition> shifted;
  shifted.reserve(s.transitions().size());
  for (const auto& tr : s.transitions()) {
    const double t = tr.time + delta;
    if (t > s.horizon()) break;
    shifted.push_back({t, tr.value});
  }
  return BinarySignal(s.initial(), std::move(shifted), s.horizon());
}

namespace {

// Measure of the set where two piecewise-constant functions differ.
// `next_a/next_b` return the next change time (or +inf), `differ` compares
// the current pieces.
template <typename A, typename B, typename Differ>
double measure_of_difference(const A& a, const B& b, double horizon, Differ differ) {
  std::size_t ia = 0;
  std::size_t ib = 0;
  double t = 0.0;
  double total = 0.0;
  while (t < horizon) {
    const double ta = ia < a.size() ? a[ia].time : horizon;
    const double tb = ib < b.size() ? b[ib].time : horizon;
    const double next = std::min({ta, tb, horizon});
    if (differ(ia, ib)) total += next - t;
    t = next;
    while (ia < a.size() && a[ia].time <= t) ++ia;
    while (ib < b.size() && b[ib].time <= t) ++ib;
  }
  return total;
}

void require_same_horizon(double h1, double h2) {
  if (h1 != h2) throw DomainError("signals must share the same horizon");
}

}  // namespace

double l1_distance(const BinarySignal& s1, const BinarySignal& s2) {
  require_same_horizon(s1.horizon(), s2.horizon());
  const auto& a = s1.transitions();
  const auto& b = s2.transitions();
  return measure_of_difference(a, b, s1.horizon(), [&](std::size_t ia, std::size_t ib) {
    const bool va = ia == 0 ? s1.initial() : a[ia - 1].value;
    const bool vb = ib == 0 ? s2.initial() : b[ib - 1].value;
    return va != vb;
  });
}

double mode_distance(const ModeSwitchSignal& m1, const ModeSwitchSignal& m2) {
  require_same_horizon(m1.horizon(), m2.horizon());
  const auto& a = m1.switches();
  const auto& b = m2.switches();
  return measure_of_difference(a, b, m1.horizon(), [&](std::size_t ia, std::size_t ib) {
    const ModeId& ma = ia == 0 ? m1.initial().id : a[ia - 1].mode.id;
    const ModeId& mb = ib == 0 ? m2.initial().id : b[ib - 1].mode.id;
    return !(ma == mb);
  });
}

std::optional<Pulse> is_pulse(const BinarySignal& s) {
  const auto& tr = s.transitions();
  if (s.initial() || tr.size() != 2) return std::nullopt;
  return Pulse{tr[0].time, tr[1].time - tr[0].time};
}

SpfReport spf_check(const BinarySignal& output, double epsilon, double k,
                    const Pulse& input_pulse) {
  SpfReport report;
  const auto& tr = output.transitions();
  report.nonzero = output.initial() || !tr.empty();
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    if (tr[i].value && !tr[i + 1].value && tr[i + 1].time - tr[i].time <= epsilon) {
      report.short_pulse = true;
    }
  }
  const double deadline = input_pulse.start + input_pulse.width + k;
  for (const auto& t : tr) {
    if (t.time > deadline) report.late_transition = true;
  }
  return report;
}

}  // namespace dhg
