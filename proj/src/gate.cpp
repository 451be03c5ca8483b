#include "dhg/gate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dhg/errors.hpp"

namespace dhg {

int GateModel::mode_family(InputVector, InputVector current, bool) const {
  return static_cast<int>(current);
}

Mode GateModel::initial_mode(InputVector inputs) const {
  Mode m;
  m.id = {mode_family(inputs, inputs, true), inputs};
  m.input_edge_time.assign(input_count(), -std::numeric_limits<double>::infinity());
  return m;
}

Mode GateModel::next_mode(const Mode& previous, InputVector inputs, double t) const {
  Mode m = previous;
  const InputVector changed = previous.id.inputs ^ inputs;
  for (std::size_t j = 0; j < input_count(); ++j) {
    if (changed & (InputVector{1} << j)) m.input_edge_time[j] = t;
  }
  m.id = {mode_family(previous.id.inputs, inputs, false), inputs};
  return m;
}

StateVector GateModel::initial_state(const Mode& mode, std::optional<bool> output) const {
  StateVector s = steady_state(mode);
  if (!output || (s.output() > threshold()) == *output) return s;
  s.x[0] = *output ? vdd() : 0.0;
  return s;
}

StateVector GateModel::admissible(const StateVector& s) const {
  const double tol = 1e-9 * vdd();
  StateVector out = s;
  for (std::size_t i = 0; i < s.dim; ++i) {
    const double v = s.x[i];
    if (!(v >= -tol && v <= vdd() + tol)) {
      std::ostringstream msg;
      msg << "state component " << i << " = " << v << " left the admissible box [0, "
          << vdd() << "]";
      throw SimulationError(msg.str());
    }
    out.x[i] = std::clamp(v, 0.0, vdd());
  }
  return out;
}

InputVector input_vector(std::span<const BinarySignal> inputs, double t) {
  InputVector v = 0;
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    if (inputs[j].value_at(t)) v |= InputVector{1} << j;
  }
  return v;
}

InputVector initial_input_vector(std::span<const BinarySignal> inputs) {
  InputVector v = 0;
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    if (inputs[j].initial()) v |= InputVector{1} << j;
  }
  return v;
}

namespace {

double common_horizon(std::span<const BinarySignal> inputs, double horizon) {
  if (!std::isnan(horizon)) {
    for (const auto& s : inputs) {
      if (s.horizon() != horizon) throw DomainError("input horizons disagree");
    }
    return horizon;
  }
  if (inputs.empty()) throw DomainError("a gate without inputs needs an explicit horizon");
  for (const auto& s : inputs) {
    if (s.horizon() != inputs.front().horizon()) {
      throw DomainError("input horizons disagree");
    }
  }
  return inputs.front().horizon();
}

ModeSwitchSignal build_modes(const GateModel& gate, std::span<const BinarySignal> inputs,
                             double horizon) {
  if (inputs.size() != gate.input_count()) {
    throw DomainError("input count does not match the gate");
  }
  struct Arrival {
    double time;
    std::size_t input;
    bool value;
  };
  std::vector<Arrival> arrivals;
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    const double delta = gate.pure_delay(j);
    for (const auto& tr : inputs[j].transitions()) {
      const double t = tr.time + delta;
      if (t > horizon) break;
      arrivals.push_back({t, j, tr.value});
    }
  }
  std::sort(arrivals.begin(), arrivals.end(), [](const Arrival& a, const Arrival& b) {
    return a.time != b.time ? a.time < b.time : a.input < b.input;
  });
  InputVector bits = initial_input_vector(inputs);
  Mode current = gate.initial_mode(bits);
  Mode initial = current;
  std::vector<ModeSwitch> switches;
  for (std::size_t i = 0; i < arrivals.size();) {
    const double t = arrivals[i].time;
    for (; i < arrivals.size() && arrivals[i].time == t; ++i) {
      const InputVector mask = InputVector{1} << arrivals[i].input;
      bits = arrivals[i].value ? (bits | mask) : (bits & ~mask);
    }
    current = gate.next_mode(current, bits, t);
    switches.push_back({t, current});
  }
  return ModeSwitchSignal(std::move(initial), std::move(switches), horizon);
}

}  // namespace

ModeSwitchSignal build_mode_switch_signal(const GateModel& gate,
                                          std::span<const BinarySignal> inputs) {
  return build_modes(gate, inputs, common_horizon(inputs, std::nan("")));
}

Trajectory matching_output(const GateModel& gate, const ModeSwitchSignal& modes,
                           const StateVector& x0) {
  std::vector<TrajectorySegment> segs;
  segs.reserve(modes.switches().size() + 1);
  segs.push_back({0.0, modes.initial(), gate.make_piece(modes.initial(), gate.admissible(x0), 0.0)});
  for (const auto& sw : modes.switches()) {
    const StateVector entry = gate.admissible(piece_state(segs.back().piece, sw.time));
    segs.push_back({sw.time, sw.mode, gate.make_piece(sw.mode, entry, sw.time)});
  }
  return Trajectory(std::move(segs), modes.horizon());
}

static GateEvaluation evaluate_with_horizon(const GateModel& gate,
                                            std::span<const BinarySignal> inputs,
                                            std::optional<bool> initial_output,
                                            double horizon) {
  ModeSwitchSignal modes = build_modes(gate, inputs, horizon);
  const StateVector x0 = gate.initial_state(modes.initial(), initial_output);
  Trajectory traj = matching_output(gate, modes, x0);
  BinarySignal out = threshold_digitize(traj, gate.threshold());
  return {std::move(modes), std::move(traj), std::move(out)};
}

GateEvaluation evaluate_gate(const GateModel& gate, std::span<const BinarySignal> inputs,
                             std::optional<bool> initial_output) {
  return evaluate_with_horizon(gate, inputs, initial_output,
                               common_horizon(inputs, std::nan("")));
}

GateEvaluation evaluate_gate_until(const GateModel& gate,
                                   std::span<const BinarySignal> inputs,
                                   std::optional<bool> initial_output, double horizon) {
  return evaluate_with_horizon(gate, inputs, initial_output, common_horizon(inputs, horizon));
}

BinarySignal gate_response(const GateModel& gate, std::span<const BinarySignal> inputs,
                           std::optional<bool> initial_output) {
  return evaluate_gate(gate, inputs, initial_output).output;
}

double continuity_bound(const GateModel& gate, double horizon, double mode_distance) {
  const double k = std::max(gate.lipschitz_constant(), 1.0);
  return 2.0 * gate.rhs_bound() * std::exp(horizon * k) * mode_distance;
}

ContinuityReport continuity_probe(const GateModel& gate,
                                  std::span<const BinarySignal> inputs,
                                  std::span<const BinarySignal> perturbed,
                                  const ProbeOptions& options) {
  const GateEvaluation a = evaluate_gate(gate, inputs, options.initial_output);
  const GateEvaluation b = evaluate_gate(gate, perturbed, options.initial_output);
  const double horizon = a.trajectory.horizon();
  if (b.trajectory.horizon() != horizon) throw DomainError("input horizons disagree");

  std::vector<double> grid;
  const std::size_t n = std::max<std::size_t>(options.grid_points, 2);
  grid.reserve(n + a.modes.switches().size() + b.modes.switches().size());
  for (std::size_t i = 0; i < n; ++i) {
    grid.push_back(horizon * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  for (const auto& sw : a.modes.switches()) grid.push_back(sw.time);
  for (const auto& sw : b.modes.switches()) grid.push_back(sw.time);

  double sup = 0.0;
  for (double t : grid) {
    const StateVector xa = a.trajectory.state(t);
    const StateVector xb = b.trajectory.state(t);
    double sq = 0.0;
    for (std::size_t i = 0; i < xa.dim; ++i) sq += (xa.x[i] - xb.x[i]) * (xa.x[i] - xb.x[i]);
    sup = std::max(sup, std::sqrt(sq));
  }
  ContinuityReport r;
  r.mode_distance = mode_distance(a.modes, b.modes);
  r.output_distance = l1_distance(a.output, b.output);
  r.sup_analog = sup;
  r.bound = continuity_bound(gate, horizon, r.mode_distance);
  return r;
}

}  // namespace dhg
