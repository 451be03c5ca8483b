#include "dhg/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "dhg/errors.hpp"

namespace dhg {

std::size_t Netlist::add(Vertex v) {
  if (v.id.empty()) throw ValidationError("vertex id must not be empty");
  if (index_.count(v.id)) throw ValidationError("duplicate vertex id '" + v.id + "'");
  index_[v.id] = vertices_.size();
  vertices_.push_back(std::move(v));
  return vertices_.size() - 1;
}

std::size_t Netlist::add_input(const std::string& id) {
  return add({id, VertexKind::input, nullptr, std::nullopt});
}

std::size_t Netlist::add_output(const std::string& id) {
  return add({id, VertexKind::output, nullptr, std::nullopt});
}

std::size_t Netlist::add_gate(const std::string& id, std::shared_ptr<const GateModel> model,
                              std::optional<bool> initial) {
  if (!model) throw ValidationError("gate '" + id + "' has no model");
  return add({id, VertexKind::gate, std::move(model), initial});
}

void Netlist::connect(std::size_t from, std::size_t to, std::size_t input_index) {
  if (from >= vertices_.size() || to >= vertices_.size()) {
    throw ValidationError("edge refers to an unknown vertex");
  }
  edges_.push_back({from, to, input_index});
}

void Netlist::connect(const std::string& from, const std::string& to, std::size_t input_index) {
  connect(index_of(from), index_of(to), input_index);
}

std::optional<std::size_t> Netlist::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Netlist::index_of(const std::string& id) const {
  auto v = find(id);
  if (!v) throw ValidationError("unknown vertex '" + id + "'");
  return *v;
}

std::vector<std::optional<std::size_t>> Netlist::drivers(std::size_t v) const {
  const Vertex& vx = vertices_.at(v);
  std::size_t slots = 0;
  if (vx.kind == VertexKind::gate) slots = vx.model->input_count();
  if (vx.kind == VertexKind::output) slots = 1;
  std::vector<std::optional<std::size_t>> out(slots);
  for (const auto& e : edges_) {
    if (e.to == v && e.input_index < slots && !out[e.input_index]) out[e.input_index] = e.from;
  }
  return out;
}

std::vector<Edge> Netlist::fanout(std::size_t v) const {
  std::vector<Edge> out;
  for (const auto& e : edges_) {
    if (e.from == v) out.push_back(e);
  }
  return out;
}

std::vector<std::string> validate(const Netlist& net) {
  std::vector<std::string> problems;
  const auto& vs = net.vertices();
  std::vector<std::vector<int>> slot_count(vs.size());
  std::vector<int> out_degree(vs.size(), 0);
  for (std::size_t v = 0; v < vs.size(); ++v) {
    std::size_t slots = 0;
    if (vs[v].kind == VertexKind::gate) slots = vs[v].model->input_count();
    if (vs[v].kind == VertexKind::output) slots = 1;
    slot_count[v].assign(slots, 0);
  }
  for (const auto& e : net.edges()) {
    ++out_degree[e.from];
    const Vertex& to = vs[e.to];
    if (to.kind == VertexKind::input) {
      problems.push_back("input port '" + to.id + "' has an incoming edge");
      continue;
    }
    if (e.input_index >= slot_count[e.to].size()) {
      std::ostringstream msg;
      msg << "edge " << vs[e.from].id << " -> " << to.id << " uses input index "
          << e.input_index << " but the vertex has " << slot_count[e.to].size() << " input(s)";
      problems.push_back(msg.str());
      continue;
    }
    ++slot_count[e.to][e.input_index];
  }
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const Vertex& vx = vs[v];
    for (std::size_t j = 0; j < slot_count[v].size(); ++j) {
      if (slot_count[v][j] != 1) {
        std::ostringstream msg;
        msg << (vx.kind == VertexKind::output ? "output port '" : "gate '") << vx.id
            << "' input " << j << " has " << slot_count[v][j] << " incoming edges (need 1)";
        problems.push_back(msg.str());
      }
    }
    if (vx.kind == VertexKind::output && out_degree[v] != 0) {
      problems.push_back("output port '" + vx.id + "' has outgoing edges");
    }
    if (vx.kind == VertexKind::gate) {
      for (std::size_t j = 0; j < vx.model->input_count(); ++j) {
        if (!(vx.model->pure_delay(j) > 0.0)) {
          std::ostringstream msg;
          msg << "gate '" << vx.id << "' input " << j
              << " violates strict causality (pure delay must be > 0)";
          problems.push_back(msg.str());
        }
      }
    }
  }
  return problems;
}

void require_valid(const Netlist& net) {
  const auto problems = validate(net);
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "invalid netlist:";
  for (const auto& p : problems) msg << "\n  " << p;
  throw ValidationError(msg.str());
}

namespace {

const BinarySignal& stimulus_for(const Stimuli& stimuli, const std::string& id) {
  auto it = stimuli.find(id);
  if (it == stimuli.end()) throw ValidationError("no stimulus for input port '" + id + "'");
  return it->second;
}

InputVector driver_bits(const Netlist& net, std::size_t v, const std::vector<bool>& values) {
  InputVector bits = 0;
  const auto d = net.drivers(v);
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (values[*d[j]]) bits |= InputVector{1} << j;
  }
  return bits;
}

}  // namespace

std::vector<bool> initial_values(const Netlist& net, const Stimuli& stimuli) {
  const auto& vs = net.vertices();
  std::vector<bool> values(vs.size(), false);
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (vs[v].kind == VertexKind::input) values[v] = stimulus_for(stimuli, vs[v].id).initial();
    if (vs[v].kind == VertexKind::gate && vs[v].initial) values[v] = *vs[v].initial;
  }
  for (std::size_t sweep = 0; sweep <= vs.size() + 1; ++sweep) {
    bool changed = false;
    for (std::size_t v = 0; v < vs.size(); ++v) {
      if (vs[v].kind != VertexKind::gate || vs[v].initial) continue;
      const GateModel& g = *vs[v].model;
      const Mode m = g.initial_mode(driver_bits(net, v, values));
      const bool out = g.steady_state(m).output() > g.threshold();
      if (out != values[v]) {
        values[v] = out;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (vs[v].kind == VertexKind::output) values[v] = values[*net.drivers(v)[0]];
  }
  return values;
}

BinarySignal Execution::signal(std::size_t v) const {
  std::vector<Transition> tr;
  tr.reserve(records.at(v).size());
  for (const auto& r : records[v]) tr.push_back({r.time, r.value});
  return BinarySignal(initial[v], std::move(tr), horizon);
}

std::vector<int> Execution::depths(std::size_t v) const {
  std::vector<int> d;
  for (const auto& r : records.at(v)) d.push_back(r.depth);
  return d;
}

namespace {

enum class EventKind : int { arrival = 0, transition = 1 };

struct Event {
  double time;
  EventKind kind;
  std::size_t vertex;
  std::size_t input;
  bool value;
  int depth;
  double cause_time;
  std::uint64_t generation;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.kind != b.kind) return a.kind > b.kind;
    if (a.vertex != b.vertex) return a.vertex > b.vertex;
    if (a.input != b.input) return a.input > b.input;
    return a.generation > b.generation;
  }
};

struct GateRuntime {
  Mode mode;
  Piece piece;
  InputVector bits = 0;
  std::vector<int> arrived_depth;
  std::uint64_t generation = 0;
};

}  // namespace

Execution build_execution(const Netlist& net, const Stimuli& stimuli, double horizon,
                          const SimulationOptions& options) {
  require_valid(net);
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw DomainError("horizon must be finite and >= 0");
  }
  const auto& vs = net.vertices();
  const std::size_t n = vs.size();
  for (const auto& [name, sig] : stimuli) {
    auto v = net.find(name);
    if (!v || vs[*v].kind != VertexKind::input) {
      throw ValidationError("stimulus '" + name + "' does not name an input port");
    }
  }

  Execution exec;
  exec.horizon = horizon;
  exec.initial = initial_values(net, stimuli);
  exec.records.resize(n);
  for (const auto& v : vs) exec.ids.push_back(v.id);

  std::vector<std::vector<Edge>> fanout(n);
  for (const auto& e : net.edges()) fanout[e.from].push_back(e);
  std::vector<bool> level = exec.initial;

  std::priority_queue<Event, std::vector<Event>, Later> queue;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::optional<GateRuntime>> gates(n);

  for (std::size_t v = 0; v < n; ++v) {
    if (vs[v].kind == VertexKind::input) {
      for (const auto& tr : stimulus_for(stimuli, vs[v].id).transitions()) {
        if (tr.time > horizon) break;
        queue.push({tr.time, EventKind::transition, v, 0, tr.value, 0, nan, 0});
      }
    }
    if (vs[v].kind != VertexKind::gate) continue;
    const GateModel& g = *vs[v].model;
    GateRuntime rt{Mode{}, ExpPiece{0, 0, 0, 0}, driver_bits(net, v, exec.initial), {}, 0};
    rt.mode = g.initial_mode(rt.bits);
    rt.arrived_depth.assign(g.input_count(), -1);
    const StateVector x0 = g.admissible(g.initial_state(rt.mode, exec.initial[v]));
    rt.piece = g.make_piece(rt.mode, x0, 0.0);
    for (const auto& tr : piece_transitions(rt.piece, g.threshold(), level[v], horizon)) {
      queue.push({tr.time, EventKind::transition, v, 0, tr.value, 0, nan, 0});
    }
    gates[v] = std::move(rt);
  }

  std::size_t processed = 0;
  auto count_event = [&]() {
    if (++processed > options.max_events) {
      std::ostringstream msg;
      msg << "event budget of " << options.max_events << " exceeded";
      throw SimulationError(msg.str());
    }
  };

  std::vector<Event> batch;
  while (!queue.empty()) {
    const double t = queue.top().time;

    // Mode switches: all arrivals at t, grouped per gate.
    batch.clear();
    while (!queue.empty() && queue.top().time == t && queue.top().kind == EventKind::arrival) {
      batch.push_back(queue.top());
      queue.pop();
    }
    for (std::size_t i = 0; i < batch.size();) {
      const std::size_t v = batch[i].vertex;
      GateRuntime& rt = *gates[v];
      const GateModel& g = *vs[v].model;
      for (; i < batch.size() && batch[i].vertex == v; ++i) {
        const InputVector mask = InputVector{1} << batch[i].input;
        rt.bits = batch[i].value ? (rt.bits | mask) : (rt.bits & ~mask);
        rt.arrived_depth[batch[i].input] = batch[i].depth;
      }
      count_event();
      ++exec.mode_switches;
      const StateVector entry = g.admissible(piece_state(rt.piece, t));
      rt.mode = g.next_mode(rt.mode, rt.bits, t);
      rt.piece = g.make_piece(rt.mode, entry, t);
      ++rt.generation;
      const int depth = 1 + *std::max_element(rt.arrived_depth.begin(), rt.arrived_depth.end());
      for (const auto& tr : piece_transitions(rt.piece, g.threshold(), level[v], horizon)) {
        queue.push({tr.time, EventKind::transition, v, 0, tr.value, depth, t, rt.generation});
      }
    }

    // Commit every transition at t in vertex order.
    while (!queue.empty() && queue.top().time == t &&
           queue.top().kind == EventKind::transition) {
      const Event ev = queue.top();
      queue.pop();
      if (gates[ev.vertex] && ev.generation != gates[ev.vertex]->generation) continue;
      if (ev.value == level[ev.vertex]) {
        throw SimulationError("non-alternating transition at vertex '" + vs[ev.vertex].id + "'");
      }
      count_event();
      level[ev.vertex] = ev.value;
      exec.records[ev.vertex].push_back({ev.time, ev.value, ev.depth, ev.cause_time});
      for (const auto& e : fanout[ev.vertex]) {
        if (vs[e.to].kind == VertexKind::output) {
          level[e.to] = ev.value;
          exec.records[e.to].push_back({ev.time, ev.value, ev.depth, ev.cause_time});
          continue;
        }
        const double arrival = ev.time + vs[e.to].model->pure_delay(e.input_index);
        if (arrival > horizon) continue;
        queue.push({arrival, EventKind::arrival, e.to, e.input_index, ev.value, ev.depth, nan,
                    0});
      }
    }
  }

  // Hard bound: every crossing comes from the initial mode or a switch.
  for (std::size_t v = 0; v < n; ++v) {
    if (vs[v].kind != VertexKind::gate) continue;
    std::size_t inputs_seen = 0;
    for (const auto& d : net.drivers(v)) inputs_seen += exec.records[*d].size();
    const std::size_t cap = (1 + inputs_seen) * std::max<std::size_t>(
                                                    1, vs[v].model->max_crossings_per_mode()) +
                            1;
    if (exec.records[v].size() > cap) {
      throw SimulationError("transition count bound violated at '" + vs[v].id + "'");
    }
  }
  return exec;
}

std::vector<std::string> check_execution(const Netlist& net, const Stimuli& stimuli,
                                         const Execution& exec) {
  std::vector<std::string> problems;
  const auto& vs = net.vertices();
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const BinarySignal recorded = exec.signal(v);
    std::optional<BinarySignal> expected;
    switch (vs[v].kind) {
      case VertexKind::input: {
        const BinarySignal& s = stimulus_for(stimuli, vs[v].id);
        std::vector<Transition> tr;
        for (const auto& x : s.transitions()) {
          if (x.time <= exec.horizon) tr.push_back(x);
        }
        expected = BinarySignal(s.initial(), std::move(tr), exec.horizon);
        break;
      }
      case VertexKind::output:
        expected = exec.signal(*net.drivers(v)[0]);
        break;
      case VertexKind::gate: {
        std::vector<BinarySignal> inputs;
        for (const auto& d : net.drivers(v)) inputs.push_back(exec.signal(*d));
        expected = evaluate_gate_until(*vs[v].model, inputs, exec.initial[v], exec.horizon).output;
        break;
      }
    }
    if (!(*expected == recorded)) {
      problems.push_back("vertex '" + vs[v].id + "' disagrees with its re-evaluated signal");
    }
  }
  return problems;
}

}  // namespace dhg
