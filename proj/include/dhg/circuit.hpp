#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dhg/gate.hpp"
#include "dhg/signal.hpp"

namespace dhg {

enum class VertexKind { input, output, gate };

struct Vertex {
  std::string id;
  VertexKind kind;
  std::shared_ptr<const GateModel> model;  // gates only
  std::optional<bool> initial;             // declared initial gate output
};

struct Edge {
  std::size_t from;
  std::size_t to;
  std::size_t input_index;
};

class Netlist {
 public:
  std::size_t add_input(const std::string& id);
  std::size_t add_output(const std::string& id);
  std::size_t add_gate(const std::string& id, std::shared_ptr<const GateModel> model,
                       std::optional<bool> initial = std::nullopt);
  void connect(std::size_t from, std::size_t to, std::size_t input_index = 0);
  void connect(const std::string& from, const std::string& to, std::size_t input_index = 0);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<std::size_t> find(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;

  // Driver of each input slot of a gate (or of an output port's single
  // slot); nullopt where unconnected. Assumes a validated netlist when
  // several edges hit one slot.
  std::vector<std::optional<std::size_t>> drivers(std::size_t v) const;
  // Outgoing edges of v in insertion order.
  std::vector<Edge> fanout(std::size_t v) const;

 private:
  std::size_t add(Vertex v);
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t> index_;
};

// Structural checks plus strict causality (every pure delay > 0). Returns
// one message per violation; empty when the netlist is valid.
std::vector<std::string> validate(const Netlist& net);
void require_valid(const Netlist& net);

using Stimuli = std::map<std::string, BinarySignal>;

// Initial digitized value of every vertex. Gates take their declared value
// or the steady-state output of their initial mode, found by sweeping in
// vertex order until nothing changes.
std::vector<bool> initial_values(const Netlist& net, const Stimuli& stimuli);

struct TransitionRecord {
  double time;
  bool value;
  int depth;
  double cause_time;  // mode switch that produced it; NaN when not caused
};

struct Execution {
  double horizon = 0.0;
  std::vector<std::string> ids;
  std::vector<bool> initial;
  std::vector<std::vector<TransitionRecord>> records;
  std::size_t mode_switches = 0;

  BinarySignal signal(std::size_t v) const;
  std::vector<int> depths(std::size_t v) const;
};

struct SimulationOptions {
  std::size_t max_events = 10'000'000;
};

// Event-driven construction of the unique execution on [0, horizon].
Execution build_execution(const Netlist& net, const Stimuli& stimuli, double horizon,
                          const SimulationOptions& options = {});

// Re-derives every vertex signal from its drivers and reports mismatches.
std::vector<std::string> check_execution(const Netlist& net, const Stimuli& stimuli,
                                         const Execution& exec);

struct UnrolledCircuit {
  Netlist netlist;
  std::vector<std::size_t> original;  // source vertex of each copy
  std::vector<int> level;             // unrolling depth of the copy; -1 for inputs
  std::vector<bool> constant;         // stand-in for a cut gate
  std::vector<std::optional<int>> z;  // nullopt encodes infinity
  std::size_t sink = 0;
};

// k-unrolling of the circuit feeding output port `sink`. Gates cut at depth
// 0 become constant gates holding their initial value; copies with equal
// (vertex, level) are shared.
UnrolledCircuit unroll(const Netlist& net, std::size_t sink, int k,
                       const std::vector<bool>& initial);

struct EquivalenceReport {
  bool ok = true;
  std::size_t compared = 0;
  std::vector<std::string> mismatches;
  // Copy transitions of depth <= z that occur after the original received
  // its first input of depth >= z; the two circuits legitimately differ there.
  std::size_t beyond_cut = 0;
};

// Simulates the circuit and its k-unrolling. For every copy with value z,
// the original's transitions of depth <= z must reappear unchanged in the
// copy, and the copy must not produce anything else before the original
// first reacts to an input transition of depth >= z.
EquivalenceReport simulation_equivalence_check(const Netlist& net, std::size_t sink, int k,
                                               const Stimuli& stimuli, double horizon);

}  // namespace dhg
