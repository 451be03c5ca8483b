#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "dhg/circuit.hpp"
#include "dhg/errors.hpp"
#include "dhg/models.hpp"

namespace dhg {
namespace {

class Unroller {
 public:
  Unroller(const Netlist& net, const std::vector<bool>& initial)
      : net_(net), initial_(initial) {}

  std::size_t copy(std::size_t v, int k) {
    const Vertex& vx = net_.vertices()[v];
    if (vx.kind == VertexKind::input) {
      auto it = inputs_.find(v);
      if (it != inputs_.end()) return it->second;
      const std::size_t u = out_.netlist.add_input(vx.id);
      record(u, v, -1, false, std::nullopt);
      inputs_[v] = u;
      return u;
    }
    const auto key = std::make_pair(v, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::size_t u;
    if (vx.kind == VertexKind::output) {
      const std::size_t pred = copy(*net_.drivers(v)[0], k);
      u = out_.netlist.add_output(label(vx.id, k));
      out_.netlist.connect(pred, u, 0);
      record(u, v, k, false, out_.z[pred]);
    } else if (k == 0) {
      const bool value = initial_[v];
      std::ostringstream id;
      id << "X" << (value ? 1 : 0) << "[" << vx.id << "]";
      u = out_.netlist.add_gate(id.str(), std::make_shared<ConstantGate>(value), value);
      record(u, v, 0, true, 0);
    } else {
      std::vector<std::size_t> preds;
      for (const auto& d : net_.drivers(v)) preds.push_back(copy(*d, k - 1));
      u = out_.netlist.add_gate(label(vx.id, k), vx.model, initial_[v]);
      std::optional<int> z;
      for (std::size_t j = 0; j < preds.size(); ++j) {
        out_.netlist.connect(preds[j], u, j);
        const auto& zp = out_.z[preds[j]];
        if (zp && (!z || *zp + 1 < *z)) z = *zp + 1;
      }
      record(u, v, k, false, z);
    }
    memo_[key] = u;
    return u;
  }

  UnrolledCircuit take() { return std::move(out_); }

 private:
  static std::string label(const std::string& id, int k) {
    std::ostringstream s;
    s << id << "^(" << k << ")";
    return s.str();
  }

  void record(std::size_t u, std::size_t v, int k, bool constant, std::optional<int> z) {
    out_.original.resize(u + 1);
    out_.level.resize(u + 1);
    out_.constant.resize(u + 1);
    out_.z.resize(u + 1);
    out_.original[u] = v;
    out_.level[u] = k;
    out_.constant[u] = constant;
    out_.z[u] = z;
  }

  const Netlist& net_;
  const std::vector<bool>& initial_;
  UnrolledCircuit out_;
  std::map<std::size_t, std::size_t> inputs_;
  std::map<std::pair<std::size_t, int>, std::size_t> memo_;
};

}  // namespace

UnrolledCircuit unroll(const Netlist& net, std::size_t sink, int k,
                       const std::vector<bool>& initial) {
  require_valid(net);
  if (sink >= net.vertices().size() || net.vertices()[sink].kind != VertexKind::output) {
    throw ValidationError("unrolling sink must be an output port");
  }
  if (k < 0) throw DomainError("unrolling depth must be >= 0");
  if (initial.size() != net.vertices().size()) {
    throw DomainError("initial values do not match the netlist");
  }
  Unroller u(net, initial);
  const std::size_t s = u.copy(sink, k);
  UnrolledCircuit out = u.take();
  out.sink = s;
  return out;
}

EquivalenceReport simulation_equivalence_check(const Netlist& net, std::size_t sink, int k,
                                               const Stimuli& stimuli, double horizon) {
  const std::vector<bool> initial = initial_values(net, stimuli);
  const UnrolledCircuit unrolled = unroll(net, sink, k, initial);
  Stimuli unrolled_stimuli;
  for (const auto& v : unrolled.netlist.vertices()) {
    if (v.kind == VertexKind::input) unrolled_stimuli.emplace(v.id, stimuli.at(v.id));
  }
  const Execution original = build_execution(net, stimuli, horizon);
  const Execution copy = build_execution(unrolled.netlist, unrolled_stimuli, horizon);

  EquivalenceReport report;
  const double inf = std::numeric_limits<double>::infinity();
  // Earliest mode switch of original vertex v triggered by an input of
  // depth >= z; every transition from then on has depth > z.
  auto cut_time = [&](std::size_t v, int z) {
    std::size_t gate = v;
    if (net.vertices()[v].kind == VertexKind::input) return inf;
    if (net.vertices()[v].kind == VertexKind::output) gate = *net.drivers(v)[0];
    double cut = inf;
    const auto d = net.drivers(gate);
    for (std::size_t j = 0; j < d.size(); ++j) {
      for (const auto& r : original.records[*d[j]]) {
        if (r.depth >= z) {
          cut = std::min(cut, r.time + net.vertices()[gate].model->pure_delay(j));
          break;
        }
      }
    }
    return cut;
  };
  auto same = [](const std::vector<TransitionRecord>& a, const std::vector<TransitionRecord>& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](const TransitionRecord& x, const TransitionRecord& y) {
                        return x.time == y.time && x.value == y.value && x.depth == y.depth;
                      });
  };
  for (std::size_t u = 0; u < unrolled.netlist.vertices().size(); ++u) {
    if (unrolled.constant[u]) continue;
    const std::size_t v = unrolled.original[u];
    const auto& z = unrolled.z[u];
    const double cut = z ? cut_time(v, *z) : inf;
    std::vector<TransitionRecord> shallow;
    std::vector<TransitionRecord> before_cut;
    bool consistent = true;
    for (const auto& r : original.records[v]) {
      const bool low = !z || r.depth <= *z;
      if (low) shallow.push_back(r);
      consistent = consistent && low == (r.time < cut);
    }
    for (const auto& r : copy.records[u]) {
      if (r.time < cut) {
        before_cut.push_back(r);
      } else if (r.depth <= *z) {
        ++report.beyond_cut;
      }
    }
    ++report.compared;
    if (original.initial[v] != copy.initial[u] || !consistent || !same(shallow, before_cut)) {
      report.ok = false;
      report.mismatches.push_back("copy '" + unrolled.netlist.vertices()[u].id +
                                  "' differs from '" + net.vertices()[v].id + "'");
    }
  }
  return report;
}

}  // namespace dhg
