#include "dhg/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dhg/errors.hpp"

namespace dhg {
namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    long line = 1;
    long column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << what << ": malformed JSON at line " << line << ", column " << column;
    throw ParseError(msg.str(), line, column);
  }
}

[[noreturn]] void schema_error(const std::string& what, const std::string& detail) {
  throw ParseError(what + ": " + detail);
}

const json& member(const json& obj, const std::string& key, const std::string& what) {
  if (!obj.is_object()) schema_error(what, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(what, "missing field '" + key + "'");
  return *it;
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) schema_error(what, "expected a number");
  return v.get<double>();
}

double number_field(const json& obj, const std::string& key, const std::string& what) {
  return number(member(obj, key, what), what + "." + key);
}

double number_or(const json& obj, const std::string& key, double fallback,
                 const std::string& what) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, what + "." + key);
}

bool bit(const json& v, const std::string& what) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) {
    const auto i = v.get<long long>();
    if (i == 0 || i == 1) return i == 1;
  }
  schema_error(what, "expected 0 or 1");
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& what) {
  if (!obj.is_object()) schema_error(what, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) schema_error(what, "unknown field '" + it.key() + "'");
  }
}

std::array<double, 2> pure_delays(const json& obj, const std::string& what) {
  const json& d = member(obj, "delta_min", what);
  if (d.is_array()) {
    if (d.size() != 2) schema_error(what, "delta_min array needs two entries");
    return {number(d[0], what + ".delta_min"), number(d[1], what + ".delta_min")};
  }
  const double v = number(d, what + ".delta_min");
  return {v, v};
}

NorAdvancedParams advanced_from(const json& obj, const std::string& what) {
  reject_unknown(obj, {"alpha1", "alpha2", "R", "R_nA", "R_nB", "C", "vdd", "threshold", "delta_min"},
                 what);
  NorAdvancedParams p;
  p.alpha1 = number_field(obj, "alpha1", what);
  p.alpha2 = number_field(obj, "alpha2", what);
  p.r = number_field(obj, "R", what);
  p.r_na = number_field(obj, "R_nA", what);
  p.r_nb = number_field(obj, "R_nB", what);
  p.c = number_field(obj, "C", what);
  p.vdd = number_or(obj, "vdd", 1.0, what);
  p.threshold = number_or(obj, "threshold", 0.5 * p.vdd, what);
  p.pure_delay = pure_delays(obj, what);
  return p;
}

std::shared_ptr<const GateModel> model_from(const std::string& kind, const json& obj,
                                            const std::string& what) {
  if (kind == "nor_advanced") return std::make_shared<NorAdvanced>(advanced_from(obj, what));
  if (kind == "nor_simple") {
    reject_unknown(obj, {"R1", "R2", "R3", "R4", "C", "C_int", "vdd", "threshold", "delta_min"},
                   what);
    NorSimpleParams p;
    p.r1 = number_field(obj, "R1", what);
    p.r2 = number_field(obj, "R2", what);
    p.r3 = number_field(obj, "R3", what);
    p.r4 = number_field(obj, "R4", what);
    p.c = number_field(obj, "C", what);
    p.c_int = number_field(obj, "C_int", what);
    p.vdd = number_or(obj, "vdd", 1.0, what);
    p.threshold = number_or(obj, "threshold", 0.5 * p.vdd, what);
    p.pure_delay = pure_delays(obj, what);
    return std::make_shared<NorSimple>(p);
  }
  if (kind == "idm") {
    reject_unknown(obj, {"tau", "delta_min", "vdd", "threshold", "inverting"}, what);
    IdmParams p;
    p.tau = number_field(obj, "tau", what);
    p.delta_min = number_field(obj, "delta_min", what);
    p.vdd = number_or(obj, "vdd", 1.0, what);
    p.threshold = number_or(obj, "threshold", 0.5 * p.vdd, what);
    if (auto it = obj.find("inverting"); it != obj.end()) p.inverting = bit(*it, what + ".inverting");
    return std::make_shared<IdmChannel>(p);
  }
  if (kind == "const") {
    reject_unknown(obj, {"value"}, what);
    return std::make_shared<ConstantGate>(bit(member(obj, "value", what), what + ".value"));
  }
  schema_error(what, "unknown gate model '" + kind + "'");
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

StimulusFile parse_stimuli(const std::string& text) {
  const std::string what = "stimuli";
  const json doc = parse_json(text, what);
  reject_unknown(doc, {"signals", "horizon"}, what);
  StimulusFile out;
  out.horizon = number_field(doc, "horizon", what);
  if (!(out.horizon >= 0.0)) throw ValidationError("stimuli: horizon must be >= 0");
  const json& sigs = member(doc, "signals", what);
  if (!sigs.is_object()) schema_error(what, "'signals' must be an object");
  for (auto it = sigs.begin(); it != sigs.end(); ++it) {
    const std::string name = what + "." + it.key();
    reject_unknown(*it, {"initial", "transitions"}, name);
    const bool initial = bit(member(*it, "initial", name), name + ".initial");
    std::vector<Transition> tr;
    const json& list = member(*it, "transitions", name);
    if (!list.is_array()) schema_error(name, "'transitions' must be an array");
    for (const auto& pair : list) {
      if (!pair.is_array() || pair.size() != 2) schema_error(name, "transition must be [t, v]");
      tr.push_back({number(pair[0], name), bit(pair[1], name)});
    }
    out.signals.emplace(it.key(), BinarySignal(initial, std::move(tr), out.horizon));
  }
  return out;
}

std::shared_ptr<const GateModel> make_model(const std::string& kind,
                                            const std::string& params_json) {
  return model_from(kind, parse_json(params_json, "params"), "params");
}

Netlist parse_netlist(const std::string& text) {
  const std::string what = "netlist";
  const json doc = parse_json(text, what);
  reject_unknown(doc, {"vertices", "edges"}, what);
  Netlist net;
  const json& vertices = member(doc, "vertices", what);
  if (!vertices.is_array()) schema_error(what, "'vertices' must be an array");
  for (const auto& v : vertices) {
    reject_unknown(v, {"id", "kind", "model", "params", "initial"}, what + ".vertex");
    const json& id = member(v, "id", what + ".vertex");
    const json& kind = member(v, "kind", what + ".vertex");
    if (!id.is_string() || !kind.is_string()) schema_error(what, "vertex id and kind must be strings");
    const std::string name = what + "." + id.get<std::string>();
    const std::string k = kind.get<std::string>();
    if (k == "input") {
      net.add_input(id.get<std::string>());
    } else if (k == "output") {
      net.add_output(id.get<std::string>());
    } else if (k == "gate") {
      const json& model = member(v, "model", name);
      if (!model.is_string()) schema_error(name, "'model' must be a string");
      const json params = v.contains("params") ? v.at("params") : json::object();
      std::optional<bool> initial;
      if (v.contains("initial")) initial = bit(v.at("initial"), name + ".initial");
      net.add_gate(id.get<std::string>(), model_from(model.get<std::string>(), params, name),
                   initial);
    } else {
      schema_error(name, "unknown vertex kind '" + k + "'");
    }
  }
  const json& edges = member(doc, "edges", what);
  if (!edges.is_array()) schema_error(what, "'edges' must be an array");
  for (const auto& e : edges) {
    reject_unknown(e, {"from", "to", "input_index"}, what + ".edge");
    const json& from = member(e, "from", what + ".edge");
    const json& to = member(e, "to", what + ".edge");
    if (!from.is_string() || !to.is_string()) schema_error(what, "edge ends must be strings");
    std::size_t index = 0;
    if (auto it = e.find("input_index"); it != e.end()) {
      if (!it->is_number_unsigned()) schema_error(what, "input_index must be a non-negative integer");
      index = it->get<std::size_t>();
    }
    net.connect(from.get<std::string>(), to.get<std::string>(), index);
  }
  return net;
}

NorAdvancedParams parse_nor_advanced_params(const std::string& text) {
  const json doc = parse_json(text, "params");
  if (doc.is_object() && doc.contains("model")) {
    reject_unknown(doc, {"model", "params"}, "params");
    if (doc.at("model") != "nor_advanced") {
      schema_error("params", "expected model 'nor_advanced'");
    }
    return advanced_from(member(doc, "params", "params"), "params");
  }
  return advanced_from(doc, "params");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string nor_advanced_params_json(const NorAdvancedParams& p) {
  std::ostringstream s;
  s << "{\n  \"model\": \"nor_advanced\",\n  \"params\": {\n";
  s << "    \"alpha1\": " << format_double(p.alpha1) << ",\n";
  s << "    \"alpha2\": " << format_double(p.alpha2) << ",\n";
  s << "    \"R\": " << format_double(p.r) << ",\n";
  s << "    \"R_nA\": " << format_double(p.r_na) << ",\n";
  s << "    \"R_nB\": " << format_double(p.r_nb) << ",\n";
  s << "    \"C\": " << format_double(p.c) << ",\n";
  s << "    \"vdd\": " << format_double(p.vdd) << ",\n";
  s << "    \"threshold\": " << format_double(p.threshold) << ",\n";
  if (p.pure_delay[0] == p.pure_delay[1]) {
    s << "    \"delta_min\": " << format_double(p.pure_delay[0]) << "\n";
  } else {
    s << "    \"delta_min\": [" << format_double(p.pure_delay[0]) << ", "
      << format_double(p.pure_delay[1]) << "]\n";
  }
  s << "  }\n}\n";
  return s.str();
}

CharacteristicDelays parse_delays(const std::string& text) {
  const std::string what = "delays";
  const json doc = parse_json(text, what);
  reject_unknown(doc, {"fall_neg_inf", "fall_zero", "fall_pos_inf", "rise_neg_inf", "rise_zero",
                       "rise_pos_inf"},
                 what);
  CharacteristicDelays d;
  d.fall_neg_inf = number_field(doc, "fall_neg_inf", what);
  d.fall_zero = number_field(doc, "fall_zero", what);
  d.fall_pos_inf = number_field(doc, "fall_pos_inf", what);
  d.rise_neg_inf = number_field(doc, "rise_neg_inf", what);
  d.rise_zero = number_field(doc, "rise_zero", what);
  d.rise_pos_inf = number_field(doc, "rise_pos_inf", what);
  return d;
}

std::string delays_json(const CharacteristicDelays& d) {
  std::ostringstream s;
  s << "{\n";
  s << "  \"fall_neg_inf\": " << format_double(d.fall_neg_inf) << ",\n";
  s << "  \"fall_zero\": " << format_double(d.fall_zero) << ",\n";
  s << "  \"fall_pos_inf\": " << format_double(d.fall_pos_inf) << ",\n";
  s << "  \"rise_neg_inf\": " << format_double(d.rise_neg_inf) << ",\n";
  s << "  \"rise_zero\": " << format_double(d.rise_zero) << ",\n";
  s << "  \"rise_pos_inf\": " << format_double(d.rise_pos_inf) << "\n";
  s << "}\n";
  return s.str();
}

}  // namespace dhg
