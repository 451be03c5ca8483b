#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "dhg/characterize.hpp"
#include "dhg/circuit.hpp"
#include "dhg/models.hpp"

namespace dhg {

// Reads a whole file; throws ParseError if it cannot be opened.
std::string read_text_file(const std::string& path);

// {"horizon": T, "signals": {"A": {"initial": 0, "transitions": [[t, v], ...]}}}
struct StimulusFile {
  Stimuli signals;
  double horizon = 0.0;
};
StimulusFile parse_stimuli(const std::string& text);

// Gate model from a kind name ("idm", "nor_simple", "nor_advanced", "const")
// and its parameter object (JSON text).
std::shared_ptr<const GateModel> make_model(const std::string& kind,
                                            const std::string& params_json);

// {"vertices": [...], "edges": [{"from", "to", "input_index"}]}
Netlist parse_netlist(const std::string& text);

// {"model": "nor_advanced", "params": {...}} or the bare params object.
NorAdvancedParams parse_nor_advanced_params(const std::string& text);
std::string nor_advanced_params_json(const NorAdvancedParams& p);

CharacteristicDelays parse_delays(const std::string& text);
std::string delays_json(const CharacteristicDelays& d);

// time_s,vertex,value,causal_depth sorted by time then vertex order.
void write_trace_csv(std::ostream& out, const Execution& exec);
// Value change dump at 1 fs resolution.
void write_vcd(std::ostream& out, const Execution& exec);

// 17 significant digits.
std::string format_double(double v);

}  // namespace dhg
