#pragma once

// Netlists shared by the circuit tests and the acceptance run.

#include <memory>
#include <string>
#include <vector>

#include "dhg/circuit.hpp"
#include "dhg/models.hpp"

namespace fixture {

inline std::shared_ptr<const dhg::NorAdvanced> nor() {
  return std::make_shared<dhg::NorAdvanced>(dhg::NorAdvancedParams::reference());
}

// Input I feeds an exp-channel A and NOR B; B loops back onto itself and
// feeds NOR C together with A; C drives output O.
inline dhg::Netlist feedback_example() {
  dhg::Netlist net;
  net.add_input("I");
  net.add_gate("A", std::make_shared<dhg::IdmChannel>(dhg::IdmParams{8e-12, 11e-12, 1.0, 0.5, false}));
  net.add_gate("B", nor());
  net.add_gate("C", nor());
  net.add_output("O");
  net.connect("I", "A", 0);
  net.connect("I", "B", 0);
  net.connect("B", "B", 1);
  net.connect("A", "C", 0);
  net.connect("B", "C", 1);
  net.connect("C", "O", 0);
  return net;
}

// Three NORs used as inverters in a loop; input Z holds their second inputs.
inline dhg::Netlist ring_oscillator() {
  dhg::Netlist net;
  net.add_input("Z");
  net.add_gate("G1", nor(), false);
  net.add_gate("G2", nor(), true);
  net.add_gate("G3", nor(), false);
  net.add_output("O");
  net.connect("G3", "G1", 0);
  net.connect("G1", "G2", 0);
  net.connect("G2", "G3", 0);
  for (const char* g : {"G1", "G2", "G3"}) net.connect("Z", g, 1);
  net.connect("G3", "O", 0);
  return net;
}

// I -> G1 -> ... -> Gn -> O, each gate a NOR with its second input on Z.
inline dhg::Netlist inverter_chain(int n) {
  dhg::Netlist net;
  net.add_input("I");
  net.add_input("Z");
  std::string prev = "I";
  for (int i = 1; i <= n; ++i) {
    const std::string id = "G" + std::to_string(i);
    net.add_gate(id, nor());
    net.connect(prev, id, 0);
    net.connect("Z", id, 1);
    prev = id;
  }
  net.add_output("O");
  net.connect(prev, "O", 0);
  return net;
}

}  // namespace fixture
