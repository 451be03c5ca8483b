#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dhg::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kValidationError = 3,
  kRuntimeError = 4,
};

struct SimulateArgs {
  std::string netlist;
  std::string stimuli;
  std::optional<double> horizon;
  std::string out = "-";
  std::optional<std::string> vcd;
  std::size_t max_events = 10'000'000;
};

struct SweepArgs {
  std::string params;
  std::string edge = "rising";
  double from = -60e-12;
  double to = 60e-12;
  std::size_t steps = 401;
  std::string out = "-";
};

struct CharacterizeArgs {
  std::string delays;
  double capacitance = 0.0;
  std::string out = "-";
};

struct ContinuityArgs {
  std::string netlist;
  std::string stimuli;
  std::string signal;
  std::string kind = "shift";  // shift one transition, or a pulse of width eps
  std::size_t transition = 0;
  double pulse_start = 0.0;
  std::vector<double> eps{1e-11, 1e-12, 1e-13, 1e-14};
  std::optional<double> horizon;
  std::size_t grid_points = 10000;
  std::string out = "-";
};

// Each command reports errors on `err` and returns an exit code.
int cmd_simulate(const SimulateArgs& args, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& err);
int cmd_characterize(const CharacterizeArgs& args, std::ostream& err);
int cmd_continuity(const ContinuityArgs& args, std::ostream& err);

// Argument parsing and dispatch.
int run(int argc, const char* const* argv, std::ostream& err);

}  // namespace dhg::cli
