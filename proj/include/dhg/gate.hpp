#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "dhg/pieces.hpp"
#include "dhg/signal.hpp"
#include "dhg/trajectory.hpp"

namespace dhg {

// Input vectors are bit masks: bit j holds the (delayed) value of input j.
using InputVector = std::uint32_t;

// A digitized hybrid gate: pure delays per input, a threshold, a mode per
// input vector and a closed-form trajectory per mode.
class GateModel {
 public:
  virtual ~GateModel() = default;

  virtual std::string kind() const = 0;
  virtual std::size_t input_count() const = 0;
  virtual std::size_t state_dim() const = 0;
  virtual double vdd() const = 0;
  virtual double threshold() const = 0;
  virtual double pure_delay(std::size_t input) const = 0;

  // Family label distinguishing right-hand sides; the default is one ODE per
  // input vector.
  virtual int mode_family(InputVector previous, InputVector current,
                          bool is_initial) const;

  // Equilibrium of the mode's ODE (or the canonical rest state).
  virtual StateVector steady_state(const Mode& mode) const = 0;

  // Closed-form solution of the mode's ODE from `entry` at time t0.
  virtual Piece make_piece(const Mode& mode, const StateVector& entry,
                           double t0) const = 0;

  // K: Lipschitz constant of the right-hand sides over the admissible box.
  virtual double lipschitz_constant() const = 0;
  // M: bound on |F| over the admissible box.
  virtual double rhs_bound() const = 0;
  // Largest number of threshold crossings a single mode can produce.
  virtual std::size_t max_crossings_per_mode() const = 0;

  Mode initial_mode(InputVector inputs) const;
  Mode next_mode(const Mode& previous, InputVector inputs, double t) const;

  // Steady state of the initial mode if it digitizes to the requested
  // output, otherwise that state with the output moved to the matching rail.
  StateVector initial_state(const Mode& mode, std::optional<bool> output) const;

  // Clamp into [0, vdd]^n; throws SimulationError when the state lies
  // farther outside than the tolerance.
  StateVector admissible(const StateVector& s) const;
};

InputVector input_vector(std::span<const BinarySignal> inputs, double t);
InputVector initial_input_vector(std::span<const BinarySignal> inputs);

// Delayed inputs merged into the mode signal; simultaneous delayed
// transitions produce a single switch.
ModeSwitchSignal build_mode_switch_signal(const GateModel& gate,
                                          std::span<const BinarySignal> inputs);

// Paste per-mode solutions: each switch restarts from the state reached.
Trajectory matching_output(const GateModel& gate, const ModeSwitchSignal& modes,
                           const StateVector& x0);

struct GateEvaluation {
  ModeSwitchSignal modes;
  Trajectory trajectory;
  BinarySignal output;
};

GateEvaluation evaluate_gate(const GateModel& gate, std::span<const BinarySignal> inputs,
                             std::optional<bool> initial_output = std::nullopt);

// Explicit horizon; required for gates without inputs.
GateEvaluation evaluate_gate_until(const GateModel& gate,
                                   std::span<const BinarySignal> inputs,
                                   std::optional<bool> initial_output, double horizon);

BinarySignal gate_response(const GateModel& gate, std::span<const BinarySignal> inputs,
                           std::optional<bool> initial_output = std::nullopt);

struct ContinuityReport {
  double mode_distance;   // d_T of the mode-switch signals
  double output_distance; // l1 distance of the digitized outputs
  double sup_analog;      // sampled sup-norm of the trajectory difference
  double bound;           // 2 M e^{T K} mode_distance
};

struct ProbeOptions {
  std::size_t grid_points = 10000;
  std::optional<bool> initial_output;
};

ContinuityReport continuity_probe(const GateModel& gate,
                                  std::span<const BinarySignal> inputs,
                                  std::span<const BinarySignal> perturbed,
                                  const ProbeOptions& options = {});

double continuity_bound(const GateModel& gate, double horizon, double mode_distance);

}  // namespace dhg
