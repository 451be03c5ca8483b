#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dhg/models.hpp"

namespace dhg {

// Input separation delta = t_B - t_A of the two (delayed) input edges.
// Falling-output delays are measured from the earlier input, rising-output
// delays from the later one. All MIS delays exclude the pure delay.
enum class OutputEdge { rising, falling };

struct ExtremalDelays {
  double zero;     // simultaneous inputs
  double pos_inf;  // A switched long before B
  double neg_inf;  // B switched long before A
};

// Rising-output delays for delta in {0, +inf, -inf}.
ExtremalDelays extremal_delays(const NorAdvancedParams& p);

double mis_delay_falling_output(double delta, const NorAdvancedParams& p);

// Piecewise-linear approximation pasted between the extremal delays.
double mis_delay_rising_output(double delta, const NorAdvancedParams& p);

// Threshold crossing of the closed-form pull-up trajectory; delta may be
// +-inf.
double exact_delay_rising_output(double delta, const NorAdvancedParams& p);

// Threshold crossing obtained by evaluating the gate on two step inputs.
double exact_delay_falling_output(double delta, const NorAdvancedParams& p);

double mis_delay(double delta, OutputEdge edge, const NorAdvancedParams& p);
double exact_delay(double delta, OutputEdge edge, const NorAdvancedParams& p);

// Pure delay of the reference input plus the MIS delay.
double total_gate_delay(double delta, OutputEdge edge, const NorAdvancedParams& p,
                        bool exact = false);

struct SweepRow {
  double delta;
  double asymptotic;
  double exact;
};

// `steps` equally spaced separations in [lo, hi].
std::vector<SweepRow> sweep_curve(OutputEdge edge, double lo, double hi, std::size_t steps,
                                  const NorAdvancedParams& p);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace dhg
