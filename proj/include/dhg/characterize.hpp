#pragma once

#include <string>
#include <vector>

#include "dhg/models.hpp"

namespace dhg {

// Total gate delays (pure delay included) at the three characteristic input
// separations for each output edge.
struct CharacteristicDelays {
  double fall_neg_inf = 0.0;
  double fall_zero = 0.0;
  double fall_pos_inf = 0.0;
  double rise_neg_inf = 0.0;
  double rise_zero = 0.0;
  double rise_pos_inf = 0.0;
};

// Forward map: delays a gate with these parameters exhibits. Assumes equal
// pure delays on both inputs.
CharacteristicDelays characteristic_delays(const NorAdvancedParams& p);

// alpha such that a pull-up with alpha/(t - t_on) + R in series with another
// R reaches vdd/2 after time t from 0 V. Requires t > 2 R C ln 2.
double alpha_from_delay(double t, double r, double c);

struct CharacterizeOptions {
  double r_min = 1.0;
  double r_max = 1e9;
  std::size_t scan_points = 2000;
  double vdd = 1.0;
};

struct CharacterizationResult {
  NorAdvancedParams params;
  std::vector<double> r_roots;  // every root of the R equation that was found
  std::vector<std::string> diagnostics;
};

// Inverse map from characteristic delays to model parameters, with the
// threshold at vdd/2. Throws ValidationError for delays no parameter set
// can produce.
CharacterizationResult characterize(const CharacteristicDelays& delays, double capacitance,
                                    const CharacterizeOptions& options = {});

}  // namespace dhg
