#include "dhg/characterize.hpp"

#include <cmath>
#include <sstream>

#include "dhg/delay.hpp"
#include "dhg/errors.hpp"
#include "dhg/numerics.hpp"

namespace dhg {
namespace {

const double kLn2 = std::log(2.0);

}  // namespace

CharacteristicDelays characteristic_delays(const NorAdvancedParams& p) {
  p.validate();
  const double pure = p.pure_delay[0];
  const double inf = std::numeric_limits<double>::infinity();
  const ExtremalDelays rise = extremal_delays(p);
  CharacteristicDelays d;
  d.fall_neg_inf = pure + mis_delay_falling_output(-inf, p);
  d.fall_zero = pure + mis_delay_falling_output(0.0, p);
  d.fall_pos_inf = pure + mis_delay_falling_output(inf, p);
  d.rise_neg_inf = pure + rise.neg_inf;
  d.rise_zero = pure + rise.zero;
  d.rise_pos_inf = pure + rise.pos_inf;
  return d;
}

double alpha_from_delay(double t, double r, double c) {
  const double settle = 2.0 * r * c * kLn2;
  if (!(t > settle) || !(r > 0.0) || !(c > 0.0)) {
    throw DomainError("alpha_from_delay: requires t > 2 R C ln 2 and R, C > 0");
  }
  const double u = settle / t;
  const double w = lambert_wm1((u - 1.0) * std::exp(u - 1.0));
  return -2.0 * r * (t - settle) / (w + 1.0 - u);
}

CharacterizationResult characterize(const CharacteristicDelays& d, double capacitance,
                                    const CharacterizeOptions& options) {
  if (!(capacitance > 0.0) || !std::isfinite(capacitance)) {
    throw ValidationError("capacitance must be finite and > 0");
  }
  const double spread = (d.fall_pos_inf - d.fall_zero) * (d.fall_neg_inf - d.fall_zero);
  if (!(spread >= 0.0)) {
    throw ValidationError("falling-output delays admit no pure delay (negative radicand)");
  }
  const double delta_min = d.fall_zero - std::sqrt(spread);
  if (!(delta_min < d.fall_zero)) {
    throw ValidationError("pure delay would not be smaller than the simultaneous falling delay");
  }
  if (!(delta_min > 0.0)) throw ValidationError("pure delay comes out non-positive");

  CharacterizationResult result;
  NorAdvancedParams& p = result.params;
  p.c = capacitance;
  p.vdd = options.vdd;
  p.threshold = 0.5 * options.vdd;
  p.pure_delay = {delta_min, delta_min};
  p.r_nb = (d.fall_neg_inf - delta_min) / (capacitance * kLn2);
  p.r_na = (d.fall_pos_inf - delta_min) / (capacitance * kLn2);

  const double t0 = d.rise_zero - delta_min;
  const double tp = d.rise_pos_inf - delta_min;
  const double tn = d.rise_neg_inf - delta_min;
  if (!(t0 > 0.0 && tp > 0.0 && tn > 0.0)) {
    throw ValidationError("rising-output delays must exceed the pure delay");
  }
  // alpha_from_delay needs t > 2 R C ln 2 for every delay involved.
  const double r_domain = std::min({t0, tp, tn}) / (2.0 * capacitance * kLn2);
  const double r_hi = std::min(options.r_max, r_domain * (1.0 - 1e-9));
  if (!(r_hi > options.r_min)) throw ValidationError("empty search interval for R");

  auto g = [&](double r) {
    return alpha_from_delay(t0, r, capacitance) - alpha_from_delay(tp, r, capacitance) -
           alpha_from_delay(tn, r, capacitance);
  };
  const std::size_t n = std::max<std::size_t>(options.scan_points, 2);
  const double log_lo = std::log(options.r_min);
  const double log_hi = std::log(r_hi);
  double r_prev = options.r_min;
  double g_prev = g(r_prev);
  for (std::size_t i = 1; i < n; ++i) {
    const double r = i + 1 == n ? r_hi
                                : std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                                        static_cast<double>(n - 1));
    const double gr = g(r);
    if (gr == 0.0) {
      result.r_roots.push_back(r);
    } else if (g_prev != 0.0 && (gr > 0.0) != (g_prev > 0.0)) {
      RootOptions opt;
      opt.x_tolerance = 1e-15 * r;
      result.r_roots.push_back(find_root(g, Bracket(r_prev, r), opt));
    }
    r_prev = r;
    g_prev = gr;
  }
  if (result.r_roots.empty()) {
    throw ValidationError("no R in the admissible range reproduces the rising-output delays");
  }
  if (result.r_roots.size() > 1) {
    std::ostringstream msg;
    msg << "R equation has " << result.r_roots.size()
        << " roots in the scanned range; using the smallest";
    result.diagnostics.push_back(msg.str());
  }
  p.r = result.r_roots.front();
  p.alpha1 = alpha_from_delay(tn, p.r, capacitance);
  p.alpha2 = alpha_from_delay(tp, p.r, capacitance);
  p.validate();
  return result;
}

}  // namespace dhg
