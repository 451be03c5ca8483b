#include "dhg/delay.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "dhg/errors.hpp"
#include "dhg/numerics.hpp"

namespace dhg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// -log of the remaining voltage fraction at the threshold.
double falling_log_ratio(const NorAdvancedParams& p) { return std::log(p.vdd / p.threshold); }
double rising_log_ratio(const NorAdvancedParams& p) {
  return std::log(p.vdd / (p.vdd - p.threshold));
}

// Crossing time of the pull-up solution started from 0 V with the given
// effective a = alpha/(2R).
double extremal(double a, const NorAdvancedParams& p) {
  const double rc2 = 2.0 * p.r * p.c;
  const double w = lambert_wm1_from_log(-1.0 - rising_log_ratio(p) * rc2 / a);
  return -a * (1.0 + w);
}

}  // namespace

ExtremalDelays extremal_delays(const NorAdvancedParams& p) {
  p.validate();
  const double two_r = 2.0 * p.r;
  return {extremal((p.alpha1 + p.alpha2) / two_r, p), extremal(p.alpha2 / two_r, p),
          extremal(p.alpha1 / two_r, p)};
}

double mis_delay_falling_output(double delta, const NorAdvancedParams& p) {
  if (std::isnan(delta)) throw DomainError("separation is NaN");
  const double k = falling_log_ratio(p);
  const double ra = p.r_na;
  const double rb = p.r_nb;
  if (delta >= 0.0) {
    if (delta < k * p.c * ra) return (k * p.c * ra * rb - delta * rb) / (ra + rb) + delta;
    return k * p.c * ra;
  }
  const double m = -delta;
  if (m < k * p.c * rb) return (k * p.c * ra * rb - m * ra) / (ra + rb) + m;
  return k * p.c * rb;
}

double mis_delay_rising_output(double delta, const NorAdvancedParams& p) {
  if (std::isnan(delta)) throw DomainError("separation is NaN");
  const ExtremalDelays d = extremal_delays(p);
  const double sum = p.alpha1 + p.alpha2;
  if (delta >= 0.0) {
    if (delta < sum * (d.zero - d.pos_inf) / p.alpha1) return d.zero - p.alpha1 / sum * delta;
    return d.pos_inf;
  }
  const double m = -delta;
  if (m < sum * (d.zero - d.neg_inf) / p.alpha2) return d.zero - p.alpha2 / sum * m;
  return d.neg_inf;
}

double exact_delay_rising_output(double delta, const NorAdvancedParams& p) {
  p.validate();
  if (std::isnan(delta)) throw DomainError("separation is NaN");
  DerivedCoefficients k;
  if (delta == kInf) {
    k = DerivedCoefficients::make_one_sided(p.alpha2, p.r);
  } else if (delta == -kInf) {
    k = DerivedCoefficients::make_one_sided(p.alpha1, p.r);
  } else if (delta >= 0.0) {
    k = DerivedCoefficients::make(p.alpha1, p.alpha2, p.r, delta);
  } else {
    k = DerivedCoefficients::make(p.alpha2, p.alpha1, p.r, -delta);
  }
  const double target = rising_log_ratio(p) * p.c;
  auto h = [&](double t) { return pull_up_integral(k, t) - target; };
  double hi = 10.0 * (extremal((p.alpha1 + p.alpha2) / (2.0 * p.r), p) + 2.0 * p.r * p.c);
  for (int i = 0; h(hi) <= 0.0; ++i) {
    if (i > 200) throw NonConvergenceError("exact delay: no bracket found");
    hi *= 2.0;
  }
  return find_root(h, Bracket(0.0, hi));
}

double exact_delay_falling_output(double delta, const NorAdvancedParams& p) {
  if (!std::isfinite(delta)) return mis_delay_falling_output(delta, p);
  NorAdvancedParams q = p;
  q.pure_delay = {0.0, 0.0};
  const NorAdvanced gate(q);
  const double t_a = delta >= 0.0 ? 0.0 : -delta;
  const double t_b = delta >= 0.0 ? delta : 0.0;
  const double horizon =
      std::abs(delta) + 40.0 * falling_log_ratio(p) * p.c * std::max(p.r_na, p.r_nb);
  const BinarySignal inputs[2] = {BinarySignal(false, {{t_a, true}}, horizon),
                                  BinarySignal(false, {{t_b, true}}, horizon)};
  const BinarySignal out = gate_response(gate, inputs, true);
  if (out.transitions().empty()) throw SimulationError("falling output never crossed");
  return out.transitions().front().time;
}

double mis_delay(double delta, OutputEdge edge, const NorAdvancedParams& p) {
  return edge == OutputEdge::falling ? mis_delay_falling_output(delta, p)
                                     : mis_delay_rising_output(delta, p);
}

double exact_delay(double delta, OutputEdge edge, const NorAdvancedParams& p) {
  return edge == OutputEdge::falling ? exact_delay_falling_output(delta, p)
                                     : exact_delay_rising_output(delta, p);
}

double total_gate_delay(double delta, OutputEdge edge, const NorAdvancedParams& p, bool exact) {
  const bool a_is_reference = (edge == OutputEdge::falling) == (delta >= 0.0);
  const double pure = p.pure_delay[a_is_reference ? 0 : 1];
  return pure + (exact ? exact_delay(delta, edge, p) : mis_delay(delta, edge, p));
}

std::vector<SweepRow> sweep_curve(OutputEdge edge, double lo, double hi, std::size_t steps,
                                  const NorAdvancedParams& p) {
  if (steps < 2 || !(lo < hi)) throw DomainError("sweep needs lo < hi and at least 2 steps");
  p.validate();
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double delta =
        i + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    rows.push_back({delta, mis_delay(delta, edge, p), exact_delay(delta, edge, p)});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "delta_s,delay_asymptotic_s,delay_exact_s\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.delta, r.asymptotic, r.exact);
    out << buf;
  }
}

}  // namespace dhg
