#include <algorithm>
#include <cmath>
#include <utility>

#include "dhg/errors.hpp"
#include "dhg/models.hpp"
#include "model_checks.hpp"

namespace dhg {
namespace {

constexpr InputVector kA = 1;
constexpr InputVector kB = 2;

}  // namespace

void NorAdvancedParams::validate() const {
  detail::require_positive(alpha1, "alpha1");
  detail::require_positive(alpha2, "alpha2");
  detail::require_positive(r, "R");
  detail::require_positive(r_na, "R_nA");
  detail::require_positive(r_nb, "R_nB");
  detail::require_positive(c, "C");
  detail::require_positive(vdd, "vdd");
  detail::require_threshold(threshold, vdd);
  detail::require_nonnegative(pure_delay[0], "delta_min");
  detail::require_nonnegative(pure_delay[1], "delta_min");
}

NorAdvancedParams NorAdvancedParams::swapped() const {
  NorAdvancedParams s = *this;
  std::swap(s.alpha1, s.alpha2);
  std::swap(s.r_na, s.r_nb);
  std::swap(s.pure_delay[0], s.pure_delay[1]);
  return s;
}

NorAdvancedParams NorAdvancedParams::reference() {
  NorAdvancedParams p;
  p.c = 3.6331599443276e-15;
  p.pure_delay = {16.963423585525e-12, 16.963423585525e-12};
  p.r_na = 8760.489389736;
  p.r_nb = 8658.111065573;
  p.r = 6539.995525955;
  p.alpha1 = 20.4461e-9;
  p.alpha2 = 9.3487e-9;
  p.vdd = 1.0;
  p.threshold = 0.5;
  return p;
}

NorAdvanced::NorAdvanced(NorAdvancedParams p) : p_(p) { p_.validate(); }

double NorAdvanced::pure_delay(std::size_t input) const {
  if (input > 1) throw DomainError("NOR gate has two inputs");
  return p_.pure_delay[input];
}

int NorAdvanced::mode_family(InputVector previous, InputVector current,
                             bool is_initial) const {
  switch (current & 3u) {
    case kA:
      return kPullDownA;
    case kB:
      return kPullDownB;
    case kA | kB:
      return kPullDownBoth;
    default:
      break;
  }
  if (is_initial) return kPullUpBoth;
  switch (previous & 3u) {
    case kA:
      return kPullUpAfterA;
    case kB:
      return kPullUpAfterB;
    default:
      return kPullUpBoth;
  }
}

StateVector NorAdvanced::steady_state(const Mode& mode) const {
  StateVector s;
  s.x[0] = (mode.id.inputs & 3u) == 0 ? p_.vdd : 0.0;
  return s;
}

double NorAdvanced::lipschitz_constant() const {
  return std::max(1.0 / (p_.c * p_.r_na) + 1.0 / (p_.c * p_.r_nb), 1.0 / (2.0 * p_.r * p_.c));
}

DerivedCoefficients NorAdvanced::pull_up(double t_a, double t_b) const {
  const bool a_on = std::isfinite(t_a);
  const bool b_on = std::isfinite(t_b);
  if (!a_on && !b_on) return DerivedCoefficients::make_settled(p_.r);
  if (!a_on) return DerivedCoefficients::make_one_sided(p_.alpha2, p_.r);
  if (!b_on) return DerivedCoefficients::make_one_sided(p_.alpha1, p_.r);
  if (t_a <= t_b) return DerivedCoefficients::make(p_.alpha1, p_.alpha2, p_.r, t_b - t_a);
  return DerivedCoefficients::make(p_.alpha2, p_.alpha1, p_.r, t_a - t_b);
}

Piece NorAdvanced::make_piece(const Mode& mode, const StateVector& entry, double t0) const {
  const double v0 = entry.x[0];
  switch (mode.id.inputs & 3u) {
    case kA:
      return ExpPiece{t0, v0, 0.0, 1.0 / (p_.c * p_.r_na)};
    case kB:
      return ExpPiece{t0, v0, 0.0, 1.0 / (p_.c * p_.r_nb)};
    case kA | kB:
      return ExpPiece{t0, v0, 0.0, 1.0 / (p_.c * p_.r_na) + 1.0 / (p_.c * p_.r_nb)};
    default:
      break;
  }
  // Both pMOS conduct; the later turn-on is the entry time of this mode.
  return ChargePiece{t0, v0, p_.vdd, p_.c,
                     pull_up(mode.input_edge_time[0], mode.input_edge_time[1])};
}

}  // namespace dhg
