#include "dhg/errors.hpp"
#include "dhg/models.hpp"
#include "model_checks.hpp"

namespace dhg {

void IdmParams::validate() const {
  detail::require_positive(tau, "tau");
  detail::require_nonnegative(delta_min, "delta_min");
  detail::require_positive(vdd, "vdd");
  detail::require_threshold(threshold, vdd);
}

IdmChannel::IdmChannel(IdmParams p) : p_(p) { p_.validate(); }

double IdmChannel::pure_delay(std::size_t input) const {
  if (input != 0) throw DomainError("exp-channel has a single input");
  return p_.delta_min;
}

bool IdmChannel::rising(const Mode& mode) const {
  return ((mode.id.inputs & 1u) != 0) != p_.inverting;
}

StateVector IdmChannel::steady_state(const Mode& mode) const {
  StateVector s;
  s.x[0] = rising(mode) ? p_.vdd : 0.0;
  return s;
}

Piece IdmChannel::make_piece(const Mode& mode, const StateVector& entry, double t0) const {
  return ExpPiece{t0, entry.x[0], rising(mode) ? p_.vdd : 0.0, 1.0 / p_.tau};
}

double ConstantGate::pure_delay(std::size_t) const {
  throw DomainError("constant gate has no inputs");
}

StateVector ConstantGate::steady_state(const Mode&) const {
  StateVector s;
  s.x[0] = value_ ? 1.0 : 0.0;
  return s;
}

Piece ConstantGate::make_piece(const Mode&, const StateVector&, double t0) const {
  const double v = value_ ? 1.0 : 0.0;
  return ExpPiece{t0, v, v, 0.0};
}

}  // namespace dhg
