#include <algorithm>
#include <cmath>

#include "dhg/errors.hpp"
#include "dhg/models.hpp"
#include "model_checks.hpp"

namespace dhg {
namespace {

constexpr InputVector kA = 1;
constexpr InputVector kB = 2;

double spectral_norm(const Mat2& m) {
  // Largest singular value from the eigenvalues of M^T M.
  const double p = m[0][0] * m[0][0] + m[1][0] * m[1][0];
  const double q = m[0][0] * m[0][1] + m[1][0] * m[1][1];
  const double r = m[0][1] * m[0][1] + m[1][1] * m[1][1];
  const double mean = 0.5 * (p + r);
  const double disc = std::sqrt(0.25 * (p - r) * (p - r) + q * q);
  return std::sqrt(mean + disc);
}

}  // namespace

void NorSimpleParams::validate() const {
  detail::require_positive(r1, "R1");
  detail::require_positive(r2, "R2");
  detail::require_positive(r3, "R3");
  detail::require_positive(r4, "R4");
  detail::require_positive(c, "C");
  detail::require_positive(c_int, "C_int");
  detail::require_positive(vdd, "vdd");
  detail::require_threshold(threshold, vdd);
  detail::require_nonnegative(pure_delay[0], "delta_min");
  detail::require_nonnegative(pure_delay[1], "delta_min");
}

NorSimple::NorSimple(NorSimpleParams p) : p_(p) {
  p_.validate();
  for (InputVector v = 0; v < 4; ++v) {
    const Mat2 m = system_matrix(v);
    const Vec2 b = offset(v);
    k_ = std::max(k_, spectral_norm(m));
    for (int corner = 0; corner < 4; ++corner) {
      const Vec2 x{(corner & 1) ? p_.vdd : 0.0, (corner & 2) ? p_.vdd : 0.0};
      const double f0 = m[0][0] * x[0] + m[0][1] * x[1] + b[0];
      const double f1 = m[1][0] * x[0] + m[1][1] * x[1] + b[1];
      m_ = std::max(m_, std::hypot(f0, f1));
    }
  }
}

double NorSimple::pure_delay(std::size_t input) const {
  if (input > 1) throw DomainError("NOR gate has two inputs");
  return p_.pure_delay[input];
}

Mat2 NorSimple::system_matrix(InputVector v) const {
  const double g1 = 1.0 / p_.r1;
  const double g2 = 1.0 / p_.r2;
  const double g3 = 1.0 / p_.r3;
  const double g4 = 1.0 / p_.r4;
  const double c = p_.c;
  const double ci = p_.c_int;
  // Rows: (V_out, V_int).
  switch (v & 3u) {
    case kA | kB:
      return {{{-(g3 + g4) / c, 0.0}, {0.0, 0.0}}};
    case kA:
      return {{{-(g2 + g3) / c, g2 / c}, {g2 / ci, -g2 / ci}}};
    case kB:
      return {{{-g4 / c, 0.0}, {0.0, -g1 / ci}}};
    default:
      return {{{-g2 / c, g2 / c}, {g2 / ci, -(g1 + g2) / ci}}};
  }
}

Vec2 NorSimple::offset(InputVector v) const {
  // T1 (driven by A) connects the internal node to VDD.
  if (v & kA) return {0.0, 0.0};
  return {0.0, p_.vdd / (p_.r1 * p_.c_int)};
}

StateVector NorSimple::steady_state(const Mode& mode) const {
  StateVector s;
  s.dim = 2;
  switch (mode.id.inputs & 3u) {
    case kA | kB:
      // The internal node floats; it keeps the charge of the last pull-up.
      s.x = {0.0, p_.vdd};
      break;
    case kA:
      s.x = {0.0, 0.0};
      break;
    case kB:
      s.x = {0.0, p_.vdd};
      break;
    default:
      s.x = {p_.vdd, p_.vdd};
      break;
  }
  return s;
}

Piece NorSimple::make_piece(const Mode& mode, const StateVector& entry, double t0) const {
  const InputVector v = mode.id.inputs & 3u;
  LinearPiece piece{t0, system_matrix(v), {0.0, 0.0}, {entry.x[0], entry.x[1]}};
  const Vec2 b = offset(v);
  if (b[0] != 0.0 || b[1] != 0.0) {
    const Mat2& m = piece.m;
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    // fixed = -M^{-1} b
    piece.fixed = {-(m[1][1] * b[0] - m[0][1] * b[1]) / det,
                   -(-m[1][0] * b[0] + m[0][0] * b[1]) / det};
  }
  return piece;
}

}  // namespace dhg
