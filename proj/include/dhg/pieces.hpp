#pragma once

#include <array>
#include <cstddef>
#include <variant>

namespace dhg {

// Analog gate state; component 0 is the output voltage.
struct StateVector {
  std::array<double, 2> x{};
  std::size_t dim = 1;
  double output() const { return x[0]; }
};

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

// v(t) = target + (v0 - target) exp(-rate (t - t0))
struct ExpPiece {
  double t0;
  double v0;
  double target;
  double rate;
};

// Two-dimensional affine system x' = M x + b, stored through its
// equilibrium: x(t) = fixed + exp(M (t - t0)) (x0 - fixed).
struct LinearPiece {
  double t0;
  Mat2 m;
  Vec2 fixed;
  Vec2 x0;
};

// Coefficients of the closed-form integral of 1/R_p for a pull-up path of
// two serial pMOS transistors, R_p(s) = alpha_old/(s + delta) +
// alpha_new/s + 2R with s measured from the later turn-on.
struct DerivedCoefficients {
  enum class Kind {
    finite,    // both transistors switched on at finite times
    one_sided, // the older one has been on forever (delta = inf)
    settled,   // both on forever: R_p = 2R
  };
  Kind kind = Kind::settled;
  double two_r = 0.0;
  double delta = 0.0;
  double a = 0.0;        // (alpha_old + alpha_new) / 2R
  double b = 0.0;        // alpha_new / 2R
  double d = 0.0;        // a + delta
  double c_prime = 0.0;  // alpha_new delta / 2R
  double chi = 0.0;      // d^2 - 4 c'
  double sqrt_chi = 0.0;
  double d_plus = 0.0;   // d + sqrt(chi)
  double d_minus = 0.0;  // d - sqrt(chi), formed as 4c' / d_plus
  double A = 0.0;        // residue at the pole -d_minus/2

  static DerivedCoefficients make(double alpha_old, double alpha_new, double r,
                                  double delta);
  static DerivedCoefficients make_one_sided(double alpha_new, double r);
  static DerivedCoefficients make_settled(double r);
};

// Integral of 1/R_p over [0, t] (units s/Ohm).
double pull_up_integral(const DerivedCoefficients& k, double t);

// 1/R_p(t)
double pull_up_conductance(const DerivedCoefficients& k, double t);

// v(t) = vdd + (v0 - vdd) exp(-I(t - t0) / c)
struct ChargePiece {
  double t0;
  double v0;
  double vdd;
  double capacitance;
  DerivedCoefficients k;
};

using Piece = std::variant<ExpPiece, LinearPiece, ChargePiece>;

double piece_start(const Piece& p);
double piece_output(const Piece& p, double t);
StateVector piece_state(const Piece& p, double t);
double piece_output_slope(const Piece& p, double t);

}  // namespace dhg
