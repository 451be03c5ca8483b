#pragma once

#include <array>
#include <string>

#include "dhg/gate.hpp"

namespace dhg {

// Single-input exponential channel: v' = -v/tau (falling) or
// (vdd - v)/tau (rising).
struct IdmParams {
  double tau = 0.0;
  double delta_min = 0.0;
  double vdd = 1.0;
  double threshold = 0.5;
  bool inverting = false;
  void validate() const;
};

class IdmChannel final : public GateModel {
 public:
  explicit IdmChannel(IdmParams p);
  const IdmParams& params() const { return p_; }

  std::string kind() const override { return "idm"; }
  std::size_t input_count() const override { return 1; }
  std::size_t state_dim() const override { return 1; }
  double vdd() const override { return p_.vdd; }
  double threshold() const override { return p_.threshold; }
  double pure_delay(std::size_t input) const override;
  StateVector steady_state(const Mode& mode) const override;
  Piece make_piece(const Mode& mode, const StateVector& entry, double t0) const override;
  double lipschitz_constant() const override { return 1.0 / p_.tau; }
  double rhs_bound() const override { return p_.vdd / p_.tau; }
  std::size_t max_crossings_per_mode() const override { return 1; }

 private:
  bool rising(const Mode& mode) const;
  IdmParams p_;
};

// Two-input NOR with state (V_out, V_int): pMOS T1 (input A) from VDD to the
// internal node, pMOS T2 (input B) from there to the output, nMOS T3 (A) and
// T4 (B) from the output to ground, each transistor an ideal switch with
// resistance R1..R4.
struct NorSimpleParams {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;
  double c = 0.0;      // output load
  double c_int = 0.0;  // internal node
  double vdd = 1.0;
  double threshold = 0.5;
  std::array<double, 2> pure_delay{0.0, 0.0};
  void validate() const;
};

class NorSimple final : public GateModel {
 public:
  explicit NorSimple(NorSimpleParams p);
  const NorSimpleParams& params() const { return p_; }

  std::string kind() const override { return "nor_simple"; }
  std::size_t input_count() const override { return 2; }
  std::size_t state_dim() const override { return 2; }
  double vdd() const override { return p_.vdd; }
  double threshold() const override { return p_.threshold; }
  double pure_delay(std::size_t input) const override;
  StateVector steady_state(const Mode& mode) const override;
  Piece make_piece(const Mode& mode, const StateVector& entry, double t0) const override;
  double lipschitz_constant() const override { return k_; }
  double rhs_bound() const override { return m_; }
  std::size_t max_crossings_per_mode() const override { return 2; }

  // x' = system_matrix(v) x + offset(v) for input vector v.
  Mat2 system_matrix(InputVector v) const;
  Vec2 offset(InputVector v) const;

 private:
  NorSimpleParams p_;
  double k_ = 0.0;
  double m_ = 0.0;
};

// Two-input NOR with output-only state and time-varying pMOS resistance
// R(t) = alpha/(t - t_on) + R once switched on.
struct NorAdvancedParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double r = 0.0;
  double r_na = 0.0;
  double r_nb = 0.0;
  double c = 0.0;
  double vdd = 1.0;
  double threshold = 0.5;
  std::array<double, 2> pure_delay{0.0, 0.0};

  void validate() const;
  // Exchange the roles of inputs A and B.
  NorAdvancedParams swapped() const;
  // Parameters fitted to a 15 nm CMOS NOR gate.
  static NorAdvancedParams reference();
};

class NorAdvanced final : public GateModel {
 public:
  // Right-hand-side families. The (0,0) ones are told apart by the vector
  // the gate came from.
  enum Family : int {
    kPullDownA = 1,     // (1,0)
    kPullDownB = 2,     // (0,1)
    kPullUpAfterA = 3,  // (1,0) -> (0,0): A switched on last
    kPullUpAfterB = 4,  // (0,1) -> (0,0): B switched on last
    kPullUpBoth = 5,    // (1,1) -> (0,0), or (0,0) from the start
    kPullDownBoth = 6,  // (1,1)
  };

  explicit NorAdvanced(NorAdvancedParams p);
  const NorAdvancedParams& params() const { return p_; }

  std::string kind() const override { return "nor_advanced"; }
  std::size_t input_count() const override { return 2; }
  std::size_t state_dim() const override { return 1; }
  double vdd() const override { return p_.vdd; }
  double threshold() const override { return p_.threshold; }
  double pure_delay(std::size_t input) const override;
  int mode_family(InputVector previous, InputVector current, bool is_initial) const override;
  StateVector steady_state(const Mode& mode) const override;
  Piece make_piece(const Mode& mode, const StateVector& entry, double t0) const override;
  double lipschitz_constant() const override;
  double rhs_bound() const override { return p_.vdd * lipschitz_constant(); }
  std::size_t max_crossings_per_mode() const override { return 1; }

  // Pull-up coefficients for pMOS turn-on times t_a, t_b (-inf: always on).
  DerivedCoefficients pull_up(double t_a, double t_b) const;

 private:
  NorAdvancedParams p_;
};

// Gate without inputs holding a constant output.
class ConstantGate final : public GateModel {
 public:
  explicit ConstantGate(bool value) : value_(value) {}
  bool value() const { return value_; }

  std::string kind() const override { return "const"; }
  std::size_t input_count() const override { return 0; }
  std::size_t state_dim() const override { return 1; }
  double vdd() const override { return 1.0; }
  double threshold() const override { return 0.5; }
  double pure_delay(std::size_t input) const override;
  StateVector steady_state(const Mode& mode) const override;
  Piece make_piece(const Mode& mode, const StateVector& entry, double t0) const override;
  double lipschitz_constant() const override { return 0.0; }
  double rhs_bound() const override { return 0.0; }
  std::size_t max_crossings_per_mode() const override { return 0; }

 private:
  bool value_;
};

}  // namespace dhg
