#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "dhg/delay.hpp"
#include "dhg/errors.hpp"
#include "dhg/models.hpp"
#include "support/oracles.hpp"
#include "support/trajectory_cases.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kNever = -std::numeric_limits<double>::infinity();

dhg::StateVector state1(double v) {
  dhg::StateVector s;
  s.x[0] = v;
  return s;
}

dhg::StateVector state2(double out, double internal) {
  dhg::StateVector s;
  s.dim = 2;
  s.x = {out, internal};
  return s;
}

}  // namespace

TEST_CASE("exp-channel examples", "[models][idm]") {
  const double tau = 3e-12;
  dhg::IdmChannel ch({tau, 1e-12, 1.0, 0.5, false});
  const auto down = dhg::piece_state(ch.make_piece(ch.initial_mode(0u), state1(1.0), 0.0), 2e-12);
  CHECK_THAT(down.x[0], WithinRel(std::exp(-2.0 / 3.0), 1e-14));
  const auto up = ch.make_piece(ch.initial_mode(1u), state1(1.0), 0.0);
  CHECK(dhg::piece_output(up, 7e-12) == 1.0);

  dhg::IdmChannel inv({tau, 1e-12, 1.0, 0.5, true});
  CHECK(inv.steady_state(inv.initial_mode(1u)).x[0] == 0.0);
  CHECK_THROWS_AS(dhg::IdmChannel({0.0, 1e-12, 1.0, 0.5, false}), dhg::ValidationError);
  CHECK_THROWS_AS(dhg::IdmChannel({1e-12, 1e-12, 1.0, 1.0, false}), dhg::ValidationError);
}

TEST_CASE("simple NOR decoupled modes", "[models][nor_simple]") {
  const auto p = oracle::simple_nor_params();
  dhg::NorSimple nor(p);
  const double t = 15e-12;

  // (1,1): internal node isolated, output discharged through R3 || R4
  const auto both = nor.make_piece(nor.initial_mode(3u), state2(0.8, 0.6), 0.0);
  const auto s11 = dhg::piece_state(both, t);
  CHECK_THAT(s11.x[1], WithinAbs(0.6, 1e-15));
  CHECK_THAT(s11.x[0], WithinRel(0.8 * std::exp(-(1.0 / p.r3 + 1.0 / p.r4) * t / p.c), 1e-13));

  // (0,1): internal node charges through R1, output discharges through R4
  const auto b_only = nor.make_piece(nor.initial_mode(2u), state2(0.8, 0.2), 0.0);
  const auto s01 = dhg::piece_state(b_only, t);
  CHECK_THAT(s01.x[1], WithinRel(1.0 - 0.8 * std::exp(-t / (p.c_int * p.r1)), 1e-13));
  CHECK_THAT(s01.x[0], WithinRel(0.8 * std::exp(-t / (p.c * p.r4)), 1e-13));
}

TEST_CASE("a mode entered at its fixed point stays there", "[models]") {
  dhg::NorSimple simple(oracle::simple_nor_params());
  for (unsigned v = 0; v < 4; ++v) {
    const auto mode = simple.initial_mode(v);
    const auto fixed = simple.steady_state(mode);
    const auto piece = simple.make_piece(mode, fixed, 0.0);
    for (double t : {1e-12, 1e-10, 1e-8}) {
      const auto s = dhg::piece_state(piece, t);
      CHECK_THAT(s.x[0], WithinAbs(fixed.x[0], 1e-14));
      CHECK_THAT(s.x[1], WithinAbs(fixed.x[1], 1e-14));
    }
  }
  dhg::NorAdvanced adv(dhg::NorAdvancedParams::reference());
  for (unsigned v = 0; v < 4; ++v) {
    const auto mode = adv.initial_mode(v);
    const auto piece = adv.make_piece(mode, adv.steady_state(mode), 0.0);
    CHECK(dhg::piece_output(piece, 1e-10) == adv.steady_state(mode).x[0]);
  }
}

TEST_CASE("simple NOR equilibria solve the KCL equations", "[models][nor_simple]") {
  const auto p = oracle::simple_nor_params();
  dhg::NorSimple nor(p);
  for (unsigned v = 0; v < 4; ++v) {
    const auto x = nor.steady_state(nor.initial_mode(v));
    const auto f = oracle::simple_nor_rhs(p, v, x.x);
    CHECK(std::abs(f[0]) <= 1e-9 * nor.rhs_bound());
    CHECK(std::abs(f[1]) <= 1e-9 * nor.rhs_bound());
  }
}

TEST_CASE("advanced NOR pull-down from the rail", "[models][nor_advanced]") {
  const auto p = dhg::NorAdvancedParams::reference();
  dhg::NorAdvanced nor(p);
  const auto piece = nor.make_piece(nor.initial_mode(1u), state1(p.vdd), 0.0);
  for (double t : {1e-12, 1e-11, 5e-11}) {
    CHECK_THAT(dhg::piece_output(piece, t), WithinRel(p.vdd * std::exp(-t / (p.c * p.r_na)), 1e-14));
  }
}

TEST_CASE("simultaneous pull-up has the collapsed closed form", "[models][nor_advanced]") {
  const auto p = dhg::NorAdvancedParams::reference();
  dhg::NorAdvanced nor(p);
  dhg::Mode mode = nor.initial_mode(0u);
  mode.input_edge_time = {0.0, 0.0};
  const auto piece = nor.make_piece(mode, state1(0.0), 0.0);
  const double two_rc = 2.0 * p.r * p.c;
  const double a = (p.alpha1 + p.alpha2) / (2.0 * p.r);
  for (double t : {1e-13, 1e-12, 1e-11, 1e-10}) {
    const double expected = -p.vdd * std::expm1(-t / two_rc + a / two_rc * std::log1p(t / a));
    CHECK_THAT(dhg::piece_output(piece, t), WithinRel(expected, 1e-12));
  }
}

TEST_CASE("closed forms satisfy their ODEs", "[models][property]") {
  for (const auto& c : oracle::trajectory_cases()) {
    INFO(c.name);
    CHECK(oracle::max_ode_residual(c) <= 1e-8);
  }
}

TEST_CASE("closed forms agree with adaptive integration", "[models][property]") {
  for (const auto& c : oracle::trajectory_cases()) {
    INFO(c.name);
    CHECK(oracle::max_integrator_deviation(c) <= 1e-6);
  }
}

TEST_CASE("trajectories move monotonically toward the rails", "[models][property]") {
  const auto p = dhg::NorAdvancedParams::reference();
  dhg::NorAdvanced nor(p);
  for (double d : {0.0, 1e-12, 3e-11}) {
    dhg::Mode mode = nor.initial_mode(0u);
    mode.input_edge_time = {-d, 0.0};
    const auto up = nor.make_piece(mode, state1(0.1), 0.0);
    double last = -1.0;
    for (int i = 0; i <= 2000; ++i) {
      const double v = dhg::piece_output(up, 3e-10 * i / 2000);
      REQUIRE(v >= last);
      REQUIRE(v <= p.vdd);
      last = v;
    }
  }
  for (unsigned v = 1; v < 4; ++v) {
    const auto down = nor.make_piece(nor.initial_mode(v), state1(0.9), 0.0);
    double last = 2.0;
    for (int i = 0; i <= 2000; ++i) {
      const double x = dhg::piece_output(down, 3e-10 * i / 2000);
      REQUIRE(x <= last);
      REQUIRE(x >= 0.0);
      last = x;
    }
  }
}

TEST_CASE("derived coefficients: root identities and nonnegative discriminant",
          "[models][property]") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> lg(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const double alpha_old = 1e-8 * std::pow(10.0, lg(rng));
    const double alpha_new = 1e-8 * std::pow(10.0, lg(rng));
    const double r = 5e3 * std::pow(10.0, lg(rng));
    const double delta = 1e-12 * std::pow(10.0, 2.0 * lg(rng));
    const auto k = dhg::DerivedCoefficients::make(alpha_old, alpha_new, r, delta);
    REQUIRE(k.chi >= 0.0);
    CHECK_THAT(k.a, WithinRel((alpha_old + alpha_new) / (2.0 * r), 1e-15));
    CHECK_THAT(k.d, WithinRel(k.a + delta, 1e-15));
    CHECK_THAT(k.c_prime, WithinRel(alpha_new * delta / (2.0 * r), 1e-15));
    const double s1 = -0.5 * k.d_plus;
    const double s2 = -0.5 * k.d_minus;
    CHECK_THAT(s1 * s2, WithinRel(k.c_prime, 1e-12));
    CHECK_THAT(s1 + s2, WithinRel(-k.d, 1e-12));
  }
}

TEST_CASE("pull-up integral matches quadrature of the conductance", "[models]") {
  const auto p = dhg::NorAdvancedParams::reference();
  for (double delta : {1e-14, 1e-12, 4e-11}) {
    const auto k = dhg::DerivedCoefficients::make(p.alpha1, p.alpha2, p.r, delta);
    CHECK(dhg::pull_up_integral(k, 0.0) == 0.0);
    auto g = [&](double s) {
      return s <= 0.0 ? 0.0 : 1.0 / (2.0 * p.r + p.alpha2 / s + p.alpha1 / (s + delta));
    };
    for (double t : {1e-13, 5e-12, 1e-10}) {
      const double ref = oracle::integrate(g, 0.0, t, 1e-30);
      CHECK_THAT(dhg::pull_up_integral(k, t), WithinRel(ref, 1e-10));
      CHECK_THAT(dhg::pull_up_conductance(k, t), WithinRel(g(t), 1e-13));
    }
  }
}

TEST_CASE("Lipschitz and slope bounds dominate sampled values", "[models][property]") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  const auto p = dhg::NorAdvancedParams::reference();
  dhg::NorAdvanced adv(p);
  const double k_adv = adv.lipschitz_constant();
  // dF/dV is the negated total conductance over C in every mode
  double worst = 0.0;
  for (unsigned v = 1; v < 4; ++v) {
    double g = 0.0;
    if (v & 1u) g += 1.0 / p.r_na;
    if (v & 2u) g += 1.0 / p.r_nb;
    worst = std::max(worst, g / p.c);
  }
  for (int i = 0; i < 10000; ++i) {
    const double t = 1e-9 * u(rng);
    const double delta = 1e-10 * u(rng);
    const double dv = 1e-6;
    const double v = u(rng) * (1.0 - dv);
    const double slope =
        (oracle::pull_up_rhs(p, p.alpha1, p.alpha2, delta, t, v + dv) -
         oracle::pull_up_rhs(p, p.alpha1, p.alpha2, delta, t, v)) / dv;
    worst = std::max(worst, std::abs(slope));
    CHECK(std::abs(oracle::pull_up_rhs(p, p.alpha1, p.alpha2, delta, t, v)) <= adv.rhs_bound());
  }
  CHECK(worst <= k_adv * (1.0 + 1e-12));
  CHECK(worst >= 0.99 * k_adv);

  const auto sp = oracle::simple_nor_params();
  dhg::NorSimple simple(sp);
  for (int i = 0; i < 20000; ++i) {
    const unsigned v = static_cast<unsigned>(i % 4);
    const std::array<double, 2> x{u(rng), u(rng)};
    const std::array<double, 2> y{u(rng), u(rng)};
    const auto fx = oracle::simple_nor_rhs(sp, v, x);
    const auto fy = oracle::simple_nor_rhs(sp, v, y);
    const double num = std::hypot(fx[0] - fy[0], fx[1] - fy[1]);
    const double den = std::hypot(x[0] - y[0], x[1] - y[1]);
    CHECK(num <= simple.lipschitz_constant() * den * (1.0 + 1e-12));
    CHECK(std::hypot(fx[0], fx[1]) <= simple.rhs_bound() * (1.0 + 1e-12));
  }
}

TEST_CASE("symmetry swap", "[models][nor_advanced]") {
  const auto p = dhg::NorAdvancedParams::reference();
  const auto s = p.swapped();
  CHECK(s.alpha1 == p.alpha2);
  CHECK(s.r_na == p.r_nb);
  const auto twice = s.swapped();
  CHECK(twice.alpha1 == p.alpha1);
  CHECK(twice.alpha2 == p.alpha2);
  CHECK(twice.r_na == p.r_na);
  CHECK(twice.r_nb == p.r_nb);

  auto sym = p;
  sym.alpha2 = sym.alpha1;
  sym.r_nb = sym.r_na;
  CHECK(sym.swapped().alpha1 == sym.alpha1);
  CHECK(sym.swapped().r_nb == sym.r_nb);

  for (double d : {1e-13, 4e-12, 3e-11, 2e-10}) {
    CHECK_THAT(dhg::mis_delay_rising_output(-d, p),
               WithinRel(dhg::mis_delay_rising_output(d, s), 1e-14));
    CHECK_THAT(dhg::exact_delay_rising_output(-d, p),
               WithinRel(dhg::exact_delay_rising_output(d, s), 1e-12));
  }
}

TEST_CASE("advanced NOR parameter validation", "[models][nor_advanced]") {
  auto p = dhg::NorAdvancedParams::reference();
  p.alpha1 = -1.0;
  CHECK_THROWS_AS(dhg::NorAdvanced(p), dhg::ValidationError);
  p = dhg::NorAdvancedParams::reference();
  p.threshold = 0.0;
  CHECK_THROWS_AS(dhg::NorAdvanced(p), dhg::ValidationError);
  p = dhg::NorAdvancedParams::reference();
  CHECK(dhg::NorAdvanced(p).pull_up(kNever, kNever).kind ==
        dhg::DerivedCoefficients::Kind::settled);
}
