#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "dhg/delay.hpp"
#include "dhg/errors.hpp"
#include "dhg/numerics.hpp"
#include "support/oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using dhg::OutputEdge;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

dhg::NorAdvancedParams reference() { return dhg::NorAdvancedParams::reference(); }

// Falling output from the rail: A's nMOS alone for |delta|, then both,
// solved for V = 1/2 directly.
double falling_by_pasting(double delta, const dhg::NorAdvancedParams& p) {
  const double first = delta >= 0.0 ? p.r_na : p.r_nb;
  const double m = std::abs(delta);
  const double target = std::log(2.0) * p.c;
  if (m >= target * first) return target * first;
  const double g = 1.0 / p.r_na + 1.0 / p.r_nb;
  return m + (target - m / first) / g;
}

double a_of(const dhg::NorAdvancedParams& p) { return (p.alpha1 + p.alpha2) / (2.0 * p.r); }

}  // namespace

TEST_CASE("extremal delays match quadrature and bisection", "[delay]") {
  const auto p = reference();
  const auto d = dhg::extremal_delays(p);
  CHECK_THAT(d.zero, WithinRel(oracle::rising_delay_by_quadrature(p, p.alpha1, p.alpha2, 0.0), 1e-10));
  CHECK_THAT(d.pos_inf, WithinRel(oracle::rising_delay_by_quadrature(p, 0.0, p.alpha2, kInf), 1e-10));
  CHECK_THAT(d.neg_inf, WithinRel(oracle::rising_delay_by_quadrature(p, 0.0, p.alpha1, kInf), 1e-10));

  // Closed-form pull-up at delta = 0 from 0 V: t - a log(1 + t/a) = 2RC ln 2.
  const double a = a_of(p);
  const double rc2 = 2.0 * p.r * p.c;
  const double root = oracle::bisect(
      [&](double t) { return t - a * std::log1p(t / a) - rc2 * std::log(2.0); }, 0.0, 1e-9);
  CHECK_THAT(d.zero, WithinRel(root, 1e-12));

  // pinned from the two independent routes above
  CHECK_THAT(d.zero, WithinRel(3.9569998398762568e-11, 1e-12));
  CHECK_THAT(d.pos_inf, WithinRel(3.5749999013338797e-11, 1e-12));
  CHECK_THAT(d.neg_inf, WithinRel(3.7989998953441657e-11, 1e-12));
  CHECK(d.zero > std::max(d.pos_inf, d.neg_inf));
}

TEST_CASE("extremal delays: symmetry and time scaling", "[delay]") {
  auto p = reference();
  p.alpha2 = p.alpha1;
  const auto sym = dhg::extremal_delays(p);
  CHECK(sym.pos_inf == sym.neg_inf);

  const auto base = dhg::extremal_delays(reference());
  auto q = reference();
  const double k = 3.7;
  q.alpha1 *= k;
  q.alpha2 *= k;
  q.c *= k;
  const auto scaled = dhg::extremal_delays(q);
  CHECK_THAT(scaled.zero, WithinRel(k * base.zero, 1e-13));
  CHECK_THAT(scaled.pos_inf, WithinRel(k * base.pos_inf, 1e-13));
  CHECK_THAT(scaled.neg_inf, WithinRel(k * base.neg_inf, 1e-13));
}

TEST_CASE("falling-output MIS delay examples", "[delay]") {
  auto p = reference();
  const double sat_a = std::log(2.0) * p.c * p.r_na;
  CHECK(dhg::mis_delay_falling_output(sat_a, p) == sat_a);
  CHECK(dhg::mis_delay_falling_output(10 * sat_a, p) == sat_a);
  CHECK(dhg::mis_delay_falling_output(kInf, p) == sat_a);
  CHECK(dhg::mis_delay_falling_output(-kInf, p) == std::log(2.0) * p.c * p.r_nb);

  auto eq = p;
  eq.r_nb = eq.r_na;
  CHECK_THAT(dhg::mis_delay_falling_output(0.0, eq), WithinRel(std::log(2.0) * p.c * p.r_na / 2.0, 1e-15));

  for (double d : {-40e-12, -5e-12, 0.0, 5e-12, 12e-12, 40e-12}) {
    CHECK_THAT(dhg::mis_delay_falling_output(d, p), WithinRel(falling_by_pasting(d, p), 1e-13));
    CHECK_THAT(dhg::exact_delay_falling_output(d, p), WithinRel(falling_by_pasting(d, p), 1e-12));
  }
}

TEST_CASE("rising-output MIS delay examples", "[delay]") {
  const auto p = reference();
  const auto d = dhg::extremal_delays(p);
  CHECK(dhg::mis_delay_rising_output(0.0, p) == d.zero);
  const double knee = (p.alpha1 + p.alpha2) * (d.zero - d.pos_inf) / p.alpha1;
  CHECK(dhg::mis_delay_rising_output(knee, p) == d.pos_inf);
  CHECK(dhg::mis_delay_rising_output(2 * knee, p) == d.pos_inf);
  const double below = std::nextafter(knee, 0.0);
  CHECK_THAT(dhg::mis_delay_rising_output(below, p), WithinAbs(d.pos_inf, 1e-24));
  const double knee_neg = (p.alpha1 + p.alpha2) * (d.zero - d.neg_inf) / p.alpha2;
  CHECK_THAT(dhg::mis_delay_rising_output(-std::nextafter(knee_neg, 0.0), p),
             WithinAbs(d.neg_inf, 1e-24));
  CHECK(dhg::mis_delay_rising_output(-kInf, p) == d.neg_inf);
}

TEST_CASE("exact rising delay agrees with the extremal values", "[delay]") {
  const auto p = reference();
  const auto d = dhg::extremal_delays(p);
  CHECK_THAT(dhg::exact_delay_rising_output(0.0, p), WithinRel(d.zero, 1e-10));
  CHECK_THAT(dhg::exact_delay_rising_output(kInf, p), WithinRel(d.pos_inf, 1e-12));
  CHECK_THAT(dhg::exact_delay_rising_output(-kInf, p), WithinRel(d.neg_inf, 1e-12));
  const double a = a_of(p);
  CHECK_THAT(dhg::exact_delay_rising_output(1e6 * a, p), WithinRel(d.pos_inf, 1e-6));
  CHECK_THAT(dhg::exact_delay_rising_output(-1e6 * a, p), WithinRel(d.neg_inf, 1e-6));
  for (double delta : {1e-14, 3e-13, 5e-12, 4e-11}) {
    CHECK_THAT(dhg::exact_delay_rising_output(delta, p),
               WithinRel(oracle::rising_delay_by_quadrature(p, p.alpha1, p.alpha2, delta), 1e-9));
  }
}

TEST_CASE("asymptotic rising delay error shrinks quadratically near zero", "[delay][property]") {
  const auto p = reference();
  const double a = a_of(p);
  for (double sign : {1.0, -1.0}) {
    double previous = 0.0;
    for (int k = 0; k <= 6; ++k) {
      const double delta = sign * a / 10.0 / std::ldexp(1.0, k);
      const double exact = dhg::exact_delay_rising_output(delta, p);
      const double err = std::abs(dhg::mis_delay_rising_output(delta, p) - exact);
      if (k == 0) {
        CHECK(err / exact <= 1e-2);
      } else {
        INFO("delta = " << delta << " err = " << err << " previous = " << previous);
        CHECK(err <= 0.6 * previous);
      }
      previous = err;
    }
    const double at_hundredth = sign * a / 100.0;
    const double exact = dhg::exact_delay_rising_output(at_hundredth, p);
    CHECK(std::abs(dhg::mis_delay_rising_output(at_hundredth, p) - exact) / exact <= 1e-2);
  }
}

TEST_CASE("MIS delays are monotone in |delta|", "[delay][property]") {
  const auto p = reference();
  const auto rows_fall = dhg::sweep_curve(OutputEdge::falling, -60e-12, 60e-12, 401, p);
  const auto rows_rise = dhg::sweep_curve(OutputEdge::rising, -60e-12, 60e-12, 401, p);
  for (const auto* rows : {&rows_fall, &rows_rise}) {
    for (std::size_t i = 1; i < rows->size(); ++i) {
      const auto& prev = (*rows)[i - 1];
      const auto& cur = (*rows)[i];
      const bool moving_out = cur.delta > 0.0 && prev.delta >= 0.0;
      const bool moving_in = cur.delta <= 0.0;
      const bool falling = rows == &rows_fall;
      for (auto pick : {&dhg::SweepRow::asymptotic, &dhg::SweepRow::exact}) {
        const double a = prev.*pick;
        const double b = cur.*pick;
        if (moving_out) CHECK((falling ? b >= a : b <= a));
        if (moving_in) CHECK((falling ? b <= a : b >= a));
      }
    }
  }
  CHECK_THAT(rows_fall.front().asymptotic, WithinRel(std::log(2.0) * p.c * p.r_nb, 1e-15));
  CHECK_THAT(rows_fall.back().asymptotic, WithinRel(std::log(2.0) * p.c * p.r_na, 1e-15));
}

TEST_CASE("sweep_curve plumbing", "[delay]") {
  auto p = reference();
  const auto two = dhg::sweep_curve(OutputEdge::rising, -1e-12, 1e-12, 2, p);
  REQUIRE(two.size() == 2);
  CHECK(two[0].delta == -1e-12);
  CHECK(two[1].delta == 1e-12);
  CHECK_THROWS_AS(dhg::sweep_curve(OutputEdge::rising, -1e-12, 1e-12, 1, p), dhg::DomainError);

  auto sym = p;
  sym.alpha2 = sym.alpha1;
  sym.r_nb = sym.r_na;
  for (auto edge : {OutputEdge::rising, OutputEdge::falling}) {
    const auto rows = dhg::sweep_curve(edge, -30e-12, 30e-12, 61, sym);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& mirror = rows[rows.size() - 1 - i];
      CHECK_THAT(rows[i].asymptotic, WithinRel(mirror.asymptotic, 1e-12));
      CHECK_THAT(rows[i].exact, WithinRel(mirror.exact, 1e-9));
    }
  }

  std::ostringstream csv;
  dhg::write_sweep_csv(csv, two);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "delta_s,delay_asymptotic_s,delay_exact_s");
  std::string row;
  std::getline(lines, row);
  CHECK(row.rfind("-9.9999999999999998e-13,", 0) == 0);
}

TEST_CASE("total gate delay adds the pure delay", "[delay]") {
  auto p = reference();
  CHECK(dhg::total_gate_delay(kInf, OutputEdge::falling, p) ==
        p.pure_delay[0] + std::log(2.0) * p.c * p.r_na);
  auto zero = p;
  zero.pure_delay = {0.0, 0.0};
  for (double d : {-7e-12, 0.0, 7e-12}) {
    CHECK(dhg::total_gate_delay(d, OutputEdge::rising, zero) == dhg::mis_delay_rising_output(d, zero));
    CHECK(dhg::total_gate_delay(d, OutputEdge::falling, zero) == dhg::mis_delay_falling_output(d, zero));
  }
}
