#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "dhg/errors.hpp"
#include "dhg/numerics.hpp"
#include "support/oracles.hpp"

using Catch::Matchers::WithinRel;

namespace {

double residual(double w, double x) { return std::abs(w * std::exp(w) - x); }

}  // namespace

TEST_CASE("W0(1) is the omega constant", "[numerics][lambert]") {
  const double omega = oracle::bisect([](double w) { return w * std::exp(w) - 1.0; }, 0.5, 0.6);
  CHECK_THAT(dhg::lambert_w0(1.0), WithinRel(omega, 1e-15));
  CHECK_THAT(dhg::lambert_w0(1.0), WithinRel(0.5671432904097838, 1e-15));
}

TEST_CASE("W-1 matches a bisection oracle", "[numerics][lambert]") {
  for (double x : {-1e-3, -0.1, -0.3, -1e-30, -0.36}) {
    const double w = oracle::bisect([&](double v) { return v * std::exp(v) - x; }, -800.0, -1.0);
    CHECK_THAT(dhg::lambert_wm1(x), WithinRel(w, 1e-13));
  }
}

TEST_CASE("W0 matches a bisection oracle", "[numerics][lambert]") {
  for (double x : {-0.3, -0.01, 1e-8, 0.5, 2.0, 10.0, 1e5, 1e100}) {
    const double hi = std::max(1.0, std::log(std::max(x, 1.0)) + 1.0);
    const double w = oracle::bisect([&](double v) { return v * std::exp(v) - x; }, -1.0, hi);
    CHECK_THAT(dhg::lambert_w0(x), WithinRel(w, 1e-13));
  }
}

TEST_CASE("Lambert W branch point and domain", "[numerics][lambert]") {
  const double bp = -dhg::kInvE;
  CHECK(dhg::lambert_w0(bp) == -1.0);
  CHECK(dhg::lambert_wm1(bp) == -1.0);
  CHECK(dhg::lambert_w0(0.0) == 0.0);
  CHECK_THROWS_AS(dhg::lambert_w0(-0.5), dhg::DomainError);
  CHECK_THROWS_AS(dhg::lambert_wm1(-0.5), dhg::DomainError);
  CHECK_THROWS_AS(dhg::lambert_wm1(0.1), dhg::DomainError);
  CHECK_THROWS_AS(dhg::lambert_wm1(0.0), dhg::DomainError);
  CHECK_THROWS_AS(dhg::lambert_w0(std::nan("")), dhg::DomainError);
  // Close to the branch point both branches approach -1 from either side.
  const double x = bp + 1e-13;
  const double w0 = dhg::lambert_w0(x);
  const double wm1 = dhg::lambert_wm1(x);
  CHECK(w0 > -1.0);
  CHECK(wm1 < -1.0);
  CHECK(residual(w0, x) <= 1e-12 * std::abs(x));
  CHECK(residual(wm1, x) <= 1e-12 * std::abs(x));
}

TEST_CASE("W-1 from the logarithm of its argument", "[numerics][lambert]") {
  for (double l : {-1.0, -2.0, -50.0, -599.0, -601.0, -5000.0, -1e6}) {
    const double w = dhg::lambert_wm1_from_log(l);
    // w + log(-w) = l
    CHECK(std::abs(w + std::log(-w) - l) <= 1e-13 * std::abs(l));
    CHECK(w <= -1.0);
  }
  CHECK_THROWS_AS(dhg::lambert_wm1_from_log(-0.5), dhg::DomainError);
}

TEST_CASE("x - log1p(x) is accurate for small arguments", "[numerics]") {
  // Oracle: x - log1p(x) = integral of s/(1+s) over [0, x].
  for (double x : {1e-12, 1e-8, 1e-5, 9e-4, 1e-3, 0.5, 3.0}) {
    const double expected =
        oracle::integrate([](double s) { return s / (1.0 + s); }, 0.0, x, 1e-18 * x * x);
    CHECK_THAT(dhg::x_minus_log1p(x), WithinRel(expected, 1e-13));
  }
  CHECK_THAT(dhg::x_minus_log1p(1e10), WithinRel(1e10 - std::log(1e10 + 1.0), 1e-15));
  CHECK(dhg::x_minus_log1p(0.0) == 0.0);
}

TEST_CASE("find_root converges on smooth functions", "[numerics][root]") {
  const double r = dhg::find_root([](double x) { return std::cos(x) - x; }, dhg::Bracket(0.0, 1.0));
  CHECK(std::abs(std::cos(r) - r) < 1e-15);
  const double cube = dhg::find_root([](double x) { return x * x * x - 2.0; }, dhg::Bracket(0.0, 2.0));
  CHECK_THAT(cube, WithinRel(std::cbrt(2.0), 1e-15));
  // Exact zero at an endpoint is returned as is.
  CHECK(dhg::find_root([](double x) { return x; }, dhg::Bracket(0.0, 1.0)) == 0.0);
}

TEST_CASE("find_root honours the tolerance on steep and flat functions", "[numerics][root]") {
  const double r = dhg::find_root([](double x) { return std::tanh(1e6 * (x - 0.3)); },
                                  dhg::Bracket(0.0, 1.0));
  CHECK(std::abs(r - 0.3) < 1e-14);
  dhg::RootOptions opt;
  opt.x_tolerance = 1e-6;
  const double loose = dhg::find_root([](double x) { return x - 0.123456789; },
                                      dhg::Bracket(0.0, 1.0), opt);
  CHECK(std::abs(loose - 0.123456789) < 1e-6);
}

TEST_CASE("find_root reports failures", "[numerics][root]") {
  CHECK_THROWS_AS(dhg::find_root([](double x) { return x * x + 1.0; }, dhg::Bracket(-1.0, 1.0)),
                  dhg::NoSignChangeError);
  dhg::RootOptions opt;
  opt.max_iterations = 2;
  CHECK_THROWS_AS(dhg::find_root([](double x) { return std::exp(x) - 1.5; },
                                 dhg::Bracket(-10.0, 10.0), opt),
                  dhg::NonConvergenceError);
  CHECK_THROWS_AS(dhg::Bracket(1.0, 0.0), dhg::DomainError);
}
