#pragma once

#include <functional>

namespace dhg {

// 1/e split into a double and its rounding residual.
inline constexpr double kInvE = 0.36787944117144233;
inline constexpr double kInvELow = -1.2428753672788363e-17;

// Principal branch, x >= -1/e. Throws DomainError below the branch point.
double lambert_w0(double x);

// Lower branch, -1/e <= x < 0. Throws DomainError outside.
double lambert_wm1(double x);

// W_{-1}(-exp(log_neg_x)) without forming the (possibly underflowing)
// argument. Requires log_neg_x <= -1.
double lambert_wm1_from_log(double log_neg_x);

// x - log(1 + x), accurate for small x.
double x_minus_log1p(double x);

struct Bracket {
  double lo;
  double hi;
  Bracket(double lo_, double hi_);
};

struct RootOptions {
  double x_tolerance = 0.0;  // 0 selects a few ulps of the root
  int max_iterations = 200;
};

// Bracketing root finder (Brent: bisection, secant, inverse quadratic).
// Throws NoSignChangeError if f(lo), f(hi) share a sign and
// NonConvergenceError if the iteration budget runs out.
double find_root(const std::function<double(double)>& f, Bracket bracket,
                 RootOptions options = {});

}  // namespace dhg
