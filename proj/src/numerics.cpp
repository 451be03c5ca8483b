#include "dhg/numerics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dhg/errors.hpp"

namespace dhg {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Distance x - (-1/e), computed with the split constant.
double branch_offset(double x) { return (x + kInvE) + kInvELow; }

// Expansion of W around the branch point in p = +-sqrt(2(1 + e x)).
double branch_series(double p) {
  return -1.0 +
         p * (1.0 +
              p * (-1.0 / 3.0 +
                   p * (11.0 / 72.0 +
                        p * (-43.0 / 540.0 +
                             p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))));
}

double halley(double x, double w) {
  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4.0 * kEps * std::abs(w)) break;
  }
  return w;
}

void check_argument(double x, const char* name) {
  if (std::isnan(x)) throw DomainError(std::string(name) + ": NaN argument");
}

}  // namespace

double lambert_w0(double x) {
  check_argument(x, "lambert_w0");
  if (std::isinf(x)) {
    if (x > 0) return x;
    throw DomainError("lambert_w0: argument below -1/e");
  }
  const double q = branch_offset(x);
  if (q < 0.0) {
    if (q >= -4.0 * kEps * kInvE) return -1.0;
    throw DomainError("lambert_w0: argument below -1/e");
  }
  if (x == 0.0) return 0.0;
  const double p = std::sqrt(2.0 * std::exp(1.0) * q);
  if (q < 1e-6) return branch_series(p);
  if (std::abs(x) < 1e-300) return x;
  double w;
  if (x < -0.25) {
    w = branch_series(p);
  } else if (x < 3.0) {
    const double l = std::log1p(x);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley(x, w);
}

double lambert_wm1(double x) {
  check_argument(x, "lambert_wm1");
  if (x >= 0.0) throw DomainError("lambert_wm1: argument must be negative");
  const double q = branch_offset(x);
  if (q < 0.0) {
    if (q >= -4.0 * kEps * kInvE) return -1.0;
    throw DomainError("lambert_wm1: argument below -1/e");
  }
  const double p = -std::sqrt(2.0 * std::exp(1.0) * q);
  if (q < 1e-6) return branch_series(p);
  double w;
  if (q < 0.1) {
    w = branch_series(p);
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley(x, w);
}

double lambert_wm1_from_log(double log_neg_x) {
  if (std::isnan(log_neg_x) || log_neg_x > -1.0) {
    throw DomainError("lambert_wm1_from_log: requires log(-x) <= -1");
  }
  if (log_neg_x > -600.0) return lambert_wm1(-std::exp(log_neg_x));
  // Solve w + log(-w) = L by Newton; far from the branch point this is
  // well conditioned.
  double w = log_neg_x - std::log(-log_neg_x);
  for (int i = 0; i < 64; ++i) {
    const double h = w + std::log(-w) - log_neg_x;
    const double step = h / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 4.0 * kEps * std::abs(w)) break;
  }
  return w;
}

double x_minus_log1p(double x) {
  if (std::abs(x) < 1e-3) {
    // x^2/2 - x^3/3 + x^4/4 - ...
    double term = x * x;
    double sum = 0.0;
    for (int k = 2; k < 12; ++k) {
      sum += ((k % 2 == 0) ? 1.0 : -1.0) * term / k;
      term *= x;
    }
    return sum;
  }
  if (std::isinf(x) && x > 0) return x;
  return x - std::log1p(x);
}

Bracket::Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    std::ostringstream msg;
    msg << "invalid bracket [" << lo_ << ", " << hi_ << "]";
    throw DomainError(msg.str());
  }
}

double find_root(const std::function<double(double)>& f, Bracket bracket,
                 RootOptions options) {
  double a = bracket.lo;
  double b = bracket.hi;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::isnan(fa) || std::isnan(fb)) {
    throw NoSignChangeError("find_root: function is NaN at bracket end");
  }
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg << "find_root: no sign change on [" << a << ", " << b
        << "] (f = " << fa << ", " << fb << ")";
    throw NoSignChangeError(msg.str());
  }
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (int it = 0; it < options.max_iterations; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * options.x_tolerance +
                        std::numeric_limits<double>::denorm_min();
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = f(b);
    if (std::isnan(fb)) throw NonConvergenceError("find_root: NaN iterate");
  }
  throw NonConvergenceError("find_root: iteration budget exhausted");
}

}  // namespace dhg
