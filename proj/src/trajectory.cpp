#include "dhg/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dhg/errors.hpp"
#include "dhg/numerics.hpp"

namespace dhg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// exp(M tau) = ec(tau) I + es(tau) (M - s I), s = tr(M)/2.
struct LinearFlow {
  double s;
  double q2;
  double ec;
  double es;
};

LinearFlow linear_flow(const Mat2& m, double tau) {
  const double s = 0.5 * (m[0][0] + m[1][1]);
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double q2 = s * s - det;
  LinearFlow f{s, q2, 0.0, 0.0};
  if (q2 > 0.0) {
    const double q = std::sqrt(q2);
    if (q * tau < 1.0) {
      const double e = std::exp(s * tau);
      f.ec = e * std::cosh(q * tau);
      f.es = q * tau == 0.0 ? e * tau : e * std::sinh(q * tau) / q;
    } else {
      const double e1 = std::exp((s + q) * tau);
      const double e2 = std::exp((s - q) * tau);
      f.ec = 0.5 * (e1 + e2);
      f.es = 0.5 * (e1 - e2) / q;
    }
  } else if (q2 == 0.0) {
    const double e = std::exp(s * tau);
    f.ec = e;
    f.es = e * tau;
  } else {
    const double w = std::sqrt(-q2);
    const double e = std::exp(s * tau);
    f.ec = e * std::cos(w * tau);
    f.es = e * std::sin(w * tau) / w;
  }
  return f;
}

Vec2 shifted_apply(const Mat2& m, double s, const Vec2& v) {
  return {(m[0][0] - s) * v[0] + m[0][1] * v[1], m[1][0] * v[0] + (m[1][1] - s) * v[1]};
}

Vec2 apply(const Mat2& m, const Vec2& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

Vec2 linear_state(const LinearPiece& p, double t) {
  const double tau = t - p.t0;
  const Vec2 w{p.x0[0] - p.fixed[0], p.x0[1] - p.fixed[1]};
  const LinearFlow f = linear_flow(p.m, tau);
  const Vec2 y = shifted_apply(p.m, f.s, w);
  return {p.fixed[0] + f.ec * w[0] + f.es * y[0], p.fixed[1] + f.ec * w[1] + f.es * y[1]};
}

// Output derivative at tau is ec*alpha + es*beta.
struct SlopeCoefficients {
  double alpha;
  double beta;
};

SlopeCoefficients linear_slope_coefficients(const LinearPiece& p) {
  const Vec2 w{p.x0[0] - p.fixed[0], p.x0[1] - p.fixed[1]};
  const Vec2 z = apply(p.m, w);
  const double s = 0.5 * (p.m[0][0] + p.m[1][1]);
  return {z[0], shifted_apply(p.m, s, z)[0]};
}

// Positive zeros of the output derivative, in increasing order, below
// `tau_max`.
std::vector<double> linear_critical_points(const LinearPiece& p, double tau_max) {
  std::vector<double> out;
  const auto [alpha, beta] = linear_slope_coefficients(p);
  if (beta == 0.0) return out;
  const double r = -alpha / beta;
  const double s = 0.5 * (p.m[0][0] + p.m[1][1]);
  const double det = p.m[0][0] * p.m[1][1] - p.m[0][1] * p.m[1][0];
  const double q2 = s * s - det;
  if (q2 > 0.0) {
    const double q = std::sqrt(q2);
    const double arg = r * q;
    if (r > 0.0 && arg < 1.0) out.push_back(std::atanh(arg) / q);
  } else if (q2 == 0.0) {
    if (r > 0.0) out.push_back(r);
  } else {
    const double w = std::sqrt(-q2);
    double base = std::atan(r * w) / w;
    const double period = M_PI / w;
    while (base <= 0.0) base += period;
    for (double tau = base; tau < tau_max; tau += period) out.push_back(tau);
  }
  std::erase_if(out, [&](double tau) { return !(tau > 0.0 && tau < tau_max); });
  return out;
}

double crossing_tolerance(double horizon) { return 1e-15 * horizon; }

}  // namespace

DerivedCoefficients DerivedCoefficients::make(double alpha_old, double alpha_new,
                                              double r, double delta) {
  if (std::isinf(delta)) return make_one_sided(alpha_new, r);
  if (!(delta >= 0.0)) throw DomainError("turn-on separation must be >= 0");
  DerivedCoefficients k;
  k.kind = Kind::finite;
  k.two_r = 2.0 * r;
  k.delta = delta;
  k.a = (alpha_old + alpha_new) / k.two_r;
  k.b = alpha_new / k.two_r;
  k.d = k.a + delta;
  k.c_prime = alpha_new * delta / k.two_r;
  k.chi = std::max(0.0, k.d * k.d - 4.0 * k.c_prime);
  k.sqrt_chi = std::sqrt(k.chi);
  k.d_plus = k.d + k.sqrt_chi;
  k.d_minus = 4.0 * k.c_prime / k.d_plus;
  if (k.c_prime == 0.0) {
    k.A = 0.0;
  } else {
    k.A = k.c_prime * (k.d_plus - 2.0 * k.a) / (k.d_plus * k.sqrt_chi);
  }
  return k;
}

DerivedCoefficients DerivedCoefficients::make_one_sided(double alpha_new, double r) {
  DerivedCoefficients k;
  k.kind = Kind::one_sided;
  k.two_r = 2.0 * r;
  k.delta = kInf;
  k.b = alpha_new / k.two_r;
  return k;
}

DerivedCoefficients DerivedCoefficients::make_settled(double r) {
  DerivedCoefficients k;
  k.kind = Kind::settled;
  k.two_r = 2.0 * r;
  k.delta = kInf;
  return k;
}

double pull_up_integral(const DerivedCoefficients& k, double t) {
  if (t <= 0.0) return 0.0;
  switch (k.kind) {
    case DerivedCoefficients::Kind::settled:
      return t / k.two_r;
    case DerivedCoefficients::Kind::one_sided:
      if (k.b == 0.0) return t / k.two_r;
      return k.b * x_minus_log1p(t / k.b) / k.two_r;
    case DerivedCoefficients::Kind::finite:
      break;
  }
  double sum = (k.a - k.A) * x_minus_log1p(2.0 * t / k.d_plus);
  if (k.A != 0.0) sum += k.A * x_minus_log1p(2.0 * t / k.d_minus);
  return sum / k.two_r;
}

double pull_up_conductance(const DerivedCoefficients& k, double t) {
  switch (k.kind) {
    case DerivedCoefficients::Kind::settled:
      return 1.0 / k.two_r;
    case DerivedCoefficients::Kind::one_sided:
      return t / (k.two_r * (t + k.b));
    case DerivedCoefficients::Kind::finite:
      break;
  }
  // s(s + delta) / (2R (s^2 + d s + c'))
  return t * (t + k.delta) / (k.two_r * (t * t + k.d * t + k.c_prime));
}

double piece_start(const Piece& p) {
  return std::visit([](const auto& x) { return x.t0; }, p);
}

double piece_output(const Piece& p, double t) {
  return std::visit(
      Overloaded{
          [&](const ExpPiece& e) {
            return e.target + (e.v0 - e.target) * std::exp(-e.rate * (t - e.t0));
          },
          [&](const LinearPiece& l) { return linear_state(l, t)[0]; },
          [&](const ChargePiece& c) {
            const double i = pull_up_integral(c.k, t - c.t0);
            return c.vdd + (c.v0 - c.vdd) * std::exp(-i / c.capacitance);
          },
      },
      p);
}

StateVector piece_state(const Piece& p, double t) {
  if (const auto* l = std::get_if<LinearPiece>(&p)) {
    StateVector s;
    s.dim = 2;
    s.x = linear_state(*l, t);
    return s;
  }
  StateVector s;
  s.dim = 1;
  s.x[0] = piece_output(p, t);
  return s;
}

double piece_output_slope(const Piece& p, double t) {
  return std::visit(
      Overloaded{
          [&](const ExpPiece& e) {
            return -e.rate * (e.v0 - e.target) * std::exp(-e.rate * (t - e.t0));
          },
          [&](const LinearPiece& l) {
            const auto [alpha, beta] = linear_slope_coefficients(l);
            const LinearFlow f = linear_flow(l.m, t - l.t0);
            return f.ec * alpha + f.es * beta;
          },
          [&](const ChargePiece& c) {
            const double tau = t - c.t0;
            const double v = piece_output(p, t);
            return (c.vdd - v) * pull_up_conductance(c.k, tau) / c.capacitance;
          },
      },
      p);
}

bool start_level(const Piece& p, double xi) {
  const double v = piece_output(p, piece_start(p));
  if (v > xi) return true;
  if (v < xi) return false;
  return std::visit(
      Overloaded{
          [&](const ExpPiece& e) { return e.target > e.v0; },
          [&](const LinearPiece& l) {
            const auto [alpha, beta] = linear_slope_coefficients(l);
            return alpha != 0.0 ? alpha > 0.0 : beta > 0.0;
          },
          [&](const ChargePiece& c) { return c.vdd > c.v0; },
      },
      p);
}

namespace {

void push_crossing(std::vector<Transition>& out, bool& level, double t, bool value) {
  if (value == level) return;
  if (!out.empty() && !(t > out.back().time)) return;
  out.push_back({t, value});
  level = value;
}

void exp_transitions(const ExpPiece& e, double xi, bool& level, double horizon,
                     std::vector<Transition>& out) {
  const bool final_level = e.target > xi;
  if (final_level == level || e.rate <= 0.0 || e.target == xi) return;
  const double ratio = (e.v0 - e.target) / (xi - e.target);
  if (!(ratio > 1.0)) return;
  const double t = e.t0 + std::log(ratio) / e.rate;
  if (t <= horizon && t > e.t0) push_crossing(out, level, t, final_level);
}

void charge_transitions(const ChargePiece& c, double xi, bool& level, double horizon,
                        std::vector<Transition>& out) {
  if (level || !(c.v0 < xi) || !(xi < c.vdd)) return;
  const double target = std::log((c.vdd - c.v0) / (c.vdd - xi)) * c.capacitance;
  double tau;
  if (c.k.kind == DerivedCoefficients::Kind::settled) {
    tau = target * c.k.two_r;
  } else {
    auto h = [&](double s) { return pull_up_integral(c.k, s) - target; };
    const double hi = horizon - c.t0;
    if (!(hi > 0.0) || h(hi) <= 0.0) return;
    RootOptions opt;
    opt.x_tolerance = crossing_tolerance(horizon);
    tau = find_root(h, Bracket(0.0, hi), opt);
  }
  const double t = c.t0 + tau;
  if (t <= horizon && t > c.t0) push_crossing(out, level, t, true);
}

void linear_transitions(const LinearPiece& l, double xi, bool& level, double horizon,
                        std::vector<Transition>& out) {
  const double tau_max = horizon - l.t0;
  if (!(tau_max > 0.0)) return;
  std::vector<double> knots{0.0};
  for (double c : linear_critical_points(l, tau_max)) knots.push_back(c);
  knots.push_back(tau_max);
  auto f = [&](double tau) { return linear_state(l, l.t0 + tau)[0] - xi; };
  RootOptions opt;
  opt.x_tolerance = crossing_tolerance(horizon);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double fb = f(knots[i + 1]);
    const bool end_level = fb > 0.0;
    if (end_level == level) continue;
    const double tau = find_root(f, Bracket(knots[i], knots[i + 1]), opt);
    if (tau > 0.0) push_crossing(out, level, l.t0 + tau, end_level);
  }
}

}  // namespace

std::vector<Transition> piece_transitions(const Piece& p, double xi, bool incoming_level,
                                          double horizon) {
  std::vector<Transition> out;
  const double t0 = piece_start(p);
  bool level = incoming_level;
  const bool first = start_level(p, xi);
  if (first != level) {
    out.push_back({t0, first});
    level = first;
  }
  std::visit(Overloaded{
                 [&](const ExpPiece& e) { exp_transitions(e, xi, level, horizon, out); },
                 [&](const LinearPiece& l) {
                   linear_transitions(l, xi, level, horizon, out);
                 },
                 [&](const ChargePiece& c) {
                   charge_transitions(c, xi, level, horizon, out);
                 },
             },
             p);
  return out;
}

Trajectory::Trajectory(std::vector<TrajectorySegment> segments, double horizon)
    : segments_(std::move(segments)), horizon_(horizon) {
  if (segments_.empty()) throw ValidationError("trajectory needs at least one segment");
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    if (segments_[i].start < segments_[i - 1].start) {
      throw ValidationError("trajectory segments must be ordered by start time");
    }
  }
}

const TrajectorySegment& Trajectory::segment_at(double t) const {
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), t,
      [](double x, const TrajectorySegment& s) { return x < s.start; });
  if (it == segments_.begin()) return segments_.front();
  return *std::prev(it);
}

double Trajectory::output(double t) const { return piece_output(segment_at(t).piece, t); }

StateVector Trajectory::state(double t) const { return piece_state(segment_at(t).piece, t); }

BinarySignal threshold_digitize(const Trajectory& trajectory, double xi) {
  const auto& segs = trajectory.segments();
  const double horizon = trajectory.horizon();
  const bool initial = piece_output(segs.front().piece, segs.front().start) > xi;
  bool level = initial;
  std::vector<Transition> out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const double end = i + 1 < segs.size() ? segs[i + 1].start : kInf;
    for (const auto& tr : piece_transitions(segs[i].piece, xi, level, horizon)) {
      if (tr.time >= end) break;
      out.push_back(tr);
      level = tr.value;
    }
  }
  return BinarySignal(initial, std::move(out), horizon);
}

}  // namespace dhg
