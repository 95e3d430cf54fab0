#include "geodesic.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace ltorus {
namespace {

template <std::size_t N>
Geodesic::Sample to_sample(const OdeSample<N>& s, double tau_offset) {
  return {s.tau + tau_offset, s.y[0], s.y[1], s.y[2], s.dy[0], s.dy[1], s.dy[2]};
}

}  // namespace

PhaseState Geodesic::state_at(double tau) const {
  const auto& ss = samples;
  if (tau <= ss.front().tau) return {ss.front().t, ss.front().x, ss.front().psi, ss.front().tau};
  if (tau >= ss.back().tau) return {ss.back().t, ss.back().x, ss.back().psi, ss.back().tau};
  auto it = std::lower_bound(ss.begin(), ss.end(), tau,
                             [](const Sample& s, double v) { return s.tau < v; });
  const Sample& b = *it;
  const Sample& a = *(it - 1);
  const double h = b.tau - a.tau;
  const double s = (tau - a.tau) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  PhaseState out;
  out.t = h00 * a.t + h10 * h * a.dt + h01 * b.t + h11 * h * b.dt;
  out.x = h00 * a.x + h10 * h * a.dx + h01 * b.x + h11 * h * b.dx;
  out.psi = h00 * a.psi + h10 * h * a.dpsi + h01 * b.psi + h11 * h * b.dpsi;
  out.tau = tau;
  return out;
}

double Geodesic::x_at_time(double t) const {
  const auto& ss = samples;
  if (t <= ss.front().t) return ss.front().x;
  if (t >= ss.back().t) return ss.back().x;
  auto it = std::lower_bound(ss.begin(), ss.end(), t,
                             [](const Sample& s, double v) { return s.t < v; });
  const Sample& b = *it;
  const Sample& a = *(it - 1);
  // invert t(tau) on the step by secant (t is strictly monotone), then x(tau)
  double lo = a.tau, hi = b.tau;
  const double h = b.tau - a.tau;
  auto t_of = [&](double tau) {
    const double s = (tau - a.tau) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * a.t + (s3 - 2 * s2 + s) * h * a.dt +
           (-2 * s3 + 3 * s2) * b.t + (s3 - s2) * h * b.dt;
  };
  double tau = 0.5 * (lo + hi);
  double glo = t_of(lo) - t, ghi = t_of(hi) - t;
  for (int i = 0; i < 80; ++i) {
    tau = (i % 2 == 0 && std::abs(ghi - glo) > 0) ? hi - ghi * (hi - lo) / (ghi - glo)
                                                  : 0.5 * (lo + hi);
    if (!(tau > lo && tau < hi)) tau = 0.5 * (lo + hi);
    const double g = t_of(tau) - t;
    if (std::abs(g) < 1e-13 * (1.0 + std::abs(t))) break;
    if (g < 0)
      lo = tau, glo = g;
    else
      hi = tau, ghi = g;
    if (hi - lo < 1e-15 * (std::abs(hi) + 1.0)) break;
  }
  return state_at(tau).x;
}

double clairaut_constant(const Profile& f, const PhaseState& s) {
  return f.eval(s.x).f * std::cosh(s.psi);
}

Geodesic flow(const Profile& f, const PhaseState& s0, const StopCondition& stop,
              const IntegratorOptions& opt) {
  using Vec = std::array<double, 3>;
  auto rhs = [&f](double, const Vec& y, Vec& dy) {
    const auto e = f.eval(y[1]);
    const double ch = std::cosh(y[2]);
    dy[0] = ch / e.f;
    dy[1] = std::sinh(y[2]);
    dy[2] = -(e.df / e.f) * ch;
  };

  OdeOptions oopt;
  oopt.abs_tol = opt.abs_tol;
  oopt.rel_tol = opt.rel_tol;

  std::function<double(const Vec&)> step_cap;
  const double w = f.min_feature_width();
  if (std::isfinite(w)) {
    step_cap = [w](const Vec& y) {
      return w / (4.0 * (2.0 * std::abs(std::sinh(y[2])) + 0.05));
    };
  }

  const Vec y0 = {s0.t, s0.x, s0.psi};
  double tau_end = 0.0;
  std::function<double(double, const Vec&)> event;
  switch (stop.kind) {
    case StopCondition::Kind::TauAtLeast:
      tau_end = stop.value - s0.tau;
      if (tau_end < 0) throw InvalidArgument("flow: tau stop earlier than initial tau");
      break;
    case StopCondition::Kind::TimeAtLeast:
      tau_end = stop.tau_budget;
      event = [v = stop.value](double, const Vec& y) { return y[0] - v; };
      break;
    case StopCondition::Kind::SpaceAtLeast:
      tau_end = stop.tau_budget;
      event = [v = stop.value](double, const Vec& y) { return y[1] - v; };
      break;
    case StopCondition::Kind::SpaceAtMost:
      tau_end = stop.tau_budget;
      event = [v = stop.value](double, const Vec& y) { return v - y[1]; };
      break;
  }

  auto res = rk45_integrate<3>(rhs, 0.0, y0, tau_end, oopt, event, step_cap);

  Geodesic path;
  path.samples.reserve(res.samples.size());
  for (const auto& s : res.samples) path.samples.push_back(to_sample(s, s0.tau));
  path.clairaut = clairaut_constant(f, s0);
  double drift = 0.0;
  for (const auto& s : path.samples) {
    const double c = f.eval(s.x).f * std::cosh(s.psi);
    drift = std::max(drift, std::abs(c - path.clairaut) / path.clairaut);
  }
  path.drift = drift;

  if (event && !res.event_hit) {
    throw FlowUnreachable("flow: stop not reached within tau budget", std::move(path));
  }
  return path;
}

std::vector<double> jacobi_zeros(const Profile& f, const PhaseState& s0, double T,
                                 const IntegratorOptions& opt) {
  if (!(T > 0)) throw InvalidArgument("jacobi_zeros: T must be positive");
  using Vec = std::array<double, 5>;
  // y = (t, x, psi, j, j'); the curvature term along the path is f''/f.
  auto rhs = [&f](double, const Vec& y, Vec& dy) {
    const auto e = f.eval(y[1]);
    const double ch = std::cosh(y[2]);
    dy[0] = ch / e.f;
    dy[1] = std::sinh(y[2]);
    dy[2] = -(e.df / e.f) * ch;
    dy[3] = y[4];
    dy[4] = -(e.ddf / e.f) * y[3];
  };
  OdeOptions oopt;
  oopt.abs_tol = opt.abs_tol;
  oopt.rel_tol = opt.rel_tol;
  std::function<double(const Vec&)> step_cap;
  const double w = f.min_feature_width();
  if (std::isfinite(w)) {
    step_cap = [w](const Vec& y) {
      return w / (4.0 * (2.0 * std::abs(std::sinh(y[2])) + 0.05));
    };
  }
  const Vec y0 = {s0.t, s0.x, s0.psi, 0.0, 1.0};
  auto res = rk45_integrate<5>(rhs, 0.0, y0, T, oopt, nullptr, step_cap);

  std::vector<double> zeros;
  for (std::size_t i = 1; i < res.samples.size(); ++i) {
    const auto& a = res.samples[i - 1];
    const auto& b = res.samples[i];
    if (a.tau == 0.0) continue;  // j carries a seeded zero at tau = 0
    const bool change = (a.y[3] > 0.0 && b.y[3] <= 0.0) || (a.y[3] < 0.0 && b.y[3] >= 0.0);
    if (!change) continue;
    double lo = a.tau, hi = b.tau;
    double glo = a.y[3], ghi = b.y[3];
    for (int it = 0; it < 100 && hi - lo > 1e-10; ++it) {
      double cand = (it % 2 == 0 && std::abs(ghi - glo) > 0)
                        ? hi - ghi * (hi - lo) / (ghi - glo)
                        : 0.5 * (lo + hi);
      if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
      const double g = hermite(a, b, cand)[3];
      if ((g > 0) == (glo > 0))
        lo = cand, glo = g;
      else
        hi = cand, ghi = g;
    }
    zeros.push_back(0.5 * (lo + hi));
  }
  return zeros;
}

NullPath null_flow(const Profile& f, Point p, NullPath::Branch branch, NullStop stop,
                   const IntegratorOptions& opt) {
  using Vec = std::array<double, 1>;
  const double sign = branch == NullPath::Branch::Plus ? 1.0 : -1.0;
  auto rhs = [&f, sign](double, const Vec& y, Vec& dy) { dy[0] = sign * f.eval(y[0]).f; };

  OdeOptions oopt;
  oopt.abs_tol = opt.abs_tol;
  oopt.rel_tol = opt.rel_tol;
  oopt.event_tol = 1e-14;
  if (std::isfinite(f.min_feature_width()))
    oopt.max_step = f.min_feature_width() / (4.0 * f.f_max());

  double t_end;
  std::function<double(double, const Vec&)> event;
  if (stop.kind == NullStop::Kind::TimeAtLeast) {
    t_end = stop.value;
    if (t_end < p.t) throw InvalidArgument("null_flow: time stop earlier than start");
  } else {
    t_end = p.t + 10.0 + 4.0 * std::abs(stop.value - p.x) / f.f_min();
    const double xv = stop.value;
    if (sign > 0 && xv < p.x) throw InvalidArgument("null_flow: plus branch moves right");
    if (sign < 0 && xv > p.x) throw InvalidArgument("null_flow: minus branch moves left");
    event = [xv, sign](double, const Vec& y) { return sign * (y[0] - xv); };
  }

  auto res = rk45_integrate<1>(rhs, p.t, {p.x}, t_end, oopt, event);
  NullPath path;
  path.branch = branch;
  path.samples.reserve(res.samples.size());
  for (const auto& s : res.samples) path.samples.push_back({s.tau, s.y[0]});
  return path;
}

RotationNumbers rotation_numbers(const Profile& f, double min_t_span) {
  const double P = f.null_period();
  RotationNumbers out;
  out.m_plus = 1.0 / P;
  out.m_minus = -1.0 / P;

  // Long-run oracle: stop on a whole number of spatial periods so the slope
  // is free of sub-period wiggle.
  const int n = static_cast<int>(std::ceil(min_t_span / P)) + 1;
  auto plus = null_flow(f, {0.0, 0.0}, NullPath::Branch::Plus,
                        NullStop::space_reaches(static_cast<double>(n)));
  auto minus = null_flow(f, {0.0, 0.0}, NullPath::Branch::Minus,
                         NullStop::space_reaches(static_cast<double>(-n)));
  out.slope_plus = plus.end().x / plus.end().t;
  out.slope_minus = minus.end().x / minus.end().t;

  if (std::abs(out.slope_plus - out.m_plus) > 1e-6 ||
      std::abs(out.slope_minus - out.m_minus) > 1e-6)
    throw SolverError("rotation_numbers: quadrature and null-flow oracle disagree");
  return out;
}

}  // namespace ltorus
