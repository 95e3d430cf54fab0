#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace ltorus {

// Embedded Dormand-Prince 5(4) pair with FSAL, PI-free standard controller,
// cubic Hermite dense output and bracketed event location refined by a
// safeguarded secant iteration.

template <std::size_t N>
struct OdeSample {
  double tau;
  std::array<double, N> y;
  std::array<double, N> dy;
};

template <std::size_t N>
struct OdeResult {
  std::vector<OdeSample<N>> samples;  // includes initial and final states
  bool event_hit = false;
  double end_tau = 0.0;
  std::array<double, N> end_y{};
  std::size_t n_steps = 0;
};

struct OdeOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double event_tol = 1e-13;     // |g| target at the located event
  double initial_step = 1e-3;
  double max_step = std::numeric_limits<double>::infinity();
  bool record = true;           // keep all accepted steps (else endpoints only)
  std::size_t max_steps = 50'000'000;
};

namespace dopri {
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
}  // namespace dopri

// Cubic Hermite interpolation on one accepted step.
template <std::size_t N>
inline std::array<double, N> hermite(const OdeSample<N>& a, const OdeSample<N>& b, double tau) {
  const double h = b.tau - a.tau;
  const double s = (tau - a.tau) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  std::array<double, N> y{};
  for (std::size_t i = 0; i < N; ++i)
    y[i] = h00 * a.y[i] + h10 * h * a.dy[i] + h01 * b.y[i] + h11 * h * b.dy[i];
  return y;
}

// Integrates y' = rhs(tau, y) from (tau0, y0) toward tau_end. If `event` is
// non-null, stops where the event function first crosses zero from negative
// to non-negative (evaluated on accepted steps, refined on dense output);
// tau_end then acts as a budget. Backward integration: tau_end < tau0.
//
// `step_cap`, when given, bounds the step length as a function of the current
// state. Needed over periodic structures: in regions where the flow is exactly
// linear the error estimate vanishes and uncapped steps would stride across
// entire features of the right-hand side.
template <std::size_t N, class RHS>
OdeResult<N> rk45_integrate(RHS&& rhs, double tau0, std::array<double, N> y0, double tau_end,
                            const OdeOptions& opt,
                            const std::function<double(double, const std::array<double, N>&)>&
                                event = nullptr,
                            const std::function<double(const std::array<double, N>&)>& step_cap =
                                nullptr) {
  using Vec = std::array<double, N>;
  OdeResult<N> out;
  const double dir = tau_end >= tau0 ? 1.0 : -1.0;

  auto deriv = [&rhs](double tau, const Vec& y) {
    Vec dy{};
    rhs(tau, y, dy);
    return dy;
  };

  OdeSample<N> cur{tau0, y0, deriv(tau0, y0)};
  out.samples.push_back(cur);

  double g_prev = 0.0;
  if (event) {
    g_prev = event(cur.tau, cur.y);
    if (g_prev >= 0.0) {  // already past the stop
      out.event_hit = true;
      out.end_tau = cur.tau;
      out.end_y = cur.y;
      return out;
    }
  }

  double h = dir * std::min(opt.initial_step, opt.max_step);
  if (tau0 == tau_end && !event) {
    out.end_tau = tau0;
    out.end_y = y0;
    return out;
  }

  while (true) {
    if (++out.n_steps > opt.max_steps) throw SolverError("rk45: step budget exhausted");
    const double remaining = tau_end - cur.tau;
    if (dir * remaining <= 0.0) break;  // reached tau_end (or event budget exhausted)
    if (std::abs(h) > std::abs(remaining)) h = remaining;
    if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
    if (step_cap) {
      const double cap = step_cap(cur.y);
      if (std::abs(h) > cap) h = dir * cap;
    }

    using namespace dopri;
    const Vec& y = cur.y;
    const Vec& k1 = cur.dy;
    Vec yt, k2, k3, k4, k5, k6, k7, y5;
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1[i];
    k2 = deriv(cur.tau + h / 5, yt);
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = deriv(cur.tau + 3 * h / 10, yt);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = deriv(cur.tau + 4 * h / 5, yt);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = deriv(cur.tau + 8 * h / 9, yt);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = deriv(cur.tau + h, yt);
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = deriv(cur.tau + h, y5);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err += (e / scale) * (e / scale);
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      OdeSample<N> next{cur.tau + h, y5, k7};
      if (event) {
        const double g_next = event(next.tau, next.y);
        if (g_prev < 0.0 && g_next >= 0.0) {
          // refine inside [cur, next] with safeguarded secant on dense output
          double lo = cur.tau, hi = next.tau, glo = g_prev, ghi = g_next;
          double t_ev = hi;
          Vec y_ev = next.y;
          for (int it = 0; it < 100; ++it) {
            double cand = (it % 2 == 0 && std::abs(ghi - glo) > 0.0)
                              ? hi - ghi * (hi - lo) / (ghi - glo)
                              : 0.5 * (lo + hi);
            if (!(dir * (cand - lo) > 0.0 && dir * (hi - cand) > 0.0)) cand = 0.5 * (lo + hi);
            const Vec yc = hermite(cur, next, cand);
            const double gc = event(cand, yc);
            if (std::abs(gc) <= opt.event_tol) {
              t_ev = cand;
              y_ev = yc;
              break;
            }
            if (gc < 0.0) {
              lo = cand;
              glo = gc;
            } else {
              hi = cand;
              ghi = gc;
            }
            t_ev = hi;
            y_ev = hermite(cur, next, hi);
            if (std::abs(hi - lo) <= 1e-15 * (std::abs(hi) + 1.0)) break;
          }
          OdeSample<N> ev{t_ev, y_ev, deriv(t_ev, y_ev)};
          if (opt.record)
            out.samples.push_back(ev);
          else
            out.samples.back() = ev;
          out.event_hit = true;
          out.end_tau = ev.tau;
          out.end_y = ev.y;
          return out;
        }
        g_prev = g_next;
      }
      cur = next;
      if (opt.record)
        out.samples.push_back(cur);
      else
        out.samples.back() = cur;
      const double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      h *= std::min(6.0, std::max(0.2, grow));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }

  out.end_tau = cur.tau;
  out.end_y = cur.y;
  return out;
}

}  // namespace ltorus
