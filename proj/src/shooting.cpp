#include "shooting.hpp"

#include <cmath>
#include <optional>

#include "errors.hpp"
#include "quadrature.hpp"
#include "rk45.hpp"

namespace ltorus {
namespace {

using Piece = Profile::Piece;

constexpr double kCriticalSliver = 1e-12;  // relative |C - f_max| band handled by RK45
constexpr double kMinWallSlope = 1e-4;    // |f'| at turning points for quadrature
constexpr double kQuadTol = 1e-13;

// Step cap tied to the profile's feature scale; see rk45.hpp.
std::function<double(const std::array<double, 4>&)> feature_step_cap(const Profile& f) {
  const double w = f.min_feature_width();
  if (!std::isfinite(w)) return nullptr;
  return [w](const std::array<double, 4>& y) {
    return w / (2.0 * (std::abs(std::sinh(y[2])) + 0.02));
  };
}

// State relative to the shot: y = (t, x, psi), tau accumulated in y[3].
struct RkLeg {
  double t, x, psi, tau;
  bool hit_time;
};

// Integrate until t reaches t_target or (watch_turning) the hyperbolic angle
// crosses zero.
RkLeg rk_leg(const Profile& f, double t0, double x0, double psi0, double tau0, double t_target,
             bool watch_turning) {
  using Vec4 = std::array<double, 4>;
  auto rhs = [&f](double, const Vec4& y, Vec4& dy) {
    const auto e = f.eval(y[1]);
    const double ch = std::cosh(y[2]);
    dy[0] = ch / e.f;
    dy[1] = std::sinh(y[2]);
    dy[2] = -(e.df / e.f) * ch;
    dy[3] = 1.0;
  };
  OdeOptions opt;
  opt.abs_tol = 1e-11;
  opt.rel_tol = 1e-11;
  opt.record = false;
  const double tau_budget = (t_target - t0) * f.f_max() + 1.0;
  const double s = psi0 > 0 ? 1.0 : -1.0;
  std::function<double(double, const Vec4&)> event;
  if (watch_turning) {
    event = [t_target, s](double, const Vec4& y) {
      return std::max(y[0] - t_target, -s * y[2]);
    };
  } else {
    event = [t_target](double, const Vec4& y) { return y[0] - t_target; };
  }
  auto res = rk45_integrate<4>(rhs, 0.0, {t0, x0, psi0, tau0}, tau_budget, opt, event,
                               feature_step_cap(f));
  if (!res.event_hit) throw SolverError("shoot: time stop not reached within tau bound");
  const bool hit_time = t_target - res.end_y[0] <= 1e-11 * (1.0 + std::abs(t_target));
  return {res.end_y[0], res.end_y[1], res.end_y[2], res.end_y[3], hit_time};
}

double piece_abs_lo(const Piece& p, double base) { return base + p.lo; }
double piece_abs_hi(const Piece& p, double base) { return base + p.hi; }

// Bracketed root of f(x) = target on a monotone interval; secant interleaved
// with bisection so a flat side cannot stall progress.
double solve_on_interval(const Profile& f, double a, double b, double target) {
  double ga = f.eval(a).f - target;
  double gb = f.eval(b).f - target;
  if (ga == 0.0) return a;
  if (gb == 0.0) return b;
  if ((ga > 0) == (gb > 0)) throw SolverError("shoot: root not bracketed");
  double lo = a, hi = b, glo = ga, ghi = gb;
  for (int i = 0; i < 200; ++i) {
    double cand;
    if (i % 2 == 0 && std::abs(ghi - glo) > 0.0) {
      cand = hi - ghi * (hi - lo) / (ghi - glo);
      if (!(cand > std::min(lo, hi) && cand < std::max(lo, hi))) cand = 0.5 * (lo + hi);
    } else {
      cand = 0.5 * (lo + hi);
    }
    const double g = f.eval(cand).f - target;
    if (g == 0.0) return cand;
    if ((g > 0) == (glo > 0))
      lo = cand, glo = g;
    else
      hi = cand, ghi = g;
    if (std::abs(hi - lo) <= 4e-16 * (1.0 + std::abs(lo))) break;
  }
  return 0.5 * (lo + hi);
}

struct PieceCursor {
  int index;
  double base;
};

PieceCursor locate_piece(const Profile& f, double x) {
  const double base = std::floor(x);
  double u = x - base;
  if (u >= 1.0) u = std::nextafter(1.0, 0.0);
  const auto& ps = f.pieces();
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (u >= ps[i].lo && u <= ps[i].hi) return {static_cast<int>(i), base};
  return {static_cast<int>(ps.size()) - 1, base};
}

PieceCursor advance(const Profile& f, PieceCursor c, int dir) {
  const int n = static_cast<int>(f.pieces().size());
  c.index += dir;
  if (c.index >= n) {
    c.index = 0;
    c.base += 1.0;
  } else if (c.index < 0) {
    c.index = n - 1;
    c.base -= 1.0;
  }
  return c;
}

// Next x (in direction dir from x_start) where f rises back to C.
std::optional<double> find_turning(const Profile& f, double C, double x_start, int dir) {
  PieceCursor c = locate_piece(f, x_start);
  const auto& ps = f.pieces();
  for (int hops = 0; hops < 4 * static_cast<int>(ps.size()) + 2; ++hops) {
    const Piece& p = ps[static_cast<std::size_t>(c.index)];
    double a = piece_abs_lo(p, c.base), b = piece_abs_hi(p, c.base);
    if (dir > 0)
      a = std::max(a, x_start);
    else
      b = std::min(b, x_start);
    if (b > a) {
      const bool rising =
          dir > 0 ? p.type == Piece::Type::Increasing : p.type == Piece::Type::Decreasing;
      const double f_far = dir > 0 ? f.eval(b).f : f.eval(a).f;
      const double f_near = dir > 0 ? f.eval(a).f : f.eval(b).f;
      if (rising && f_far >= C && f_near < C) {
        return solve_on_interval(f, a, b, C);
      }
    }
    c = advance(f, c, dir);
  }
  return std::nullopt;
}

PeriodAdvance smooth_span(const Profile& f, double C, double a, double b) {
  auto integrand = [&f, C](double x, double* out) {
    const double fx = f.eval(x).f;
    const double root = std::sqrt(std::max((C - fx) * (C + fx), 0.0));
    out[0] = C / (fx * root);
    out[1] = fx / root;
  };
  auto v = gk_integrate<2>(integrand, a, b, kQuadTol);
  return {v[0], v[1]};
}

PeriodAdvance const_span(double C, double fc, double width) {
  const double root = std::sqrt((C - fc) * (C + fc));
  return {width * C / (fc * root), width * fc / root};
}

// Wall contribution near a turning point, parametrized by the hyperbolic
// angle: x(psi) solves f(x) = C/cosh(psi) on the wall piece, and
// dt = dpsi/|f'|, dtau = f dpsi/(|f'| cosh psi). Smooth since f' != 0 there.
PeriodAdvance wall_integrals(const Profile& f, double C, double x_turn, double x_cut,
                             double psi_end) {
  const double xa = std::min(x_turn, x_cut), xb = std::max(x_turn, x_cut);
  const bool increasing = f.eval(xb).f > f.eval(xa).f;
  double x_last = 0.5 * (xa + xb);
  auto integrand = [&](double psi, double* out) {
    const double target = C / std::cosh(psi);
    double lo = xa, hi = xb;
    double x = std::clamp(x_last, lo, hi);
    Profile::Eval e = f.eval(x);
    for (int i = 0; i < 60; ++i) {
      const double g = e.f - target;
      if (std::abs(g) <= 1e-15 * target) break;
      const bool past = (g > 0.0) == increasing;
      if (past)
        hi = std::min(hi, x);
      else
        lo = std::max(lo, x);
      double cand = e.df != 0.0 ? x - g / e.df : 0.5 * (lo + hi);
      if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
      if (hi - lo <= 4e-16 * (1.0 + std::abs(lo))) break;
      x = cand;
      e = f.eval(x);
    }
    x_last = x;
    const double adf = std::abs(e.df);
    out[0] = 1.0 / adf;
    out[1] = e.f / (adf * std::cosh(psi));
  };
  auto v = gk_integrate<2>(integrand, 0.0, psi_end, kQuadTol);
  return {v[0], v[1]};
}

// Half-oscillation advance between turning points x_lo < x_hi of a well with
// f(x_lo) = f(x_hi) = C: angle-parametrized walls plus x-parametrized middle.
std::optional<PeriodAdvance> half_oscillation_integrals(const Profile& f, double C, double x_lo,
                                                        double x_hi) {
  const auto e_lo = f.eval(x_lo), e_hi = f.eval(x_hi);
  if (std::abs(e_lo.df) < kMinWallSlope || std::abs(e_hi.df) < kMinWallSlope)
    return std::nullopt;

  double total_t = 0.0, total_tau = 0.0;
  double cut_x[2];
  const double turns[2] = {x_lo, x_hi};
  for (int side = 0; side < 2; ++side) {
    const double x_turn = turns[side];
    PieceCursor c = locate_piece(f, x_turn);
    const Piece& p = f.pieces()[static_cast<std::size_t>(c.index)];
    if (p.type == Piece::Type::Constant) return std::nullopt;  // degenerate locator
    const double f_floor = std::min(p.f_lo, p.f_hi);
    const double m = std::min(0.05 * C, 0.5 * (C - f_floor));
    if (!(m > 0)) return std::nullopt;
    const double f_cut = C - m;
    const double psi_end = std::acosh(C / f_cut);
    const double a = piece_abs_lo(p, c.base), b = piece_abs_hi(p, c.base);
    const double x_cut = side == 0 ? solve_on_interval(f, x_turn, b, f_cut)
                                   : solve_on_interval(f, a, x_turn, f_cut);
    cut_x[side] = x_cut;
    auto w = wall_integrals(f, C, x_turn, x_cut, psi_end);
    total_t += w.dt;
    total_tau += w.dtau;
  }
  if (cut_x[0] > cut_x[1]) return std::nullopt;  // walls overlap; well too shallow

  auto mid = span_integrals(f, C, cut_x[0], cut_x[1]);
  total_t += mid.dt;
  total_tau += mid.dtau;
  return PeriodAdvance{total_t, total_tau};
}

ShootResult shoot_rk_only(const Profile& f, double x0, double psi0, double dt) {
  auto leg = rk_leg(f, 0.0, x0, psi0, 0.0, dt, false);
  return {leg.x, leg.psi, leg.tau};
}

// Walk pieces from x0 in direction dir, accumulating (t, tau) advances until
// t reaches dt; then solve the final fractional piece (closed form on
// constant pieces, bracketed quadrature inversion on smooth ones). This keeps
// monotone shots free of the stepper entirely: the integrands involve only f,
// not its higher derivatives, so the cost is independent of how stiff the
// blends are.
ShootResult invert_monotone_time(const Profile& f, double C, double x0, int dir, double dt,
                                 double tau0) {
  PieceCursor c = locate_piece(f, x0);
  const auto& ps = f.pieces();
  double x = x0, t = 0.0, tau = tau0;
  int guard = 0;
  while (guard++ < 100000) {
    const Piece& p = ps[static_cast<std::size_t>(c.index)];
    const double lo = piece_abs_lo(p, c.base), hi = piece_abs_hi(p, c.base);
    const double edge = dir > 0 ? hi : lo;
    const double width = std::abs(edge - x);
    if (width > 0) {
      PeriodAdvance adv;
      if (p.type == Piece::Type::Constant)
        adv = const_span(C, p.f_lo, width);
      else
        adv = smooth_span(f, C, std::min(x, edge), std::max(x, edge));
      if (t + adv.dt >= dt) {
        // final fractional piece
        if (p.type == Piece::Type::Constant) {
          const double rate = C / (p.f_lo * std::sqrt((C - p.f_lo) * (C + p.f_lo)));
          const double w_end = (dt - t) / rate;
          const double x_end = x + dir * w_end;
          const double dtau = (dt - t) * p.f_lo * p.f_lo / C;
          return {x_end, dir * std::acosh(std::max(C / p.f_lo, 1.0)), tau + dtau};
        }
        double wlo = 0.0, whi = width;
        double glo = -(dt - t), ghi = adv.dt - (dt - t);
        double w_best = width, tau_best = adv.dtau, g_best = std::abs(ghi);
        for (int i = 0; i < 90; ++i) {
          double cand = (i % 2 == 0 && std::abs(ghi - glo) > 0.0)
                            ? whi - ghi * (whi - wlo) / (ghi - glo)
                            : 0.5 * (wlo + whi);
          if (!(cand > wlo && cand < whi)) cand = 0.5 * (wlo + whi);
          const double xe = x + dir * cand;
          auto v = smooth_span(f, C, std::min(x, xe), std::max(x, xe));
          const double g = v.dt - (dt - t);
          if (std::abs(g) < g_best) {
            g_best = std::abs(g);
            w_best = cand;
            tau_best = v.dtau;
          }
          if (g >= 0)
            whi = cand, ghi = g;
          else
            wlo = cand, glo = g;
          if (std::abs(g) <= 1e-13 * (1.0 + dt)) break;
          if (whi - wlo <= 1e-15) break;
        }
        const double x_end = x + dir * w_best;
        const double fx = f.eval(x_end).f;
        return {x_end, dir * std::acosh(std::max(C / fx, 1.0)), tau + tau_best};
      }
      t += adv.dt;
      tau += adv.dtau;
      x = edge;
    }
    c = advance(f, c, dir);
  }
  throw SolverError("shoot: monotone inversion failed to reach the time stop");
}

ShootResult shoot_monotone(const Profile& f, double x0, double psi0, double dt, double C) {
  const int dir = psi0 > 0 ? 1 : -1;
  double t_after = 0.0, tau_after = 0.0;
  double x_start = x0;
  // jump whole periods when several fit
  const auto per = monotone_period_integrals(f, C);
  double n = std::floor(dt / per.dt) - 1.0;
  if (n > 0) {
    t_after = n * per.dt;
    tau_after = n * per.dtau;
    x_start = x0 + dir * n;
  }
  return invert_monotone_time(f, C, x_start, dir, dt - t_after, tau_after);
}

ShootResult shoot_oscillating(const Profile& f, double x0, double psi0, double dt, double C) {
  double t = 0.0, tau = 0.0, x = x0, psi = psi0;

  if (psi != 0.0) {  // leg to the first turning point
    auto leg = rk_leg(f, t, x, psi, tau, dt, true);
    if (leg.hit_time) return {leg.x, leg.psi, leg.tau};
    t = leg.t;
    x = leg.x;
    psi = 0.0;
    tau = leg.tau;
  }

  const double dfx = f.eval(x).df;
  if (std::abs(dfx) < kMinWallSlope) return shoot_rk_only(f, x0, psi0, dt);
  const int dir_inward = dfx > 0 ? -1 : +1;  // motion restarts downhill
  auto companion = find_turning(f, C, x, dir_inward);
  if (!companion) return shoot_rk_only(f, x0, psi0, dt);

  const double xa = std::min(x, *companion), xb = std::max(x, *companion);
  auto half = half_oscillation_integrals(f, C, xa, xb);
  if (!half) return shoot_rk_only(f, x0, psi0, dt);

  double n = std::floor((dt - t) / half->dt) - 1.0;
  if (n < 0) n = 0;
  t += n * half->dt;
  tau += n * half->dtau;
  const bool odd = std::fmod(n, 2.0) == 1.0;
  double x_here = x;
  if (odd) x_here = (x == xa) ? xb : xa;

  auto leg = rk_leg(f, t, x_here, 0.0, tau, dt, false);
  return {leg.x, leg.psi, leg.tau};
}

// Largest value of f over [a, b] (f is piecewise monotone).
double span_max(const Profile& f, double a, double b) {
  double m = std::max(f.eval(a).f, f.eval(b).f);
  PieceCursor c = locate_piece(f, a);
  const auto& ps = f.pieces();
  int guard = 0;
  double x = a;
  const int max_hops = static_cast<int>((b - a + 2) * static_cast<double>(ps.size())) + 4;
  while (x < b && guard++ < max_hops) {
    const Piece& p = ps[static_cast<std::size_t>(c.index)];
    const double lo = std::max(x, piece_abs_lo(p, c.base));
    const double hi = std::min(b, piece_abs_hi(p, c.base));
    if (hi > lo) {
      m = std::max({m, f.eval(lo).f, f.eval(hi).f});
      x = hi;
    }
    if (x < b) c = advance(f, c, +1);
  }
  return m;
}

}  // namespace

PeriodAdvance span_integrals(const Profile& f, double C, double a, double b) {
  if (b <= a) return {0.0, 0.0};
  double dt = 0.0, dtau = 0.0;
  PieceCursor c = locate_piece(f, a);
  const auto& ps = f.pieces();
  double x = a;
  int guard = 0;
  const int max_hops = static_cast<int>((b - a + 2) * static_cast<double>(ps.size())) + 4;
  while (x < b - 1e-15 && guard++ < max_hops) {
    const Piece& p = ps[static_cast<std::size_t>(c.index)];
    const double lo = std::max(x, piece_abs_lo(p, c.base));
    const double hi = std::min(b, piece_abs_hi(p, c.base));
    if (hi > lo) {
      if (p.type == Piece::Type::Constant) {
        auto v = const_span(C, p.f_lo, hi - lo);
        dt += v.dt;
        dtau += v.dtau;
      } else {
        auto v = smooth_span(f, C, lo, hi);
        dt += v.dt;
        dtau += v.dtau;
      }
      x = hi;
    }
    if (x < b - 1e-15) c = advance(f, c, +1);
  }
  return {dt, dtau};
}

PeriodAdvance monotone_period_integrals(const Profile& f, double C) {
  if (!(C > f.f_max())) throw InvalidArgument("period integrals require C > f_max");
  return span_integrals(f, C, 0.0, 1.0);
}

std::optional<MonotoneConnector> monotone_connector(const Profile& f, double x_p, double x_q,
                                                    double dt) {
  const double dx = x_q - x_p;
  if (dx == 0.0 || dt <= 0.0) return std::nullopt;
  const double a = std::min(x_p, x_q), b = std::max(x_p, x_q);
  const double F = span_max(f, a, b);

  // t(C) is strictly decreasing on (F, inf); bracket in v where C = F + e^v.
  auto time_at = [&](double v) { return span_integrals(f, F + std::exp(v), a, b).dt; };
  double v_hi = std::log(std::max(1.0, F));
  double t_hi = time_at(v_hi);
  int guard = 0;
  while (t_hi > dt && guard++ < 40) {
    v_hi += 2.0;
    t_hi = time_at(v_hi);
  }
  if (t_hi > dt) return std::nullopt;
  double v_lo = v_hi;
  double t_lo = t_hi;
  guard = 0;
  while (t_lo < dt && guard++ < 40) {
    v_lo -= 3.0;
    if (v_lo < -42.0) return std::nullopt;  // slow limit exhausted: no connector
    t_lo = time_at(v_lo);
  }
  if (t_lo < dt) return std::nullopt;

  double glo = t_lo - dt, ghi = t_hi - dt;
  for (int i = 0; i < 120; ++i) {
    double cand = (i % 2 == 0 && std::abs(ghi - glo) > 0.0)
                      ? v_hi - ghi * (v_hi - v_lo) / (ghi - glo)
                      : 0.5 * (v_lo + v_hi);
    if (!(cand > v_lo && cand < v_hi)) cand = 0.5 * (v_lo + v_hi);
    const double g = time_at(cand) - dt;
    if (g > 0)
      v_lo = cand, glo = g;
    else
      v_hi = cand, ghi = g;
    if (std::abs(g) <= 1e-12 * (1.0 + dt)) break;
    if (v_hi - v_lo <= 4e-16 * (1.0 + std::abs(v_lo))) break;
  }
  const double C = F + std::exp(0.5 * (v_lo + v_hi));
  auto adv = span_integrals(f, C, a, b);
  MonotoneConnector out;
  out.clairaut = C;
  out.length = adv.dtau;
  const double fp = f.eval(x_p).f;
  out.psi0 = (dx > 0 ? 1.0 : -1.0) * std::acosh(std::max(C / fp, 1.0));
  return out;
}

ShootResult shoot_to_time(const Profile& f, double x0, double psi0, double dt) {
  if (dt <= 0.0) return {x0, psi0, 0.0};
  const auto e0 = f.eval(x0);
  if (psi0 == 0.0 && e0.df == 0.0) return {x0, 0.0, dt * e0.f};  // vertical line

  const double C = e0.f * std::cosh(psi0);
  const double fmax = f.f_max();
  if (C >= fmax * (1.0 + kCriticalSliver)) return shoot_monotone(f, x0, psi0, dt, C);
  if (C <= fmax * (1.0 - kCriticalSliver) && dt > 2.0 * f.null_period())
    return shoot_oscillating(f, x0, psi0, dt, C);
  return shoot_rk_only(f, x0, psi0, dt);
}

}  // namespace ltorus
