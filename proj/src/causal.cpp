#include "causal.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "shooting.hpp"

namespace ltorus {
namespace {

struct Root {
  double psi0;
  double tau;
};

struct ScanOutcome {
  std::vector<Root> roots;
  bool left_open = false;   // leftmost node already past the target
  bool right_open = false;  // rightmost node still short of the target
};

// Shoot the fan over [-range, range] with n nodes and collect refined roots
// of x_hit(psi0) = x_target.
ScanOutcome scan_fan(const Profile& f, double x0, double dt, double x_target, double range,
                     int n) {
  ScanOutcome out;
  std::vector<double> g(static_cast<std::size_t>(n));
  std::vector<double> tau(static_cast<std::size_t>(n));
  std::vector<double> psi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    psi[static_cast<std::size_t>(i)] = -range + 2.0 * range * i / (n - 1);
    auto r = shoot_to_time(f, x0, psi[static_cast<std::size_t>(i)], dt);
    g[static_cast<std::size_t>(i)] = r.x - x_target;
    tau[static_cast<std::size_t>(i)] = r.tau;
  }
  out.left_open = g.front() >= 0.0;
  out.right_open = g.back() <= 0.0;

  for (int i = 0; i + 1 < n; ++i) {
    const double ga = g[static_cast<std::size_t>(i)], gb = g[static_cast<std::size_t>(i + 1)];
    if (ga == 0.0) {
      out.roots.push_back({psi[static_cast<std::size_t>(i)], tau[static_cast<std::size_t>(i)]});
      continue;
    }
    if ((ga > 0.0) == (gb > 0.0)) continue;
    double lo = psi[static_cast<std::size_t>(i)], hi = psi[static_cast<std::size_t>(i + 1)];
    double glo = ga, ghi = gb;
    double tau_best = tau[static_cast<std::size_t>(i)];
    for (int it = 0; it < 90; ++it) {
      double cand = (it % 2 == 0 && std::abs(ghi - glo) > 0.0)
                        ? hi - ghi * (hi - lo) / (ghi - glo)
                        : 0.5 * (lo + hi);
      if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
      auto r = shoot_to_time(f, x0, cand, dt);
      const double gc = r.x - x_target;
      tau_best = r.tau;
      if (gc == 0.0) {
        lo = hi = cand;
        break;
      }
      if ((gc > 0.0) == (glo > 0.0))
        lo = cand, glo = gc;
      else
        hi = cand, ghi = gc;
      if (hi - lo <= 1e-13 * (1.0 + std::abs(lo))) break;
    }
    out.roots.push_back({0.5 * (lo + hi), tau_best});
  }
  // merge numerically identical roots
  std::sort(out.roots.begin(), out.roots.end(),
            [](const Root& a, const Root& b) { return a.psi0 < b.psi0; });
  std::vector<Root> merged;
  for (const auto& r : out.roots) {
    if (!merged.empty() && std::abs(r.psi0 - merged.back().psi0) < 2e-12) continue;
    merged.push_back(r);
  }
  out.roots = std::move(merged);
  return out;
}

}  // namespace

Relation causal_relation(const Profile& f, Point p, Point q, double tol) {
  const double dt = q.t - p.t;
  const double dx = std::abs(q.x - p.x);
  if (dt == 0.0 && dx == 0.0) return Relation::CausalBoundary;  // q == p
  if (dt <= 0.0) return Relation::Unrelated;
  const double null_time = f.inverse_speed_integral(std::min(p.x, q.x), std::max(p.x, q.x));
  if (dt - null_time > tol) return Relation::Chronological;
  if (dt - null_time >= -tol) return Relation::CausalBoundary;
  return Relation::Unrelated;
}

DistanceResult distance(const Profile& f, Point p, Point q, const DistanceOptions& opt) {
  DistanceResult out;
  out.relation = causal_relation(f, p, q);
  if (out.relation != Relation::Chronological) {
    out.value = 0.0;
    return out;
  }

  const double dt = q.t - p.t;
  const double dx = q.x - p.x;
  double range = std::asinh(std::abs(dx) * f.f_max() / dt) + 2.0;

  ScanOutcome prev, cur;
  double prev_value = -1.0;
  bool have_prev = false;
  int n = opt.initial_nodes;
  int widenings = 0;

  while (true) {
    cur = scan_fan(f, p.x, dt, q.x, range, n);
    if ((cur.left_open || cur.right_open) && widenings < 6) {
      range += 2.0;
      ++widenings;
      have_prev = false;
      continue;
    }
    if (cur.roots.empty()) {
      if (widenings < 6) {
        range += 2.0;
        ++widenings;
        continue;
      }
      throw SolverError("distance: chronological pair but no connecting root found");
    }
    double value = 0.0;
    for (const auto& r : cur.roots) value = std::max(value, r.tau);
    if (have_prev && cur.roots.size() == prev.roots.size() &&
        std::abs(value - prev_value) <= opt.value_agree_tol) {
      out.value = value;
      break;
    }
    if (n >= opt.max_nodes) {
      // accept the finest scan; the agreement tolerance could not be met
      out.value = value;
      break;
    }
    prev = cur;
    prev_value = value;
    have_prev = true;
    n *= 2;
  }

  // maximizers: all roots within the tie tolerance, ascending psi0
  for (const auto& r : cur.roots) {
    if (out.value - r.tau > opt.tie_tol) continue;
    Maximizer m;
    m.psi0 = r.psi0;
    m.length = r.tau;
    if (opt.materialize_paths) {
      m.path = flow(f, {p.t, p.x, r.psi0, 0.0}, StopCondition::time_at_least(q.t));
    }
    out.maximizers.push_back(std::move(m));
  }
  return out;
}

PointSetDistance distance_point_set(const Profile& f, Point p, const std::vector<Point>& S) {
  if (S.empty()) throw InvalidArgument("distance_point_set: empty sample");
  PointSetDistance best{0.0, S[0], 0};
  bool found = false;
  for (std::size_t i = 0; i < S.size(); ++i) {
    const double v = distance_value(f, p, S[i]);
    if (!found || v > best.value) {
      best = {v, S[i], i};
      found = true;
    }
  }
  return best;
}

int crossing_count(const Geodesic& a, const Geodesic& b) {
  const double t_lo = std::max(a.front().t, b.front().t);
  const double t_hi = std::min(a.back().t, b.back().t);
  if (t_hi <= t_lo) return 0;
  const double span = t_hi - t_lo;
  const double skip = 1e-9 * span;  // exclude shared endpoints

  // merged sample times from both paths, clipped to the overlap interior
  std::vector<double> ts;
  ts.reserve(a.samples.size() + b.samples.size());
  for (const auto& s : a.samples)
    if (s.t > t_lo + skip && s.t < t_hi - skip) ts.push_back(s.t);
  for (const auto& s : b.samples)
    if (s.t > t_lo + skip && s.t < t_hi - skip) ts.push_back(s.t);
  ts.push_back(t_lo + skip);
  ts.push_back(t_hi - skip);
  std::sort(ts.begin(), ts.end());

  int crossings = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (double t : ts) {
    const double d = a.x_at_time(t) - b.x_at_time(t);
    if (have_prev && ((prev > 0.0 && d < 0.0) || (prev < 0.0 && d > 0.0))) ++crossings;
    if (d != 0.0) {
      prev = d;
      have_prev = true;
    }
  }
  return crossings;
}

}  // namespace ltorus
