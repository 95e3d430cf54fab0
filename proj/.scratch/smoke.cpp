#include <cmath>
#include <cstdio>

#include "causal.hpp"
#include "geodesic.hpp"
#include "profile.hpp"
#include "shooting.hpp"

using namespace ltorus;

int main() {
  // profile basics
  auto fp = Profile::plateau(0.5);
  printf("plateau f(0)=%.15g f(0.5)=%.15g f(0.2)=%.15g\n", fp.value(0.0), fp.value(0.5),
         fp.value(0.2));
  printf("null period plateau = %.15g\n", fp.null_period());
  auto fc1 = Profile::constant(1.0);
  auto fc2 = Profile::constant(2.0);
  printf("null period const2 = %.15g (expect 0.5)\n", fc2.null_period());

  // flat flow
  auto g = flow(fc1, {0, 0, 0.5, 0}, StopCondition::tau_at_least(2.0));
  printf("flat flow end t=%.12g x=%.12g (expect %.12g %.12g), drift=%.3g\n", g.back().t,
         g.back().x, 2 * std::cosh(0.5), 2 * std::sinh(0.5), g.drift);

  // vertical plateau geodesic
  auto gv = flow(fp, {0, 0.5, 0, 0}, StopCondition::tau_at_least(4.0));
  printf("vertical end t=%.12g x=%.12g (expect 2, 0.5)\n", gv.back().t, gv.back().x);

  // shoot vs flow cross-check on plateau, monotone orbit
  {
    double x0 = 0.5, psi0 = 1.2, dt = 37.0;
    auto s = shoot_to_time(fp, x0, psi0, dt);
    auto gf = flow(fp, {0, x0, psi0, 0}, StopCondition::time_at_least(dt));
    printf("shoot mono: x=%.12g vs %.12g  tau=%.12g vs %.12g  dpsi=%.3g\n", s.x, gf.back().x,
           s.tau, gf.back().tau, s.psi - gf.back().psi);
  }
  // oscillating orbit on cosine
  {
    auto fcos = Profile::cosine(1.5, 0.4);
    double x0 = 0.5, psi0 = 0.3, dt = 53.0;
    auto s = shoot_to_time(fcos, x0, psi0, dt);
    auto gf = flow(fcos, {0, x0, psi0, 0}, StopCondition::time_at_least(dt));
    printf("shoot osc:  x=%.12g vs %.12g  tau=%.12g vs %.12g\n", s.x, gf.back().x, s.tau,
           gf.back().tau);
  }
  // oscillating orbit on plateau (valley well)
  {
    double x0 = 0.0, psi0 = 0.4, dt = 41.0;  // C = 0.5*cosh(0.4) ~ 0.54
    auto s = shoot_to_time(fp, x0, psi0, dt);
    auto gf = flow(fp, {0, x0, psi0, 0}, StopCondition::time_at_least(dt));
    printf("shoot well: x=%.12g vs %.12g  tau=%.12g vs %.12g\n", s.x, gf.back().x, s.tau,
           gf.back().tau);
  }

  // flat distance
  auto d = distance(fc1, {0, 0}, {2, 1});
  printf("flat distance (0,0)-(2,1): %.12g (expect %.12g), nmax=%zu\n", d.value, std::sqrt(3.0),
         d.maximizers.size());
  auto d2 = distance(fc1, {0, 0}, {1, 2});
  printf("flat distance (0,0)-(1,2): %.12g rel=%d (expect 0, unrelated)\n", d2.value,
         (int)d2.relation);

  // plateau distance probe d(p, gamma(tau)) = tau from a pole
  {
    auto gfan = flow(fp, {0, 0.5, 1.0, 0}, StopCondition::tau_at_least(25.0));
    Point q{gfan.back().t, gfan.back().x};
    auto dp = distance_value(fp, {0, 0.5}, q);
    printf("pole probe: d=%.12g vs tau=25, defect=%.3g  (q=%.6g, %.6g)\n", dp, dp - 25.0, q.t,
           q.x);
  }
  puts("done");
  return 0;
}
