#include <chrono>
#include <cmath>
#include <cstdio>

#include "causal.hpp"
#include "geodesic.hpp"
#include "profile.hpp"
#include "shooting.hpp"

using namespace ltorus;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main() {
  auto fp = Profile::plateau(0.5);

  {  // far probe distance (certify style): gamma(tau=100) from pole, psi0=2
    auto g = flow(fp, {0, 0.5, 2.0, 0}, StopCondition::tau_at_least(100.0));
    Point q{g.back().t, g.back().x};
    printf("probe target: t=%.4g x=%.4g\n", q.t, q.x);
    auto t0 = Clock::now();
    double d = distance_value(fp, {0, 0.5}, q);
    printf("far distance: %.3f ms, defect=%.3g\n", ms_since(t0), d - 100.0);
  }
  {  // displacement-style small distance from a non-plateau point
    auto t0 = Clock::now();
    int n = 20;
    double acc = 0;
    for (int i = 0; i < n; ++i) {
      double x = 0.05 * i;
      acc += distance_value(fp, {0, x}, {1.0, x});
    }
    printf("small distances (k=(1,0)): %.3f ms each (acc=%g)\n", ms_since(t0) / n, acc);
  }
  {  // busemann-style huge-dt distance
    auto t0 = Clock::now();
    double d = distance_value(fp, {0, 0.9}, {8192.0, 0.5});
    printf("huge-dt distance: %.3f ms, value=%.6f, h=%.9g\n", ms_since(t0), d, 8192.0 - d);
  }
  {  // k=(3,1) displacement style
    auto t0 = Clock::now();
    int n = 20;
    for (int i = 0; i < n; ++i) {
      double x = 0.05 * i;
      (void)distance_value(fp, {0, x}, {3.0, x + 1.0});
    }
    printf("small distances (k=(3,1)): %.3f ms each\n", ms_since(t0) / n);
  }
  {  // flow cost at tau=200 (criterion 1 style, cosine)
    auto fc = Profile::cosine(1.5, 0.4);
    auto t0 = Clock::now();
    auto g = flow(fc, {0, 0.3, 1.0, 0}, StopCondition::tau_at_least(200.0));
    printf("cosine flow tau=200: %.3f ms, drift=%.3g, steps=%zu\n", ms_since(t0), g.drift,
           g.samples.size());
  }
  {  // plateau flow tau=100 (certify style)
    auto t0 = Clock::now();
    auto g = flow(fp, {0, 0.5, 2.0, 0}, StopCondition::tau_at_least(100.0));
    printf("plateau flow tau=100: %.3f ms, drift=%.3g, steps=%zu\n", ms_since(t0), g.drift,
           g.samples.size());
    auto t1 = Clock::now();
    auto z = jacobi_zeros(fp, {0, 0.5, 2.0, 0}, 100.0);
    printf("jacobi tau=100: %.3f ms, zeros=%zu\n", ms_since(t1), z.size());
  }
  return 0;
}
