#include <chrono>
#include <cmath>
#include <cstdio>

#include "causal.hpp"
#include "geodesic.hpp"
#include "profile.hpp"
#include "shooting.hpp"

using namespace ltorus;
using Clock = std::chrono::steady_clock;

int main() {
  auto fp = Profile::plateau(0.5);
  // single shoots at various psi, dt=1
  for (double psi : {0.1, 0.5, 1.0, 2.0, -2.0}) {
    auto t0 = Clock::now();
    int n = 200;
    ShootResult r{};
    for (int i = 0; i < n; ++i) r = shoot_to_time(fp, 0.37, psi + i * 1e-12, 1.0);
    double us = std::chrono::duration<double, std::micro>(Clock::now() - t0).count() / n;
    printf("shoot dt=1 psi=%5.2f: %7.2f us  (x=%.6f tau=%.6f)\n", psi, us, r.x, r.tau);
  }
  for (double psi : {0.1, 0.5, 1.0, 2.0}) {
    auto t0 = Clock::now();
    int n = 100;
    ShootResult r{};
    for (int i = 0; i < n; ++i) r = shoot_to_time(fp, 0.37, psi + i * 1e-12, 3.0);
    double us = std::chrono::duration<double, std::micro>(Clock::now() - t0).count() / n;
    printf("shoot dt=3 psi=%5.2f: %7.2f us  (x=%.6f tau=%.6f)\n", psi, us, r.x, r.tau);
  }
  // profile eval speed
  {
    auto t0 = Clock::now();
    double acc = 0;
    int n = 3000000;
    for (int i = 0; i < n; ++i) acc += fp.eval(0.0 + i * 1e-7).f;
    double ns = std::chrono::duration<double, std::nano>(Clock::now() - t0).count() / n;
    printf("profile eval: %.1f ns (acc=%g)\n", ns, acc);
  }
  return 0;
}
