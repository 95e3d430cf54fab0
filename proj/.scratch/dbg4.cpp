#include <chrono>
#include <cmath>
#include <cstdio>

#include "causal.hpp"
#include "profile.hpp"
#include "shooting.hpp"

using namespace ltorus;
using Clock = std::chrono::steady_clock;

int main() {
  auto fp = Profile::plateau(0.5);
  // count shoot costs across the scan grid for one representative call
  for (double x0 : {0.05, 0.35, 0.6, 0.9}) {
    double dt = 1.0, range = 2.0;
    auto t0 = Clock::now();
    double worst = 0, worst_psi = 0;
    for (int j = 0; j < 512; ++j) {
      double psi = -range + 2 * range * j / 511;
      auto s0 = Clock::now();
      shoot_to_time(fp, x0, psi, dt);
      double us = std::chrono::duration<double, std::micro>(Clock::now() - s0).count();
      if (us > worst) worst = us, worst_psi = psi;
    }
    double total = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    printf("x0=%.2f: 512 shoots = %.1f ms (avg %.1f us), worst %.0f us at psi=%.4f\n", x0,
           total, total * 1000 / 512, worst, worst_psi);
  }
  // repeat worst-case shoots
  for (double psi : {0.06, 0.1, 0.15, 0.2, 0.3}) {
    auto t0 = Clock::now();
    for (int i = 0; i < 50; ++i) shoot_to_time(fp, 0.35, psi + i * 1e-13, 1.0);
    double us = std::chrono::duration<double, std::micro>(Clock::now() - t0).count() / 50;
    printf("x0=0.35 psi=%.3f: %.1f us\n", psi, us);
  }
  return 0;
}
