#include <cmath>
#include <cstdio>

#include "causal.hpp"
#include "geodesic.hpp"
#include "profile.hpp"
#include "shooting.hpp"

using namespace ltorus;

int main() {
  auto fp = Profile::plateau(0.5);
  setvbuf(stdout, nullptr, _IONBF, 0);
  for (int i = 0; i < 20; ++i) {
    double x = 0.05 * i;
    printf("x0=%.3f ...", x);
    try {
      double v = distance_value(fp, {0, x}, {1.0, x});
      printf(" d=%.9g\n", v);
    } catch (const std::exception& e) {
      printf(" EXC: %s\n", e.what());
      // narrow down the psi node
      double dt = 1.0;
      double range = std::asinh(0.0) + 2.0;
      for (int j = 0; j < 512; ++j) {
        double psi = -range + 2 * range * j / 511;
        try {
          shoot_to_time(fp, x, psi, dt);
        } catch (...) {
          double C = fp.value(x) * std::cosh(psi);
          printf("   failing node psi=%.17g C=%.17g f(x0)=%.17g\n", psi, C, fp.value(x));
          break;
        }
      }
      break;
    }
  }
  return 0;
}
