#include <cmath>
#include <cstdio>

#include "profile.hpp"
#include "shooting.hpp"

using namespace ltorus;

int main() {
  auto fp = Profile::plateau(0.5);
  setvbuf(stdout, nullptr, _IONBF, 0);
  double dt = 1.0;
  for (int n : {512, 1024}) {
    for (double range : {2.0, 4.0, 6.0}) {
      for (int j = 0; j < n; ++j) {
        double psi = -range + 2 * range * j / (n - 1);
        try {
          shoot_to_time(fp, 0.0, psi, dt);
        } catch (const std::exception& e) {
          double C = fp.value(0.0) * std::cosh(psi);
          printf("FAIL n=%d range=%g j=%d psi=%.17g C=%.17g\n", n, range, j, psi, C);
          return 1;
        }
      }
    }
  }
  printf("grid nodes all pass; trying continuous sweep near +-2.066\n");
  for (int j = 0; j <= 40000; ++j) {
    double psi = 2.0 + 0.2 * j / 40000.0;
    for (double sg : {1.0, -1.0}) {
      try {
        shoot_to_time(fp, 0.0, sg * psi, dt);
      } catch (const std::exception& e) {
        printf("FAIL psi=%.17g : %s\n", sg * psi, e.what());
        return 1;
      }
    }
  }
  printf("no failure found\n");
  return 0;
}
