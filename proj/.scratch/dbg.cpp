#include <cmath>
#include <cstdio>

#include "geodesic.hpp"
#include "profile.hpp"
#include "shooting.hpp"

using namespace ltorus;

int main() {
  auto fp = Profile::plateau(0.5);
  double x0 = 0.5, psi0 = 1.2;
  const double C = fp.value(x0) * std::cosh(psi0);
  printf("C = %.15g\n", C);

  auto g = flow(fp, {0, x0, psi0, 0}, StopCondition::time_at_least(37.0));
  printf("flow: end x=%.12g tau=%.12g psi=%.12g drift=%.3g nsamples=%zu\n", g.back().x,
         g.back().tau, g.back().psi, g.drift, g.samples.size());
  for (size_t i = 0; i < g.samples.size(); i += g.samples.size() / 8) {
    const auto& s = g.samples[i];
    printf("  tau=%8.4f t=%9.5f x=%9.5f psi=%8.5f C=%.10g\n", s.tau, s.t, s.x, s.psi,
           fp.value(s.x) * std::cosh(s.psi));
  }
  auto per = monotone_period_integrals(fp, C);
  printf("period integrals: dt=%.15g dtau=%.15g\n", per.dt, per.dtau);

  // direct check: integrate dt/dx over one period by brute Simpson
  int N = 200001;
  double h = 1.0 / (N - 1), acc = 0, acct = 0;
  for (int i = 0; i < N; ++i) {
    double x = i * h;
    double fx = fp.value(x);
    double w = (i == 0 || i == N - 1) ? 1 : (i % 2 ? 4 : 2);
    acc += w * C / (fx * std::sqrt(C * C - fx * fx));
    acct += w * fx / std::sqrt(C * C - fx * fx);
  }
  printf("simpson dt=%.15g dtau=%.15g\n", acc * h / 3.0, acct * h / 3.0);
  return 0;
}
