#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace ltorus {

// Adaptive Gauss-Kronrod 15(7) quadrature on [a,b].
//
// The integrand may be vector valued (M components share the abscissae), so
// paired integrals like (dt/dx, dtau/dx) cost one sweep of profile
// evaluations. Refinement bisects the segment with the largest Kronrod-Gauss
// error until the summed error estimate drops below abs_tol.
namespace gk15 {

inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWeightsKronrod = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kWeightsGauss = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

}  // namespace gk15

template <std::size_t M, class F>
struct GkSegment {
  double a, b;
  std::array<double, M> kronrod;
  double err;
};

// One GK15 pass over [a,b]; returns Kronrod values and max-component error.
template <std::size_t M, class F>
inline GkSegment<M, F> gk15_pass(F&& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  std::array<double, M> kron{};
  std::array<double, M> gauss{};
  std::array<double, M> v{};

  f(c, v.data());
  for (std::size_t m = 0; m < M; ++m) {
    kron[m] = gk15::kWeightsKronrod[7] * v[m];
    gauss[m] = gk15::kWeightsGauss[3] * v[m];
  }
  for (int i = 0; i < 7; ++i) {
    const double dx = h * gk15::kNodes[i];
    std::array<double, M> lo{}, hi{};
    f(c - dx, lo.data());
    f(c + dx, hi.data());
    for (std::size_t m = 0; m < M; ++m) {
      const double s = lo[m] + hi[m];
      kron[m] += gk15::kWeightsKronrod[i] * s;
      if (i % 2 == 1) gauss[m] += gk15::kWeightsGauss[i / 2] * s;
    }
  }
  double err = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    kron[m] *= h;
    gauss[m] *= h;
    err = std::max(err, std::abs(kron[m] - gauss[m]));
  }
  // |K-G| estimates the embedded Gauss error and badly overestimates the
  // Kronrod one; the usual sharpening is applied, capped by the raw value.
  err = std::min(err, std::pow(200.0 * err, 1.5));
  return {a, b, kron, err};
}

// Adaptive driver. f(x, out) fills out[0..M).
template <std::size_t M, class F>
inline std::array<double, M> gk_integrate(F&& f, double a, double b, double abs_tol,
                                          int max_segments = 2048) {
  std::array<double, M> total{};
  if (a == b) return total;

  // Worst segments are split first.
  struct Item {
    double a, b, err;
    std::array<double, M> val;
  };
  std::vector<Item> work;
  work.reserve(64);

  auto first = gk15_pass<M>(f, a, b);
  work.push_back({first.a, first.b, first.err, first.kronrod});

  int n_segments = 1;
  while (true) {
    double err_sum = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < work.size(); ++i) {
      err_sum += work[i].err;
      if (work[i].err > work[worst].err) worst = i;
    }
    if (err_sum <= abs_tol || n_segments >= max_segments) break;
    Item seg = work[worst];
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(worst));
    const double mid = 0.5 * (seg.a + seg.b);
    auto left = gk15_pass<M>(f, seg.a, mid);
    auto right = gk15_pass<M>(f, mid, seg.b);
    work.push_back({left.a, left.b, left.err, left.kronrod});
    work.push_back({right.a, right.b, right.err, right.kronrod});
    ++n_segments;
  }
  for (const auto& seg : work)
    for (std::size_t m = 0; m < M; ++m) total[m] += seg.val[m];
  return total;
}

template <class F>
inline double gk_integrate_scalar(F&& f, double a, double b, double abs_tol) {
  auto wrapped = [&f](double x, double* out) { out[0] = f(x); };
  return gk_integrate<1>(wrapped, a, b, abs_tol)[0];
}

}  // namespace ltorus
