#include "profile.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "errors.hpp"
#include "quadrature.hpp"

namespace ltorus {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline double reduce_mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;  // floor rounding at the seam
  return r;
}

// C-infinity step S: [0,1] -> [0,1] built from sigma(v) = exp(-1/v).
// S(u) = sigma(u) / (sigma(u) + sigma(1-u)); all derivatives vanish at 0, 1.
struct Step {
  double s, ds, dds;
};

inline Step smooth_step(double u) {
  if (u <= 0.0) return {0.0, 0.0, 0.0};
  if (u >= 1.0) return {1.0, 0.0, 0.0};
  const double v = 1.0 - u;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / v);
  const double iu2 = 1.0 / (u * u), iv2 = 1.0 / (v * v);
  const double da = a * iu2;
  const double db_dv = b * iv2;
  const double dda = a * (iu2 * iu2 - 2.0 * iu2 / u);
  const double ddb_dvv = b * (iv2 * iv2 - 2.0 * iv2 / v);
  // A = sigma(u), B = sigma(1-u); B' and B'' are derivatives w.r.t. u.
  const double A = a, Ap = da, App = dda;
  const double B = b, Bp = -db_dv, Bpp = ddb_dvv;
  const double W = A + B;
  const double s = A / W;
  const double num1 = Ap * B - A * Bp;
  const double ds = num1 / (W * W);
  const double dds = (App * B - A * Bpp) / (W * W) - 2.0 * num1 * (Ap + Bp) / (W * W * W);
  return {s, ds, dds};
}

}  // namespace

Profile Profile::constant(double c) {
  if (!(c > 0.0)) throw InvalidArgument("constant profile requires c > 0");
  Profile p;
  p.kind_ = Kind::Constant;
  p.params_ = {c};
  p.f_min_ = p.f_max_ = c;
  p.max_locus_ = {{0.0, 1.0}};
  p.pieces_ = {{0.0, 1.0, c, c, Piece::Type::Constant}};
  p.min_feature_width_ = std::numeric_limits<double>::infinity();
  p.null_period_ = 1.0 / c;
  return p;
}

Profile Profile::cosine(double a, double b) {
  if (!(a > 0.0) || !(a - std::abs(b) > 0.0))
    throw InvalidArgument("cosine profile requires a > |b| so that f stays positive");
  Profile p;
  p.kind_ = Kind::Cosine;
  p.params_ = {a, b};
  p.f_min_ = a - std::abs(b);
  p.f_max_ = a + std::abs(b);
  const double x_max = b >= 0.0 ? 0.0 : 0.5;
  p.max_locus_ = {{x_max, x_max}};
  if (b >= 0.0) {
    p.pieces_ = {{0.0, 0.5, a + b, a - b, Piece::Type::Decreasing},
                 {0.5, 1.0, a - b, a + b, Piece::Type::Increasing}};
  } else {
    p.pieces_ = {{0.0, 0.5, a + b, a - b, Piece::Type::Increasing},
                 {0.5, 1.0, a - b, a + b, Piece::Type::Decreasing}};
  }
  p.min_feature_width_ = 0.5;
  p.null_period_ = p.inverse_speed_integral(0.0, 1.0);
  return p;
}

Profile Profile::plateau(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("plateau profile requires eps in (0,1)");
  Profile p;
  p.kind_ = Kind::Plateau;
  p.params_ = {eps};
  p.f_min_ = 0.5;
  p.f_max_ = 2.0;
  const double q = eps / 4.0;
  p.max_locus_ = {{2.0 * q, 1.0 - 2.0 * q}};
  p.pieces_ = {{0.0, q, 0.5, 0.5, Piece::Type::Constant},
               {q, 2.0 * q, 0.5, 2.0, Piece::Type::Increasing},
               {2.0 * q, 1.0 - 2.0 * q, 2.0, 2.0, Piece::Type::Constant},
               {1.0 - 2.0 * q, 1.0 - q, 2.0, 0.5, Piece::Type::Decreasing},
               {1.0 - q, 1.0, 0.5, 0.5, Piece::Type::Constant}};
  p.min_feature_width_ = q;
  p.null_period_ = p.inverse_speed_integral(0.0, 1.0);
  return p;
}

Profile::Eval Profile::eval(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return {params_[0], 0.0, 0.0};
    case Kind::Cosine: {
      const double a = params_[0], b = params_[1];
      const double s = std::sin(kTwoPi * x), c = std::cos(kTwoPi * x);
      return {a + b * c, -kTwoPi * b * s, -kTwoPi * kTwoPi * b * c};
    }
    case Kind::Plateau: {
      const double eps = params_[0];
      const double q = eps / 4.0;
      const double u = reduce_mod1(x);
      if (u <= q || u >= 1.0 - q) return {0.5, 0.0, 0.0};
      if (u >= 2.0 * q && u <= 1.0 - 2.0 * q) return {2.0, 0.0, 0.0};
      if (u < 2.0 * q) {
        const Step s = smooth_step((u - q) / q);
        return {0.5 + 1.5 * s.s, 1.5 * s.ds / q, 1.5 * s.dds / (q * q)};
      }
      const Step s = smooth_step((u - (1.0 - 2.0 * q)) / q);
      return {2.0 - 1.5 * s.s, -1.5 * s.ds / q, -1.5 * s.dds / (q * q)};
    }
  }
  return {1.0, 0.0, 0.0};
}

bool Profile::in_max_locus(double x, double tol) const {
  const double u = reduce_mod1(x);
  for (const auto& iv : max_locus_) {
    if (u >= iv.lo - tol && u <= iv.hi + tol) return true;
    // wrap: an interval touching 0 also touches 1
    if (iv.lo <= tol && u >= 1.0 + iv.lo - tol) return true;
    if (iv.hi >= 1.0 - tol && u <= iv.hi - 1.0 + tol) return true;
  }
  return false;
}

double Profile::null_period() const { return null_period_; }

double Profile::inverse_speed_integral(double a, double b) const {
  if (a == b) return 0.0;
  if (a > b) return -inverse_speed_integral(b, a);
  double total = 0.0;
  // whole periods are all equal
  const double span = b - a;
  if (span >= 1.0 && null_period_ > 0.0) {
    const double n = std::floor(span);
    total += n * null_period_;
    a += n;
  }
  // remainder, split on piece boundaries relative to the period containing a
  const double base = std::floor(a);
  for (const auto& piece : pieces_) {
    const double lo = std::max(a, base + piece.lo);
    const double hi = std::min(b, base + piece.hi);
    if (hi <= lo) continue;
    if (piece.type == Piece::Type::Constant) {
      total += (hi - lo) / piece.f_lo;
    } else {
      total += gk_integrate_scalar([this](double x) { return 1.0 / eval(x).f; }, lo, hi, 1e-13);
    }
  }
  // a second partial period may remain past the first period boundary
  const double cut = base + 1.0;
  if (b > cut) {
    for (const auto& piece : pieces_) {
      const double lo = std::max(cut, cut + piece.lo);
      const double hi = std::min(b, cut + piece.hi);
      if (hi <= lo) continue;
      if (piece.type == Piece::Type::Constant) {
        total += (hi - lo) / piece.f_lo;
      } else {
        total += gk_integrate_scalar([this](double x) { return 1.0 / eval(x).f; }, lo, hi, 1e-13);
      }
    }
  }
  return total;
}

std::string Profile::describe() const {
  char buf[96];
  switch (kind_) {
    case Kind::Constant:
      std::snprintf(buf, sizeof buf, "constant(%g)", params_[0]);
      break;
    case Kind::Cosine:
      std::snprintf(buf, sizeof buf, "cosine(%g, %g)", params_[0], params_[1]);
      break;
    case Kind::Plateau:
      std::snprintf(buf, sizeof buf, "plateau(%g)", params_[0]);
      break;
  }
  return buf;
}

}  // namespace ltorus
