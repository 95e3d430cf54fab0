#pragma once

#include <string>
#include <vector>

namespace ltorus {

// Periodic warping function f (period 1) generating the metric
// g = -f(x)^2 dt^2 + dx^2 on the plane. Immutable after construction; all
// evaluations are pure and thread safe.
class Profile {
 public:
  enum class Kind { Constant, Cosine, Plateau };

  struct Eval {
    double f, df, ddf;
  };

  struct Interval {
    double lo, hi;  // subset of [0,1)
  };

  // Monotone/constant decomposition of one period; breakpoints ascending,
  // covering [0,1]. Used by the Clairaut-reduction shooting kernel.
  struct Piece {
    enum class Type { Constant, Increasing, Decreasing };
    double lo, hi;
    double f_lo, f_hi;
    Type type;
  };

  static Profile constant(double c);
  static Profile cosine(double a, double b);
  // f == 1/2 on [-eps/4, eps/4] and f == 2 on [eps/2, 1-eps/2], joined by
  // C-infinity exp(-1/x) blends. Requires 0 < eps < 1.
  static Profile plateau(double eps);

  Eval eval(double x) const;
  double value(double x) const { return eval(x).f; }

  Kind kind() const { return kind_; }
  double f_min() const { return f_min_; }
  double f_max() const { return f_max_; }
  const std::vector<Interval>& max_locus() const { return max_locus_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<double>& params() const { return params_; }
  std::string describe() const;

  bool in_max_locus(double x, double tol = 1e-12) const;

  // Width of the narrowest non-constant piece (infinite for constant
  // profiles). Integrator steps are capped against it so that adaptive
  // stepping cannot alias across the periodic structure.
  double min_feature_width() const { return min_feature_width_; }

  // P = integral over one period of dx/f, adaptive quadrature, |error|<=1e-10.
  double null_period() const;

  // Integral of 1/f over [a,b] (any real endpoints), exploiting periodicity.
  double inverse_speed_integral(double a, double b) const;

 private:
  Profile() = default;

  Kind kind_ = Kind::Constant;
  std::vector<double> params_;  // constant: {c}; cosine: {a,b}; plateau: {eps}
  double f_min_ = 1.0, f_max_ = 1.0;
  std::vector<Interval> max_locus_;
  std::vector<Piece> pieces_;
  double null_period_ = 0.0;  // cached at construction
  double min_feature_width_ = 0.0;
};

}  // namespace ltorus
