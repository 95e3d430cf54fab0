#pragma once

#include <vector>

#include "profile.hpp"
#include "rk45.hpp"

namespace ltorus {

struct Point {
  double t, x;
};

// Point of the unit future observer bundle in hyperbolic-angle coordinates.
// The represented velocity is (cosh psi / f(x), sinh psi), which satisfies
// g(v,v) = -1 identically.
struct PhaseState {
  double t = 0, x = 0, psi = 0, tau = 0;
};

struct IntegratorOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
};

struct StopCondition {
  enum class Kind { TauAtLeast, TimeAtLeast, SpaceAtLeast, SpaceAtMost };
  Kind kind;
  double value;
  double tau_budget = 1e5;  // for coordinate stops

  static StopCondition tau_at_least(double T) { return {Kind::TauAtLeast, T, 1e5}; }
  static StopCondition time_at_least(double t1) { return {Kind::TimeAtLeast, t1, 1e5}; }
  static StopCondition space_at_least(double x1) { return {Kind::SpaceAtLeast, x1, 1e5}; }
  static StopCondition space_at_most(double x1) { return {Kind::SpaceAtMost, x1, 1e5}; }
};

// Densely sampled unit-speed timelike geodesic. Samples are the accepted
// integrator steps; states in between come from cubic Hermite interpolation
// with local error at the integrator tolerance.
struct Geodesic {
  struct Sample {
    double tau;
    double t, x, psi;
    double dt, dx, dpsi;
  };
  std::vector<Sample> samples;
  double clairaut = 0.0;
  double drift = 0.0;  // max relative Clairaut drift observed over samples

  const Sample& front() const { return samples.front(); }
  const Sample& back() const { return samples.back(); }
  double length() const { return samples.back().tau - samples.front().tau; }
  PhaseState state_at(double tau) const;
  // x as a function of t (t is strictly increasing along the path)
  double x_at_time(double t) const;
};

// f(x) cosh(psi): conserved along geodesics, always >= f(x) >= f_min.
double clairaut_constant(const Profile& f, const PhaseState& s);

// Integrates the first-order system
//   dt/dtau = cosh(psi)/f,  dx/dtau = sinh(psi),  dpsi/dtau = -(f'/f) cosh(psi)
// until the stop condition, which ends the path exactly at the stop event.
// Throws UnreachableStop (carrying the partial path) if a coordinate stop is
// not crossed within the tau budget.
Geodesic flow(const Profile& f, const PhaseState& s0, const StopCondition& stop,
              const IntegratorOptions& opt = {});

class FlowUnreachable : public UnreachableStop {
 public:
  FlowUnreachable(const std::string& what, Geodesic partial)
      : UnreachableStop(what), partial_path(std::move(partial)) {}
  Geodesic partial_path;
};

// Zeros in (0, T] of the perpendicular Jacobi scalar j along the geodesic
// from s0, with j(0) = 0, j'(0) = 1 and j'' + (f''/f) j = 0 evaluated along
// the path. Each zero is a sign change refined to 1e-10 in tau.
std::vector<double> jacobi_zeros(const Profile& f, const PhaseState& s0, double T,
                                 const IntegratorOptions& opt = {});

struct NullPath {
  enum class Branch { Plus, Minus };
  Branch branch;
  std::vector<Point> samples;  // future directed, t strictly increasing
  Point end() const { return samples.back(); }
};

struct NullStop {
  enum class Kind { TimeAtLeast, SpaceReaches };
  Kind kind;
  double value;
  static NullStop time_at_least(double t1) { return {Kind::TimeAtLeast, t1}; }
  static NullStop space_reaches(double x1) { return {Kind::SpaceReaches, x1}; }
};

// Lightlike curve through p: dx/dt = +f(x) (plus branch) or -f(x) (minus).
NullPath null_flow(const Profile& f, Point p, NullPath::Branch branch, NullStop stop,
                   const IntegratorOptions& opt = {});

struct RotationNumbers {
  double m_minus, m_plus;              // +-1/P with P the null period
  double slope_minus, slope_plus;      // long-run null_flow displacement oracle
};

// Asymptotic slopes dx/dt of the two null foliations, cross-validated against
// a null integration spanning at least min_t_span in t.
RotationNumbers rotation_numbers(const Profile& f, double min_t_span = 1000.0);

}  // namespace ltorus
