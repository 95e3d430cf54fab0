#pragma once

#include <optional>

#include "geodesic.hpp"
#include "profile.hpp"

namespace ltorus {

// Endpoint-map kernel used by the distance solver. Evaluates the state of the
// geodesic from (t=0, x0, psi0) at the first parameter where the coordinate
// time reaches dt (dt >= 0), without materializing a path.
//
// The conservation law f(x) cosh(psi) = C reduces long integrations to
// quadrature: monotone orbits (C > f_max) are handled entirely by x-space
// quadrature and inversion, oscillating orbits (C < f_max) advance whole
// half-oscillations between turning points with only fractional segments
// integrated by RK45. Near-critical oscillating orbits and degenerate turning
// points fall back to direct integration.
struct ShootResult {
  double x;
  double psi;
  double tau;
};

ShootResult shoot_to_time(const Profile& f, double x0, double psi0, double dt);

struct PeriodAdvance {
  double dt;
  double dtau;
};

// Advance of (t, tau) across [a, b] along a monotone orbit of Clairaut
// constant C > max f on [a, b]. Exact on constant pieces.
PeriodAdvance span_integrals(const Profile& f, double C, double a, double b);

// One full spatial period; exact for any base point. Requires C > f_max.
PeriodAdvance monotone_period_integrals(const Profile& f, double C);

// The unique x-monotone geodesic from (0, x_p) to (dt, x_q), solved as a
// boundary-value problem in the Clairaut constant: t(C) = dt with t given by
// quadrature over the span. Well conditioned arbitrarily close to the
// separatrix C = f_max, where shooting in the initial angle degenerates.
// Empty when no monotone connector exists (the span maximum of f is attained
// only at an endpoint and the travel time limit is still below dt).
struct MonotoneConnector {
  double clairaut;
  double psi0;  // initial angle at x_p
  double length;
};

std::optional<MonotoneConnector> monotone_connector(const Profile& f, double x_p, double x_q,
                                                    double dt);

}  // namespace ltorus
