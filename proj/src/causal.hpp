#pragma once

#include <vector>

#include "geodesic.hpp"
#include "profile.hpp"

namespace ltorus {

enum class Relation { Chronological, CausalBoundary, Unrelated };

// q is in the causal future of p iff t_q - t_p >= integral of dx/f between
// the spatial coordinates (the null travel time). Strict inequality is
// chronological; equality within tol is the boundary.
Relation causal_relation(const Profile& f, Point p, Point q, double tol = 1e-10);

struct Maximizer {
  double psi0;
  double length;
  Geodesic path;  // empty when paths are not materialized
};

struct DistanceResult {
  double value = 0.0;
  Relation relation = Relation::Unrelated;
  std::vector<Maximizer> maximizers;  // ties by ascending psi0
};

struct DistanceOptions {
  bool materialize_paths = true;
  double tie_tol = 1e-9;
  double value_agree_tol = 1e-9;  // refinement stopping
  int initial_nodes = 512;
  int max_nodes = 16384;
};

// Lorentzian distance on the universal cover together with the maximizing
// geodesics. Shoots the initial angle over a bracketing grid, locates roots
// of the endpoint map x(psi0) = x_q by sign change + bisection, and takes the
// maximal hitting proper time. The grid is doubled until the value is stable
// across two refinements.
DistanceResult distance(const Profile& f, Point p, Point q, const DistanceOptions& opt = {});

inline double distance_value(const Profile& f, Point p, Point q) {
  DistanceOptions o;
  o.materialize_paths = false;
  return distance(f, p, q, o).value;
}

struct PointSetDistance {
  double value;
  Point argmax;
  std::size_t index;
};

// sup over S of d(p, .) with its argmax; ties resolved in input order.
PointSetDistance distance_point_set(const Profile& f, Point p, const std::vector<Point>& S);

// Transversal crossings of two timelike paths (both t-monotone), endpoint
// coincidences excluded. Maximizing segments cross at most once.
int crossing_count(const Geodesic& a, const Geodesic& b);

}  // namespace ltorus
