#pragma once

#include <vector>

#include "pfc/chart.hpp"

namespace pfc {

struct GeodesicOptions {
  int steps = 64;          // RK4 steps over the unit affine parameter
  int max_newton = 50;     // shooting iterations
  double tol = 1e-10;      // endpoint miss, relative to domain scale
};

struct GeodesicRecord {
  double length = 0.0;
  std::vector<Vec3> points;         // positions at the affine sample times
  std::vector<Vec3> unit_tangents;  // g-normalized tangents at the samples
};

// Shortest-geodesic boundary value problem by single shooting: RK4 on the
// geodesic equation, damped Newton on the initial velocity seeded by the
// coordinate straight line. Throws SolverError on non-convergence.
GeodesicRecord solve_geodesic(const SmoothChart& chart, const Vec3& p, const Vec3& q,
                              const GeodesicOptions& options = {});

// Arclength-weighted average of Rc(t^, t^) along a solved geodesic.
double average_ricci_along(const SmoothChart& chart, const GeodesicRecord& record);

}  // namespace pfc
