#pragma once

#include <memory>
#include <vector>

#include "pfc/chart.hpp"
#include "pfc/complex.hpp"
#include "pfc/curvature.hpp"
#include "pfc/geodesic.hpp"

namespace pfc {

enum class SphereModel { Cell5, Cell16, Cell600 };

enum class GowdyStyle { Cubic, Isosceles };

// Smooth-manifold reference values sampled where the piecewise-flat entities
// live: scalar curvature at vertices, averaged orthogonal-sectional and
// Ricci curvature along each edge's geodesic. Constant across orbits.
struct SmoothReferences {
  std::vector<double> vertex_scalar;   // per covering vertex
  std::vector<double> edge_sectional;  // per covering edge
  std::vector<double> edge_ricci;      // per covering edge
};

struct GeneratedTriangulation {
  SimplicialComplex3 complex;
  EdgeLengthMetric metric;
  std::shared_ptr<SmoothChart> chart;  // null when closed forms are used
  std::vector<Vec3> chart_points;      // per vertex; empty for sphere models
  double rescale = 1.0;                // global length factor applied
  SmoothReferences smooth;
};

// Regular 3-sphere triangulations (boundary complexes of 4-polytopes with
// tetrahedral facets), edge length fixed by matching the total volume of
// the round sphere: N_tet * l^3/(6*sqrt(2)) = 2*pi^2*r^3.
GeneratedTriangulation generate_sphere_cell(SphereModel model, double r);

// S^2 x S^1: stacked icosahedral spheres of radius r joined by prisms split
// into tetrahedra. Icosahedron edge a = 2*sqrt(pi/(5*sqrt(3)))*r (area
// match), ring separation b_len, diagonals c = sqrt(a^2 + b^2).
GeneratedTriangulation generate_cylinder(double r, double b_len, int n_rings);

// Flat 3-torus: n^3 cubes of size `cell`, six tetrahedra per cube.
GeneratedTriangulation generate_flat_torus(int n, double cell = 1.0);

// Plane-wave torus: 3x3 covering in x and y, `blocks` cubes along the wave
// coordinate, six tetrahedra per cube. Cubic: translated lattice planes;
// Isosceles: xy-planes sheared by half a cell per wave step (requires an
// even block count). Extents <= 0 select the default 6/blocks, which keeps
// the blocks near-cubic at every resolution and reproduces the published
// deficit-angle statistics.
GeneratedTriangulation generate_gowdy(int blocks, GowdyStyle style, double w_amp = 0.1,
                                      double x_extent = 0.0, double y_extent = 0.0);

// Twisted torus on Nil geometry, `blocks` slabs across the twisted
// direction. The slab completing each period interpolates between the
// sheared lattice patterns and has its own tetrahedron structure.
// yz_extent <= 0 selects the default 1/blocks, which keeps the blocks
// cubic at every resolution and reproduces the published deficit-angle
// statistics.
GeneratedTriangulation generate_nil3(int blocks, double yz_extent = 0.0);

struct ErrorStats {
  double mean_percent = 0.0;
  double std_percent = 0.0;
  int count = 0;     // orbit entities included
  int excluded = 0;  // zero-reference entities skipped
};

// Per-orbit percent errors 100*|1 - value/reference| and their statistics.
struct ErrorReport {
  ErrorStats vertex_scalar;
  ErrorStats edge_sectional;
  ErrorStats edge_ricci;
  ErrorStats edge_single_hinge;   // baseline vs the sectional reference
  ErrorStats edge_ricci_general;  // experimental form vs the Ricci reference
  std::vector<double> vertex_percent;        // per vertex orbit (NaN = excluded)
  std::vector<double> sectional_percent;     // per edge orbit
  std::vector<double> ricci_percent;         // per edge orbit
  std::vector<double> single_hinge_percent;  // per edge orbit
};

ErrorReport error_report(const SimplicialComplex3& c, const CurvatureReport& pf,
                         const SmoothReferences& smooth);

}  // namespace pfc
