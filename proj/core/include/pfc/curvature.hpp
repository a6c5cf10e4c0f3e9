#pragma once

#include <vector>

#include "pfc/dual.hpp"

namespace pfc {

// All piecewise-flat curvatures of a metric complex for a given dual table.
// Units: curvatures are 1/length^2, the action is length*radians.
struct CurvatureReport {
  DualScheme scheme = DualScheme::Voronoi;
  VvlMode vvl_mode = VvlMode::Clipped;
  std::vector<double> deficit;              // eps_h per edge (radians)
  std::vector<double> vertex_scalar;        // R_v per vertex
  std::vector<double> edge_sectional;       // K_l per edge
  std::vector<double> edge_ricci;           // Rc_l per edge
  std::vector<double> edge_single_hinge;    // baseline Khat_l = |l|eps_l/|V_l|
  std::vector<double> edge_ricci_general;   // experimental sin^2-weighted form
  double average_scalar = 0.0;              // volume-average scalar curvature
  double regge_action = 0.0;                // 2 sum_h |h| eps_h (fundamental domain)
  double total_volume = 0.0;                // fundamental-domain volume
};

// First-order integrated sectional curvature of a hinge for a plane meeting
// it at angle theta: cos(theta) * eps.
double integrated_sectional_hinge(double theta, double eps);

// R_v = (1/|V_v|) sum over edges at v of |h| eps_h (half-hinge rule).
double scalar_vertex(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                     const DualVolumeTable& duals, VertexId v);

// Volume average of the scalar curvature: (2/|S|) sum_h |h| eps_h.
double average_scalar_global(const SimplicialComplex3& c, const EdgeLengthMetric& m);

// 2 sum_h |h| eps_h over the fundamental domain; equals sum_v R_v |V_v|.
double regge_action(const SimplicialComplex3& c, const EdgeLengthMetric& m);

// K_l via the triangle-sum form: for each triangle (l, h1, h2) of star(l),
// (1/2)((d^2/|h1|) eps_1 + ((|l|-d)^2/|h2|) eps_2), plus |l| eps_l, all over
// |V_l|.
double sectional_edge(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                      const DualVolumeTable& duals, EdgeId e);

// K_l via the general hinge form (1/|V_l|)(|l| eps_l +
// sum_h |h inter V_l| cos^2(theta_h) eps_h); algebraically identical to
// sectional_edge, kept as an independent code path for cross-checking.
double sectional_edge_general(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                              const DualVolumeTable& duals, EdgeId e);

// Single-hinge baseline Khat_l = |l| eps_l / |V_l|.
double sectional_single_hinge(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                              const DualVolumeTable& duals, EdgeId e);

// Rc_l = (R_v1 + R_v2)/4 - K_l (half-edge split of l between its endpoints).
double ricci_edge(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                  const DualVolumeTable& duals, EdgeId e);

// Experimental direction-of-edge Ricci: (1/|V_l|) sum_h |h inter V_l|
// sin^2(theta_h) eps_h. Reported for comparison only; no convergence claim.
double ricci_general(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                     const DualVolumeTable& duals, EdgeId e);

CurvatureReport compute_curvature(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                                  const DualVolumeTable& duals);

}  // namespace pfc
