#pragma once

#include <array>
#include <vector>

#include "pfc/complex.hpp"

namespace pfc {

enum class DualScheme { Voronoi, Barycentric };

// How the per-endpoint edge volumes V_{v|l} are obtained:
//   Clipped         — exact half-space clipping of the dual cells against the
//                     slab between the two planes orthogonal to the edge.
//   SolidAngleApprox — the mean-radius solid-angle estimate
//                      V_{v|l} ~= 2*pi*V_v / (s_v * alpha_v), appropriate for
//                      near-homogeneous stars (used by the 3-sphere tables).
//   HalfVertexCell  — V_{v|l} = |V_v| / 2 exactly. Correct when every edge at
//                     v is covered by the orthogonal cut through v splitting
//                     v's cell in half, as in product metrics such as the
//                     3-cylinder (circle cross-sections times a flat factor).
enum class VvlMode { Clipped, SolidAngleApprox, HalfVertexCell };

struct DualOptions {
  DualScheme scheme = DualScheme::Voronoi;
  VvlMode vvl_mode = VvlMode::Clipped;
  // On quotient complexes, clip edge volumes only for one representative per
  // edge orbit and copy the result across the orbit (deck transformations are
  // isometries). No effect without a labeling.
  bool clip_by_orbit = true;
};

// One hinge contribution to an edge volume: the hinge edge, its restricted
// length |h inter V_l| (half-hinge rule: |h|/2 per containing triangle) and
// the cosine of the angle it makes with the base edge in that triangle.
struct HingeTerm {
  EdgeId hinge;
  double restriction;
  double cos_theta;
};

struct DualVolumeTable {
  DualScheme scheme = DualScheme::Voronoi;
  VvlMode vvl_mode = VvlMode::Clipped;
  std::vector<double> vertex_volume;              // |V_v| per vertex
  std::vector<double> edge_volume;                // |V_l| per edge
  std::vector<std::array<double, 2>> vvl;         // V_{v|l} for (EdgeKey.a, EdgeKey.b)
  std::vector<std::vector<HingeTerm>> hinge_terms;  // per edge, triangle-ordered
  std::vector<bool> obtuse_hinge_warning;         // per edge: some theta_h > pi/2

  double edge_cross_section(EdgeId e, double length) const { return edge_volume[e] / length; }
};

// Per-vertex dual volumes. Barycentric: a quarter of each incident
// tetrahedron. Voronoi: signed circumcentric pieces (sign calibrated against
// the barycentric decomposition), so the tessellation closure
// sum_v |V_v| = |S^3| holds even off-Delaunay.
std::vector<double> vertex_dual_volumes(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                                        DualScheme scheme);

// Full table: vertex volumes, clipped (or approximated) edge volumes with
// per-endpoint split, and hinge restriction terms.
DualVolumeTable build_dual_table(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                                 const DualOptions& options = {});

// Mean-radius estimate V_{v|l} ~= 2*pi*V_v / (s_v * alpha_v) where s_v is the
// number of tetrahedra at v and alpha_v their mean solid angle at v.
double solid_angle_vvl_approx(double vertex_volume, double s_v, double alpha_v);

struct DelaunayQuality {
  std::vector<bool> tet_circumcenter_inside;  // per tet
  std::vector<bool> tri_dual_edge_ok;         // per triangle: dual edge crosses
                                              // it in the outward direction
  int n_tet_violations = 0;
  int n_tri_violations = 0;

  bool clean() const { return n_tet_violations == 0 && n_tri_violations == 0; }
};

DelaunayQuality delaunay_quality(const SimplicialComplex3& c, const EdgeLengthMetric& m);

// Isometric development of star(v) into a single Euclidean chart: embeds the
// seed tetrahedron (smallest id in star(v) when unspecified), then unfolds
// neighbours breadth-first across shared triangles containing v. Cone
// defects of edges at v make the chart depend on the seed and unfolding
// order; both are deterministic. Exposed for edge volumes and tests.
struct StarChart {
  std::vector<TetId> tets;                       // star(v) in unfolding order, seed first
  std::vector<std::array<Vec3, 4>> positions;    // per chart tet, aligned with c.tets()[t]
  Vec3 at(const SimplicialComplex3& c, int chart_index, VertexId v) const;
};

StarChart develop_star(const SimplicialComplex3& c, const EdgeLengthMetric& m, VertexId v,
                       TetId seed = -1);

}  // namespace pfc
