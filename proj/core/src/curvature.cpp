#include "pfc/curvature.hpp"

#include <cmath>

#include "pfc/errors.hpp"
#include "pfc/parallel.hpp"

namespace pfc {
namespace {

double hinge_action_sum(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                        const std::vector<double>& deficit) {
  double sum = 0.0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(c.edges().size()); ++e) {
    sum += m.length(e) * deficit[e];
  }
  return sum;
}

std::vector<double> all_deficits(const SimplicialComplex3& c, const EdgeLengthMetric& m) {
  std::vector<double> deficit(c.edges().size());
  parallel_for(0, static_cast<int>(c.edges().size()),
               [&](int e) { deficit[e] = deficit_angle(c, m, e); });
  return deficit;
}

double vertex_scalar_from(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                          const std::vector<double>& deficit, const DualVolumeTable& duals,
                          VertexId v) {
  const double vol = duals.vertex_volume[v];
  if (!(vol > 0.0)) throw DegenerateDualError("non-positive dual volume at a vertex");
  double sum = 0.0;
  for (EdgeId e : c.edges_at_vertex(v)) sum += m.length(e) * deficit[e];
  return sum / vol;
}

double sectional_from(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                      const std::vector<double>& deficit, const DualVolumeTable& duals,
                      EdgeId e) {
  const double vol = duals.edge_volume[e];
  if (!(vol > 0.0)) throw DegenerateDualError("non-positive dual volume at an edge");
  const double length = m.length(e);
  double sum = length * deficit[e];
  for (TriId f : c.tris_at_edge(e)) {
    const EdgeKey key = c.edges()[e];
    VertexId w = -1;
    for (VertexId u : c.triangles()[f]) {
      if (u != key.a && u != key.b) w = u;
    }
    const EdgeId h1 = c.edge_id(key.a, w);
    const EdgeId h2 = c.edge_id(key.b, w);
    const FootDecomposition fd = foot_decomposition(length, m.length(h1), m.length(h2));
    sum += 0.5 * (fd.d * fd.d / m.length(h1) * deficit[h1] +
                  (length - fd.d) * (length - fd.d) / m.length(h2) * deficit[h2]);
  }
  return sum / vol;
}

double sectional_general_from(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                              const std::vector<double>& deficit, const DualVolumeTable& duals,
                              EdgeId e) {
  const double vol = duals.edge_volume[e];
  if (!(vol > 0.0)) throw DegenerateDualError("non-positive dual volume at an edge");
  double sum = m.length(e) * deficit[e];
  for (const HingeTerm& t : duals.hinge_terms[e]) {
    sum += t.restriction * t.cos_theta * t.cos_theta * deficit[t.hinge];
  }
  return sum / vol;
}

double ricci_general_from(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                          const std::vector<double>& deficit, const DualVolumeTable& duals,
                          EdgeId e) {
  const double vol = duals.edge_volume[e];
  if (!(vol > 0.0)) throw DegenerateDualError("non-positive dual volume at an edge");
  double sum = 0.0;
  for (const HingeTerm& t : duals.hinge_terms[e]) {
    sum += t.restriction * (1.0 - t.cos_theta * t.cos_theta) * deficit[t.hinge];
  }
  return sum / vol;
}

}  // namespace

double integrated_sectional_hinge(double theta, double eps) { return std::cos(theta) * eps; }

double scalar_vertex(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                     const DualVolumeTable& duals, VertexId v) {
  double sum = 0.0;
  for (EdgeId e : c.edges_at_vertex(v)) sum += m.length(e) * deficit_angle(c, m, e);
  const double vol = duals.vertex_volume[v];
  if (!(vol > 0.0)) throw DegenerateDualError("non-positive dual volume at a vertex");
  return sum / vol;
}

double average_scalar_global(const SimplicialComplex3& c, const EdgeLengthMetric& m) {
  // Covering sums cancel the multiplicity, so compute both over the covering.
  double action = 0.0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(c.edges().size()); ++e) {
    action += m.length(e) * deficit_angle(c, m, e);
  }
  double vol = 0.0;
  for (TetId t = 0; t < static_cast<TetId>(c.tets().size()); ++t) {
    vol += tet_volume(tet_lengths(c, m, t));
  }
  return 2.0 * action / vol;
}

double regge_action(const SimplicialComplex3& c, const EdgeLengthMetric& m) {
  double action = 0.0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(c.edges().size()); ++e) {
    action += m.length(e) * deficit_angle(c, m, e);
  }
  return 2.0 * action / c.multiplicity();
}

double sectional_edge(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                      const DualVolumeTable& duals, EdgeId e) {
  return sectional_from(c, m, all_deficits(c, m), duals, e);
}

double sectional_edge_general(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                              const DualVolumeTable& duals, EdgeId e) {
  return sectional_general_from(c, m, all_deficits(c, m), duals, e);
}

double sectional_single_hinge(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                              const DualVolumeTable& duals, EdgeId e) {
  const double vol = duals.edge_volume[e];
  if (!(vol > 0.0)) throw DegenerateDualError("non-positive dual volume at an edge");
  return m.length(e) * deficit_angle(c, m, e) / vol;
}

double ricci_edge(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                  const DualVolumeTable& duals, EdgeId e) {
  const auto deficit = all_deficits(c, m);
  const EdgeKey key = c.edges()[e];
  const double r1 = vertex_scalar_from(c, m, deficit, duals, key.a);
  const double r2 = vertex_scalar_from(c, m, deficit, duals, key.b);
  return 0.25 * (r1 + r2) - sectional_from(c, m, deficit, duals, e);
}

double ricci_general(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                     const DualVolumeTable& duals, EdgeId e) {
  return ricci_general_from(c, m, all_deficits(c, m), duals, e);
}

CurvatureReport compute_curvature(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                                  const DualVolumeTable& duals) {
  CurvatureReport report;
  report.scheme = duals.scheme;
  report.vvl_mode = duals.vvl_mode;
  report.deficit = all_deficits(c, m);

  report.vertex_scalar.resize(c.n_vertices());
  parallel_for(0, c.n_vertices(), [&](int v) {
    report.vertex_scalar[v] = vertex_scalar_from(c, m, report.deficit, duals, v);
  });

  const int n_edges = static_cast<int>(c.edges().size());
  report.edge_sectional.resize(n_edges);
  report.edge_ricci.resize(n_edges);
  report.edge_single_hinge.resize(n_edges);
  report.edge_ricci_general.resize(n_edges);
  parallel_for(0, n_edges, [&](int e) {
    const double k = sectional_from(c, m, report.deficit, duals, e);
    report.edge_sectional[e] = k;
    const EdgeKey key = c.edges()[e];
    report.edge_ricci[e] =
        0.25 * (report.vertex_scalar[key.a] + report.vertex_scalar[key.b]) - k;
    report.edge_single_hinge[e] = m.length(e) * report.deficit[e] / duals.edge_volume[e];
    report.edge_ricci_general[e] = ricci_general_from(c, m, report.deficit, duals, e);
  });

  double covering_vol = 0.0;
  for (TetId t = 0; t < static_cast<TetId>(c.tets().size()); ++t) {
    covering_vol += tet_volume(tet_lengths(c, m, t));
  }
  const double action = hinge_action_sum(c, m, report.deficit);
  report.total_volume = covering_vol / c.multiplicity();
  report.average_scalar = 2.0 * action / covering_vol;
  report.regge_action = 2.0 * action / c.multiplicity();
  return report;
}

}  // namespace pfc
