#include "pfc/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "pfc/dual.hpp"

namespace pfc {
namespace {

void emit_rows(std::ostream& os, const char* kind, const SimplicialComplex3& c, bool vertex_kind,
               const std::vector<double>& values, const std::vector<double>* refs) {
  const int n = vertex_kind ? c.n_vertex_orbits() : c.n_edge_orbits();
  for (int o = 0; o < n; ++o) {
    const int id = vertex_kind ? c.vertex_orbit_rep(o) : c.edge_orbit_rep(o);
    os << kind << ',' << o << ',' << format_number(values[id]);
    if (refs != nullptr) {
      const double ref = (*refs)[id];
      os << ',' << format_number(ref) << ',';
      if (std::abs(ref) > 1e-300) {
        os << format_number(100.0 * std::abs(1.0 - values[id] / ref));
      }
    } else {
      os << ",,";
    }
    os << '\n';
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_curvature_csv(std::ostream& os, const SimplicialComplex3& c, const CurvatureReport& pf,
                         const SmoothReferences* smooth) {
  os << "entity-kind,orbit-id,value,smooth-reference,percent-error\n";
  emit_rows(os, "vertex-scalar", c, true, pf.vertex_scalar,
            smooth ? &smooth->vertex_scalar : nullptr);
  emit_rows(os, "edge-sectional", c, false, pf.edge_sectional,
            smooth ? &smooth->edge_sectional : nullptr);
  emit_rows(os, "edge-ricci", c, false, pf.edge_ricci, smooth ? &smooth->edge_ricci : nullptr);
  emit_rows(os, "edge-single-hinge", c, false, pf.edge_single_hinge,
            smooth ? &smooth->edge_sectional : nullptr);
  emit_rows(os, "edge-ricci-general", c, false, pf.edge_ricci_general,
            smooth ? &smooth->edge_ricci : nullptr);
}

void write_trajectory_csv(std::ostream& os, const SimplicialComplex3& c,
                          const FlowTrajectory& traj, const DualOptions& options) {
  os << "step,t,orbit-edge-id,length,ricci,average-scalar,max-deficit-deg,total-volume\n";
  for (const FlowSample& s : traj.samples) {
    const DualVolumeTable duals = build_dual_table(c, s.metric, options);
    const CurvatureReport rep = compute_curvature(c, s.metric, duals);
    const double max_deg = s.max_abs_deficit * 180.0 / M_PI;
    for (int o = 0; o < c.n_edge_orbits(); ++o) {
      const EdgeId e = c.edge_orbit_rep(o);
      os << s.step << ',' << format_number(s.t) << ',' << o << ','
         << format_number(s.metric.lengths[e]) << ',' << format_number(rep.edge_ricci[e]) << ','
         << format_number(rep.average_scalar) << ',' << format_number(max_deg) << ','
         << format_number(s.total_volume) << '\n';
    }
  }
}

}  // namespace pfc
