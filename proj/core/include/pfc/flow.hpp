#pragma once

#include <string>
#include <vector>

#include "pfc/curvature.hpp"

namespace pfc {

enum class Integrator { Euler, RK4 };

struct FlowConfig {
  bool normalized = false;
  double dt = 1e-3;
  int steps = 100;
  Integrator integrator = Integrator::RK4;
  DualOptions dual;
  double max_deficit = 0.5;     // radians; quality halt threshold
  double min_quality = 1e-10;   // Cayley-Menger ratio halt threshold
  int record_every = 1;
};

struct QualityReport {
  double max_eps_deg = 0.0;
  double mean_eps_deg = 0.0;
  double std_eps_deg = 0.0;
  double min_cm_quality = 0.0;  // min over tets of CM determinant / mean_length^6
  int delaunay_tet_violations = 0;
  int delaunay_tri_violations = 0;
};

struct FlowSample {
  int step = 0;
  double t = 0.0;
  EdgeLengthMetric metric;
  double total_volume = 0.0;
  double average_scalar = 0.0;
  double max_abs_deficit = 0.0;  // radians
  double min_quality = 0.0;
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;
  bool halted = false;
  int halt_step = -1;
  std::string halt_reason;
};

// d|l|/dt = |l| (-Rc_l + [normalized] R~_S / 3), evaluated on a fresh dual
// table for the given metric.
std::vector<double> flow_rhs(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                             const DualOptions& dual, bool normalized);

// Fixed-step integration; records every `record_every` steps (and always the
// initial and final states). Quality breaches and invalid intermediate
// metrics end the trajectory early with a diagnostic instead of throwing.
FlowTrajectory integrate_flow(const SimplicialComplex3& c, const EdgeLengthMetric& m0,
                              const FlowConfig& config);

QualityReport quality_report(const SimplicialComplex3& c, const EdgeLengthMetric& m);

}  // namespace pfc
