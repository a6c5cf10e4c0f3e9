#include "pfc/flow.hpp"

#include <cmath>
#include <limits>

#include "pfc/errors.hpp"
#include "pfc/parallel.hpp"

namespace pfc {
namespace {

std::vector<double> rhs_from_report(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                                    const CurvatureReport& report, bool normalized) {
  const int n = static_cast<int>(c.edges().size());
  std::vector<double> rate(n);
  const double drive = normalized ? report.average_scalar / 3.0 : 0.0;
  for (int e = 0; e < n; ++e) {
    rate[e] = m.length(e) * (-report.edge_ricci[e] + drive);
  }
  return rate;
}

double min_cm_quality(const SimplicialComplex3& c, const EdgeLengthMetric& m) {
  double best = std::numeric_limits<double>::infinity();
  for (TetId t = 0; t < static_cast<TetId>(c.tets().size()); ++t) {
    const TetLengths tl = tet_lengths(c, m, t);
    const double mean = tl.mean_length();
    best = std::min(best, tl.cayley_menger() / std::pow(mean, 6));
  }
  return best;
}

}  // namespace

std::vector<double> flow_rhs(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                             const DualOptions& dual, bool normalized) {
  const CurvatureReport report = compute_curvature(c, m, build_dual_table(c, m, dual));
  return rhs_from_report(c, m, report, normalized);
}

FlowTrajectory integrate_flow(const SimplicialComplex3& c, const EdgeLengthMetric& m0,
                              const FlowConfig& config) {
  if (!(config.dt > 0.0) || config.steps < 0) {
    throw SolverError("flow needs dt > 0 and a nonnegative step count");
  }
  FlowTrajectory traj;
  EdgeLengthMetric m = m0;
  const int n = static_cast<int>(c.edges().size());

  const auto rhs = [&](const EdgeLengthMetric& metric) {
    validate_metric(c, metric);
    return flow_rhs(c, metric, config.dual, config.normalized);
  };
  const auto advanced = [&](const EdgeLengthMetric& base, const std::vector<double>& rate,
                            double h) {
    EdgeLengthMetric out = base;
    for (int e = 0; e < n; ++e) out.lengths[e] += h * rate[e];
    return out;
  };
  const auto record = [&](int step, double t, const EdgeLengthMetric& metric) {
    FlowSample s;
    s.step = step;
    s.t = t;
    s.metric = metric;
    const CurvatureReport report =
        compute_curvature(c, metric, build_dual_table(c, metric, config.dual));
    s.total_volume = report.total_volume;
    s.average_scalar = report.average_scalar;
    s.max_abs_deficit = 0.0;
    for (double eps : report.deficit) s.max_abs_deficit = std::max(s.max_abs_deficit, std::abs(eps));
    s.min_quality = min_cm_quality(c, metric);
    traj.samples.push_back(std::move(s));
    return traj.samples.back();
  };

  {
    const FlowSample& s0 = record(0, 0.0, m);
    if (s0.max_abs_deficit > config.max_deficit || s0.min_quality < config.min_quality) {
      traj.halted = true;
      traj.halt_step = 0;
      traj.halt_reason = "initial metric fails quality thresholds";
      return traj;
    }
  }

  for (int step = 1; step <= config.steps; ++step) {
    try {
      std::vector<double> increment;
      if (config.integrator == Integrator::Euler) {
        increment = rhs(m);
      } else {
        const auto k1 = rhs(m);
        const auto k2 = rhs(advanced(m, k1, 0.5 * config.dt));
        const auto k3 = rhs(advanced(m, k2, 0.5 * config.dt));
        const auto k4 = rhs(advanced(m, k3, config.dt));
        increment.resize(n);
        for (int e = 0; e < n; ++e) {
          increment[e] = (k1[e] + 2.0 * k2[e] + 2.0 * k3[e] + k4[e]) / 6.0;
        }
      }
      for (double r : increment) {
        if (!std::isfinite(r)) throw SolverError("non-finite flow rate");
      }
      m = advanced(m, increment, config.dt);
      validate_metric(c, m);
    } catch (const Error& err) {
      traj.halted = true;
      traj.halt_step = step;
      traj.halt_reason = err.what();
      return traj;
    }

    const bool last = step == config.steps;
    if (last || step % config.record_every == 0) {
      const FlowSample& s = record(step, step * config.dt, m);
      if (s.max_abs_deficit > config.max_deficit || s.min_quality < config.min_quality) {
        traj.halted = true;
        traj.halt_step = step;
        traj.halt_reason = s.min_quality < config.min_quality
                               ? "tetrahedron quality fell below threshold"
                               : "deficit angle exceeded threshold";
        return traj;
      }
    }
  }
  return traj;
}

QualityReport quality_report(const SimplicialComplex3& c, const EdgeLengthMetric& m) {
  QualityReport q;
  const int n = static_cast<int>(c.edges().size());
  std::vector<double> eps(n);
  parallel_for(0, n, [&](int e) { eps[e] = deficit_angle(c, m, e); });

  const double to_deg = 180.0 / M_PI;
  double sum = 0.0, sum2 = 0.0;
  for (double v : eps) {
    const double a = std::abs(v) * to_deg;
    q.max_eps_deg = std::max(q.max_eps_deg, a);
    sum += a;
    sum2 += a * a;
  }
  q.mean_eps_deg = sum / n;
  q.std_eps_deg = std::sqrt(std::max(0.0, sum2 / n - q.mean_eps_deg * q.mean_eps_deg));
  q.min_cm_quality = min_cm_quality(c, m);

  const DelaunayQuality dq = delaunay_quality(c, m);
  q.delaunay_tet_violations = dq.n_tet_violations;
  q.delaunay_tri_violations = dq.n_tri_violations;
  return q;
}

}  // namespace pfc
