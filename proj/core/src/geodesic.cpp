#include "pfc/geodesic.hpp"

#include <cmath>

#include "pfc/errors.hpp"

namespace pfc {
namespace {

struct State {
  Vec3 x;
  Vec3 v;
};

State derivative(const SmoothChart& chart, const State& s) {
  const auto gamma = chart.christoffel(s.x);
  Vec3 acc;
  for (int k = 0; k < 3; ++k) acc[k] = -s.v.dot(gamma[k] * s.v);
  return {s.v, acc};
}

State rk4_step(const SmoothChart& chart, const State& s, double h) {
  const State k1 = derivative(chart, s);
  const State k2 = derivative(chart, {s.x + 0.5 * h * k1.x, s.v + 0.5 * h * k1.v});
  const State k3 = derivative(chart, {s.x + 0.5 * h * k2.x, s.v + 0.5 * h * k2.v});
  const State k4 = derivative(chart, {s.x + h * k3.x, s.v + h * k3.v});
  return {s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

// Integrates from p with initial velocity v0 over unit affine time.
// Optionally records the full trajectory.
Vec3 integrate(const SmoothChart& chart, const Vec3& p, const Vec3& v0, int steps,
               std::vector<State>* trajectory) {
  State s{p, v0};
  const double h = 1.0 / steps;
  if (trajectory) {
    trajectory->clear();
    trajectory->push_back(s);
  }
  for (int i = 0; i < steps; ++i) {
    s = rk4_step(chart, s, h);
    if (trajectory) trajectory->push_back(s);
  }
  return s.x;
}

}  // namespace

GeodesicRecord solve_geodesic(const SmoothChart& chart, const Vec3& p, const Vec3& q,
                              const GeodesicOptions& options) {
  const double scale = chart.domain_scale();
  const double tol = options.tol * scale;

  Vec3 v = q - p;  // coordinate straight-line seed
  Vec3 miss = integrate(chart, p, v, options.steps, nullptr) - q;
  int iter = 0;
  while (miss.norm() > tol) {
    if (++iter > options.max_newton) {
      throw SolverError("geodesic shooting did not converge between the given endpoints");
    }
    // Numeric Jacobian d(endpoint)/d(v0).
    Eigen::Matrix3d jac;
    const double dv = 1e-7 * std::max(v.norm(), scale);
    for (int j = 0; j < 3; ++j) {
      Vec3 vp = v;
      vp[j] += dv;
      jac.col(j) = (integrate(chart, p, vp, options.steps, nullptr) - q - miss) / dv;
    }
    const Vec3 delta = jac.fullPivLu().solve(miss);
    double damping = 1.0;
    for (;;) {
      const Vec3 trial = v - damping * delta;
      const Vec3 trial_miss = integrate(chart, p, trial, options.steps, nullptr) - q;
      if (trial_miss.norm() < miss.norm() || damping < 1e-4) {
        v = trial;
        miss = trial_miss;
        break;
      }
      damping *= 0.5;
    }
    if (!miss.allFinite()) {
      throw SolverError("geodesic shooting diverged between the given endpoints");
    }
  }

  std::vector<State> trajectory;
  integrate(chart, p, v, options.steps, &trajectory);

  GeodesicRecord record;
  record.points.reserve(trajectory.size());
  record.unit_tangents.reserve(trajectory.size());
  std::vector<double> speed(trajectory.size());
  for (size_t i = 0; i < trajectory.size(); ++i) {
    const Eigen::Matrix3d g = chart.metric(trajectory[i].x);
    const double s = std::sqrt(trajectory[i].v.dot(g * trajectory[i].v));
    speed[i] = s;
    record.points.push_back(trajectory[i].x);
    record.unit_tangents.push_back(trajectory[i].v / s);
  }
  // Composite trapezoid over the (near-constant) affine-parameter speed.
  double length = 0.0;
  const double h = 1.0 / options.steps;
  for (size_t i = 0; i + 1 < speed.size(); ++i) length += 0.5 * h * (speed[i] + speed[i + 1]);
  record.length = length;
  return record;
}

double average_ricci_along(const SmoothChart& chart, const GeodesicRecord& record) {
  // Affine parameterization makes the samples uniform in arclength, so the
  // weighted average reduces to a trapezoid mean.
  const size_t n = record.points.size();
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum += w * chart.ricci_dir(record.points[i], record.unit_tangents[i]);
  }
  return sum / static_cast<double>(n - 1);
}

}  // namespace pfc
