#pragma once

#include <array>
#include <memory>

#include "pfc/simplex.hpp"

namespace pfc {

// A smooth Riemannian 3-manifold given by metric components in a single
// coordinate chart (periodic identifications are handled by the generators,
// which pick coordinate representatives; the metric functions are defined on
// all of R^3). Curvatures default to a finite-difference pipeline; charts
// with closed forms override them.
class SmoothChart {
 public:
  virtual ~SmoothChart() = default;

  virtual Eigen::Matrix3d metric(const Vec3& x) const = 0;

  // Scalar curvature R at x.
  virtual double scalar(const Vec3& x) const;
  // Ricci curvature Rc(u^, u^) for the g-normalized direction of `dir`.
  virtual double ricci_dir(const Vec3& x, const Vec3& dir) const;
  // Average sectional curvature of 2-planes g-orthogonal to `dir`:
  // R/2 - Rc(u^, u^) in three dimensions.
  double sectional_orthogonal(const Vec3& x, const Vec3& dir) const;

  // Characteristic coordinate extent, used to scale finite-difference steps
  // and solver tolerances.
  virtual double domain_scale() const { return 1.0; }
  double fd_step() const { return 1e-4 * domain_scale(); }

  // Christoffel symbols Gamma[k](i,j) by Richardson-extrapolated central
  // differences of the metric (exact for charts that override nothing else).
  std::array<Eigen::Matrix3d, 3> christoffel(const Vec3& x) const;

  struct RicciData {
    Eigen::Matrix3d ricci;  // covariant Ricci tensor
    double scalar;
  };
  RicciData numeric_ricci(const Vec3& x) const;
};

class EuclideanChart final : public SmoothChart {
 public:
  Eigen::Matrix3d metric(const Vec3&) const override { return Eigen::Matrix3d::Identity(); }
  double scalar(const Vec3&) const override { return 0.0; }
  double ricci_dir(const Vec3&, const Vec3&) const override { return 0.0; }
};

// Round 3-sphere of radius r in hyperspherical coordinates (chi, theta, phi).
class SphereChart final : public SmoothChart {
 public:
  explicit SphereChart(double r) : r_(r) {}
  Eigen::Matrix3d metric(const Vec3& x) const override;
  double scalar(const Vec3&) const override { return 6.0 / (r_ * r_); }
  double ricci_dir(const Vec3&, const Vec3&) const override { return 2.0 / (r_ * r_); }
  double radius() const { return r_; }

 private:
  double r_;
};

// S^2(r) x R in coordinates (theta, phi, z):
// ds^2 = r^2 dtheta^2 + r^2 sin^2(theta) dphi^2 + dz^2.
class CylinderChart final : public SmoothChart {
 public:
  explicit CylinderChart(double r) : r_(r) {}
  Eigen::Matrix3d metric(const Vec3& x) const override;
  double scalar(const Vec3&) const override { return 2.0 / (r_ * r_); }
  double ricci_dir(const Vec3& x, const Vec3& dir) const override;
  double radius() const { return r_; }
  double domain_scale() const override { return 1.0; }

 private:
  double r_;
};

// Polarized plane-wave metric in coordinates (x, y, theta):
// ds^2 = e^W dx^2 + e^-W dy^2 + dtheta^2 with W = w_amp * sin(theta).
// Unimodular in (x, y), so the volume element is 1.
class GowdyChart final : public SmoothChart {
 public:
  explicit GowdyChart(double w_amp = 0.1) : w_amp_(w_amp) {}
  Eigen::Matrix3d metric(const Vec3& x) const override;
  double scalar(const Vec3& x) const override;
  double ricci_dir(const Vec3& x, const Vec3& dir) const override;
  double domain_scale() const override { return 2.0 * M_PI; }
  double w_amp() const { return w_amp_; }

 private:
  double w_amp_;
};

// Nil geometry: ds^2 = dx^2 + dy^2 + (dz - x dy)^2. Left-invariant, so the
// curvature fields are x-independent in the orthonormal frame; components
// here are plain coordinate components.
class NilChart final : public SmoothChart {
 public:
  Eigen::Matrix3d metric(const Vec3& x) const override;
  double scalar(const Vec3& x) const override;
  double ricci_dir(const Vec3& x, const Vec3& dir) const override;
  double domain_scale() const override { return 1.0; }
};

}  // namespace pfc
