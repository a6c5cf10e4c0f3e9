#include "pfc/chart.hpp"

#include <cmath>

#include "pfc/errors.hpp"

namespace pfc {
namespace {

using Mat3 = Eigen::Matrix3d;

// Richardson-extrapolated central difference of a matrix-valued function.
template <typename F>
Mat3 richardson_derivative(const F& f, const Vec3& x, int axis, double h) {
  Vec3 e = Vec3::Zero();
  e[axis] = 1.0;
  const Mat3 d1 = (f(x + h * e) - f(x - h * e)) / (2.0 * h);
  const double h2 = 0.5 * h;
  const Mat3 d2 = (f(x + h2 * e) - f(x - h2 * e)) / (2.0 * h2);
  return (4.0 * d2 - d1) / 3.0;
}

Mat3 inverse_metric(const Mat3& g) {
  Eigen::LLT<Mat3> llt(g);
  if (llt.info() != Eigen::Success) {
    throw ChartError("metric is not positive definite at the evaluation point");
  }
  return llt.solve(Mat3::Identity());
}

}  // namespace

std::array<Mat3, 3> SmoothChart::christoffel(const Vec3& x) const {
  const double h = fd_step();
  const auto g_at = [this](const Vec3& p) { return metric(p); };
  std::array<Mat3, 3> dg;
  for (int i = 0; i < 3; ++i) dg[i] = richardson_derivative(g_at, x, i, h);
  const Mat3 ginv = inverse_metric(metric(x));

  std::array<Mat3, 3> gamma;
  for (int k = 0; k < 3; ++k) {
    gamma[k].setZero();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double sum = 0.0;
        for (int l = 0; l < 3; ++l) {
          sum += ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        }
        gamma[k](i, j) = 0.5 * sum;
      }
    }
  }
  return gamma;
}

SmoothChart::RicciData SmoothChart::numeric_ricci(const Vec3& x) const {
  const double h = fd_step();
  // dGamma[m][k](i,j) = d_m Gamma^k_ij, Richardson over the full Christoffel
  // evaluation (which itself uses extrapolated metric derivatives).
  std::array<std::array<Mat3, 3>, 3> dgamma;
  for (int m = 0; m < 3; ++m) {
    Vec3 e = Vec3::Zero();
    e[m] = 1.0;
    const auto diff = [&](double step) {
      const auto gp = christoffel(x + step * e);
      const auto gm = christoffel(x - step * e);
      std::array<Mat3, 3> d;
      for (int k = 0; k < 3; ++k) d[k] = (gp[k] - gm[k]) / (2.0 * step);
      return d;
    };
    const auto d1 = diff(h);
    const auto d2 = diff(0.5 * h);
    for (int k = 0; k < 3; ++k) dgamma[m][k] = (4.0 * d2[k] - d1[k]) / 3.0;
  }
  const auto gamma = christoffel(x);

  // Ricci_{sn} = d_m Gamma^m_ns - d_n Gamma^m_ms
  //            + Gamma^m_ml Gamma^l_ns - Gamma^m_nl Gamma^l_ms.
  Mat3 ricci;
  for (int s = 0; s < 3; ++s) {
    for (int n = 0; n < 3; ++n) {
      double sum = 0.0;
      for (int m = 0; m < 3; ++m) {
        sum += dgamma[m][m](n, s) - dgamma[n][m](m, s);
        for (int l = 0; l < 3; ++l) {
          sum += gamma[m](m, l) * gamma[l](n, s) - gamma[m](n, l) * gamma[l](m, s);
        }
      }
      ricci(s, n) = sum;
    }
  }
  ricci = Mat3(0.5 * (ricci + ricci.transpose()));  // symmetrize FD noise

  const Mat3 ginv = inverse_metric(metric(x));
  RicciData out;
  out.ricci = ricci;
  out.scalar = (ginv * ricci).trace();
  return out;
}

double SmoothChart::scalar(const Vec3& x) const { return numeric_ricci(x).scalar; }

double SmoothChart::ricci_dir(const Vec3& x, const Vec3& dir) const {
  const Mat3 g = metric(x);
  const double norm2 = dir.dot(g * dir);
  if (!(norm2 > 0.0)) throw ChartError("zero direction for Ricci evaluation");
  return dir.dot(numeric_ricci(x).ricci * dir) / norm2;
}

double SmoothChart::sectional_orthogonal(const Vec3& x, const Vec3& dir) const {
  return 0.5 * scalar(x) - ricci_dir(x, dir);
}

Eigen::Matrix3d SphereChart::metric(const Vec3& x) const {
  const double chi = x[0];
  const double theta = x[1];
  Mat3 g = Mat3::Zero();
  const double r2 = r_ * r_;
  g(0, 0) = r2;
  g(1, 1) = r2 * std::sin(chi) * std::sin(chi);
  g(2, 2) = g(1, 1) * std::sin(theta) * std::sin(theta);
  return g;
}

Eigen::Matrix3d CylinderChart::metric(const Vec3& x) const {
  const double theta = x[0];
  Mat3 g = Mat3::Zero();
  g(0, 0) = r_ * r_;
  g(1, 1) = r_ * r_ * std::sin(theta) * std::sin(theta);
  g(2, 2) = 1.0;
  return g;
}

double CylinderChart::ricci_dir(const Vec3& x, const Vec3& dir) const {
  // Ric = (1/r^2) g restricted to the sphere factor; the z part is flat.
  const Mat3 g = metric(x);
  const double norm2 = dir.dot(g * dir);
  if (!(norm2 > 0.0)) throw ChartError("zero direction for Ricci evaluation");
  const double sphere2 = g(0, 0) * dir[0] * dir[0] + g(1, 1) * dir[1] * dir[1];
  return sphere2 / norm2 / (r_ * r_);
}

Eigen::Matrix3d GowdyChart::metric(const Vec3& x) const {
  const double w = w_amp_ * std::sin(x[2]);
  Mat3 g = Mat3::Zero();
  g(0, 0) = std::exp(w);
  g(1, 1) = std::exp(-w);
  g(2, 2) = 1.0;
  return g;
}

double GowdyChart::scalar(const Vec3& x) const {
  // R = -W'^2 / 2 with W = w sin(theta).
  const double wp = w_amp_ * std::cos(x[2]);
  return -0.5 * wp * wp;
}

double GowdyChart::ricci_dir(const Vec3& x, const Vec3& dir) const {
  // Ric = diag(-e^W W''/2, e^-W W''/2, -W'^2/2) in (x, y, theta).
  const double w = w_amp_ * std::sin(x[2]);
  const double wp = w_amp_ * std::cos(x[2]);
  const double wpp = -w_amp_ * std::sin(x[2]);
  const double ew = std::exp(w);
  const double norm2 = ew * dir[0] * dir[0] + dir[1] * dir[1] / ew + dir[2] * dir[2];
  if (!(norm2 > 0.0)) throw ChartError("zero direction for Ricci evaluation");
  const double ric = -0.5 * ew * wpp * dir[0] * dir[0] + 0.5 * wpp / ew * dir[1] * dir[1] -
                     0.5 * wp * wp * dir[2] * dir[2];
  return ric / norm2;
}

Eigen::Matrix3d NilChart::metric(const Vec3& p) const {
  const double x = p[0];
  Mat3 g = Mat3::Zero();
  g(0, 0) = 1.0;
  g(1, 1) = 1.0 + x * x;
  g(1, 2) = -x;
  g(2, 1) = -x;
  g(2, 2) = 1.0;
  return g;
}

double NilChart::scalar(const Vec3&) const { return -0.5; }

double NilChart::ricci_dir(const Vec3& p, const Vec3& dir) const {
  // With the orthonormal coframe (dx, dy, dz - x dy):
  // Ric = -1/2 dx^2 - 1/2 dy^2 + 1/2 (dz - x dy)^2.
  const double x = p[0];
  const double t3 = dir[2] - x * dir[1];
  const double norm2 = dir[0] * dir[0] + dir[1] * dir[1] + t3 * t3;
  if (!(norm2 > 0.0)) throw ChartError("zero direction for Ricci evaluation");
  return 0.5 * (-dir[0] * dir[0] - dir[1] * dir[1] + t3 * t3) / norm2;
}

}  // namespace pfc
