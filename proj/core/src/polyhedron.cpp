#include "pfc/polyhedron.hpp"

#include <algorithm>
#include <cmath>

#include "pfc/errors.hpp"

namespace pfc {

ConvexRegion ConvexRegion::tetrahedron(const std::array<Vec3, 4>& p) {
  ConvexRegion r;
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) scale = std::max(scale, (p[i] - p[j]).norm());
  }
  if (!(scale > 0.0)) throw InvalidSimplexError("ConvexRegion: coincident tetrahedron vertices");
  r.scale_ = scale;

  static constexpr int kFace[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
  for (int f = 0; f < 4; ++f) {
    const Vec3& a = p[kFace[f][0]];
    const Vec3& b = p[kFace[f][1]];
    const Vec3& c = p[kFace[f][2]];
    Vec3 n = (b - a).cross(c - a);
    const int opp = 6 - kFace[f][0] - kFace[f][1] - kFace[f][2];
    if (n.dot(p[opp] - a) > 0.0) n = -n;  // make n outward
    const double nn = n.norm();
    if (!(nn > 0.0)) throw InvalidSimplexError("ConvexRegion: degenerate tetrahedron face");
    n /= nn;
    r.planes_.push_back({n, n.dot(a)});
  }
  return r;
}

double ConvexRegion::volume() const {
  const double tol = 1e-9 * scale_;

  // Coincident planes (a clip plane repeating a facet) must collapse to one,
  // or the shared face would be counted twice below.
  std::vector<Plane> planes;
  for (const Plane& pl : planes_) {
    bool dup = false;
    for (const Plane& seen : planes) {
      if ((seen.n - pl.n).norm() < 1e-9 && std::abs(seen.c - pl.c) < 10.0 * tol) {
        dup = true;
        break;
      }
    }
    if (!dup) planes.push_back(pl);
  }
  const int np = static_cast<int>(planes.size());

  // Enumerate candidate vertices from plane triples.
  std::vector<Vec3> pts;
  for (int i = 0; i < np; ++i) {
    for (int j = i + 1; j < np; ++j) {
      for (int k = j + 1; k < np; ++k) {
        Eigen::Matrix3d a;
        a.row(0) = planes[i].n.transpose();
        a.row(1) = planes[j].n.transpose();
        a.row(2) = planes[k].n.transpose();
        if (std::abs(a.determinant()) < 1e-12) continue;
        const Vec3 rhs(planes[i].c, planes[j].c, planes[k].c);
        const Vec3 x = a.partialPivLu().solve(rhs);
        if (!x.allFinite()) continue;
        bool feasible = true;
        for (const Plane& pl : planes) {
          if (pl.n.dot(x) > pl.c + tol) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        bool dup = false;
        for (const Vec3& q : pts) {
          if ((q - x).norm() < 10.0 * tol) {
            dup = true;
            break;
          }
        }
        if (!dup) pts.push_back(x);
      }
    }
  }
  if (pts.size() < 4) return 0.0;

  Vec3 centroid = Vec3::Zero();
  for (const Vec3& q : pts) centroid += q;
  centroid /= static_cast<double>(pts.size());

  // Sum pyramid volumes face by face; the centroid of a convex vertex set is
  // interior, so every per-face pyramid volume is nonnegative.
  double vol = 0.0;
  for (const Plane& pl : planes) {
    std::vector<Vec3> on;
    for (const Vec3& q : pts) {
      if (std::abs(pl.n.dot(q) - pl.c) < 10.0 * tol) on.push_back(q);
    }
    if (on.size() < 3) continue;

    // Order the face polygon by angle around the plane normal.
    Vec3 u = pl.n.unitOrthogonal();
    Vec3 v = pl.n.cross(u);
    Vec3 fc = Vec3::Zero();
    for (const Vec3& q : on) fc += q;
    fc /= static_cast<double>(on.size());
    std::sort(on.begin(), on.end(), [&](const Vec3& a, const Vec3& b) {
      return std::atan2(v.dot(a - fc), u.dot(a - fc)) <
             std::atan2(v.dot(b - fc), u.dot(b - fc));
    });

    double fv = 0.0;
    for (size_t i = 1; i + 1 < on.size(); ++i) {
      fv += (on[i] - on[0]).cross(on[i + 1] - on[0]).dot(on[0] - centroid) / 6.0;
    }
    vol += std::abs(fv);
  }
  return vol;
}

}  // namespace pfc
