#pragma once

#include <array>
#include <vector>

#include "pfc/simplex.hpp"

namespace pfc {

// Half-space n.dot(x) <= c.
struct Plane {
  Vec3 n;
  double c;
};

// Convex region kept as an intersection of half-spaces. Volume is evaluated
// by enumerating plane-triple vertices, which stays exact-in-structure when
// clip planes pass through region vertices (a common case for dual cells).
class ConvexRegion {
 public:
  // Region bounded by the four faces of a positively oriented tetrahedron.
  static ConvexRegion tetrahedron(const std::array<Vec3, 4>& p);

  void clip(const Plane& plane) { planes_.push_back(plane); }
  double volume() const;

  const std::vector<Plane>& planes() const { return planes_; }

 private:
  std::vector<Plane> planes_;
  double scale_ = 1.0;  // characteristic length for tolerances
};

}  // namespace pfc
