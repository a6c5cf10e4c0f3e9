#include <doctest.h>

#include <array>

#include "pfc/polyhedron.hpp"

using namespace pfc;

namespace {

ConvexRegion unit_right_tet() {
  return ConvexRegion::tetrahedron(
      {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)});
}

}  // namespace

TEST_CASE("tetrahedron volume") {
  CHECK(unit_right_tet().volume() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("clip by a mid plane halves a symmetric tet") {
  auto r = unit_right_tet();
  // x <= 1/2 cuts off the apex region x > 1/2: remaining volume
  // 1/6 - (1/2)^3/6 = 7/48.
  r.clip({Vec3(1, 0, 0), 0.5});
  CHECK(r.volume() == doctest::Approx(7.0 / 48.0).epsilon(1e-12));
}

TEST_CASE("clip plane through a vertex keeps the region exact") {
  auto r = unit_right_tet();
  r.clip({Vec3(1, 1, 1).normalized(), 0.0});  // touches only the origin
  CHECK(r.volume() == doctest::Approx(0.0).epsilon(1e-12));
  auto s = unit_right_tet();
  s.clip({Vec3(-1, -1, -1).normalized(), 0.0});  // keeps everything
  CHECK(s.volume() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("duplicate of an existing facet does not change the volume") {
  auto r = unit_right_tet();
  r.clip({Vec3(0, 0, -1), 0.0});  // same half-space as the z >= 0 facet
  CHECK(r.volume() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("successive clips commute") {
  auto r = unit_right_tet();
  r.clip({Vec3(1, 0, 0), 0.4});
  r.clip({Vec3(0, 1, 0), 0.4});
  auto s = unit_right_tet();
  s.clip({Vec3(0, 1, 0), 0.4});
  s.clip({Vec3(1, 0, 0), 0.4});
  CHECK(r.volume() == doctest::Approx(s.volume()).epsilon(1e-12));
}
