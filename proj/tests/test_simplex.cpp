#include <doctest.h>

#include <cmath>

#include "pfc/errors.hpp"
#include "pfc/simplex.hpp"

using namespace pfc;

namespace {

TetLengths regular_tet(double a) {
  TetLengths t;
  t.l = {a, a, a, a, a, a};
  return t;
}

}  // namespace

TEST_CASE("triangle area: Heron oracle") {
  TriLengths t{{3.0, 4.0, 5.0}};
  CHECK(triangle_area(t) == doctest::Approx(6.0).epsilon(1e-14));
  TriLengths eq{{1.0, 1.0, 1.0}};
  CHECK(triangle_area(eq) == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-14));
}

TEST_CASE("regular tetrahedron: volume, dihedral, solid angle") {
  const double a = 1.7;
  const auto t = regular_tet(a);
  CHECK(tet_volume(t) == doctest::Approx(a * a * a / (6.0 * std::sqrt(2.0))).epsilon(1e-14));
  for (int e = 0; e < 6; ++e) {
    CHECK(dihedral_angle(t, e) == doctest::Approx(std::acos(1.0 / 3.0)).epsilon(1e-13));
  }
  for (int v = 0; v < 4; ++v) {
    CHECK(solid_angle(t, v) ==
          doctest::Approx(3.0 * std::acos(1.0 / 3.0) - M_PI).epsilon(1e-13));
  }
}

TEST_CASE("right-corner tetrahedron: volume and dihedral oracle") {
  // Vertices (0,0,0), (1,0,0), (0,1,0), (0,0,1).
  TetLengths t;
  const double s = std::sqrt(2.0);
  t.l = {1.0, 1.0, 1.0, s, s, s};  // edges 01,02,03 then 12,13,23
  CHECK(tet_volume(t) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  // Dihedral along edge 01 (the x-axis): angle between the xy and xz planes.
  CHECK(dihedral_angle(t, TetLengths::edge_index(0, 1)) == doctest::Approx(M_PI / 2).epsilon(1e-13));
}

TEST_CASE("embed_tet reproduces the metric") {
  TetLengths t;
  t.l = {1.0, 1.1, 0.9, 1.2, 1.05, 0.95};
  const auto p = embed_tet(t);
  for (int e = 0; e < 6; ++e) {
    const auto [i, j] = kTetEdgeVerts[e];
    CHECK((p[i] - p[j]).norm() == doctest::Approx(t.l[e]).epsilon(1e-12));
  }
  CHECK(p[3][2] > 0.0);
}

TEST_CASE("degenerate and impossible simplices throw") {
  TriLengths flat{{1.0, 2.0, 3.0}};  // colinear
  CHECK_THROWS_AS(flat.validate(), InvalidSimplexError);
  TriLengths bad{{1.0, 1.0, 5.0}};  // triangle inequality
  CHECK_THROWS_AS(bad.validate(), InvalidSimplexError);
  TetLengths t = regular_tet(1.0);
  t.l[5] = 2.5;  // face 1-2-3 impossible
  CHECK_THROWS_AS(t.validate(), InvalidSimplexError);
  const auto flat_tet = [] {
    TetLengths q;
    q.l = {1.0, 1.0, std::sqrt(2.0), std::sqrt(2.0), 1.0, 1.0};  // planar square
    return q;
  }();
  CHECK(flat_tet.cayley_menger() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(flat_tet.validate(), InvalidSimplexError);
}

TEST_CASE("foot decomposition: right triangle oracle") {
  // Base l = 4, sides 3 (left) and 5 (right): altitude foot at the left vertex.
  const auto f = foot_decomposition(4.0, 3.0, 5.0);
  CHECK(f.d == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(f.z == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(f.cos_theta1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(f.cos_theta2 == doctest::Approx(4.0 / 5.0).epsilon(1e-14));
}

TEST_CASE("circumcenter: regular tet centered, flat-ish tet outside") {
  const auto t = regular_tet(1.0);
  const auto cc = circumcenter_tet(t);
  CHECK(cc.inside);
  for (double w : cc.weights) CHECK(w == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(cc.radius == doctest::Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-12));

  TetLengths sliver;
  sliver.l = {1.0, 1.0, 1.4, 1.0, 1.4, 1.4};
  const auto cs = circumcenter_tet(sliver);
  double wsum = 0.0;
  for (double w : cs.weights) wsum += w;
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
}
