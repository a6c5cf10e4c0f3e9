#pragma once

#include <Eigen/Dense>
#include <array>

namespace pfc {

using Vec3 = Eigen::Vector3d;

// The six edges of a tetrahedron on vertices {0,1,2,3}, in canonical order.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdgeVerts = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Edge lengths of a triangle: l[0]=|01|, l[1]=|02|, l[2]=|12|.
struct TriLengths {
  std::array<double, 3> l{};
  void validate() const;  // throws InvalidSimplexError
};

// Edge lengths of a tetrahedron indexed per kTetEdgeVerts.
struct TetLengths {
  std::array<double, 6> l{};

  double length(int i, int j) const;
  static int edge_index(int i, int j);
  TriLengths face(int skip) const;  // lengths of the face opposite vertex `skip`
  double cayley_menger() const;     // 288 V^2
  double mean_length() const;
  void validate() const;  // throws InvalidSimplexError
};

// Decomposition of triangle (l, h1, h2) by the foot of its altitude onto l:
// d = signed distance from the l/h1 vertex to the foot, z = altitude.
// cos_theta1 = d/|h1| and cos_theta2 = (|l|-d)/|h2| are the angles h1 and h2
// make with l. d < 0 or d > |l| when a base angle is obtuse (not clamped).
struct FootDecomposition {
  double d = 0.0;
  double z = 0.0;
  double cos_theta1 = 0.0;
  double cos_theta2 = 0.0;
};

// Circumcenter of a tetrahedron in barycentric weights (may be negative
// when the center is outside; `inside` reports containment).
struct TetCircumcenter {
  std::array<double, 4> weights{};
  double radius = 0.0;
  bool inside = false;
};

double triangle_area(const TriLengths& t);
double tet_volume(const TetLengths& t);

// Isometric embedding with v0 at the origin, v1 on +x, v2 in the upper
// half of the xy-plane and v3 at positive z.
std::array<Vec3, 4> embed_tet(const TetLengths& t);

// Interior dihedral angle along edge `edge_index`, in radians, in (0, pi).
double dihedral_angle(const TetLengths& t, int edge_index);

// Solid angle subtended at `vertex_index`: sum of the three dihedral
// angles at the vertex minus pi.
double solid_angle(const TetLengths& t, int vertex_index);

FootDecomposition foot_decomposition(double len_l, double len_h1, double len_h2);

TetCircumcenter circumcenter_tet(const TetLengths& t);

inline constexpr std::array<double, 4> barycenter_tet() {
  return {0.25, 0.25, 0.25, 0.25};
}

}  // namespace pfc
