#include "pfc/simplex.hpp"

#include <cmath>
#include <string>

#include "pfc/errors.hpp"

namespace pfc {

namespace {

// Relative determinant threshold below which a tetrahedron counts as degenerate.
constexpr double kCmRelTol = 1e-14;

void check_positive(double l, const char* what) {
  if (!(l > 0.0) || !std::isfinite(l)) {
    throw InvalidSimplexError(std::string(what) + " length must be positive, got " +
                              std::to_string(l));
  }
}

}  // namespace

void TriLengths::validate() const {
  for (double v : l) check_positive(v, "triangle edge");
  const double a = l[0], b = l[1], c = l[2];
  if (!(a + b > c && a + c > b && b + c > a)) {
    throw InvalidSimplexError("triangle inequality violated: " + std::to_string(a) + ", " +
                              std::to_string(b) + ", " + std::to_string(c));
  }
}

double TetLengths::length(int i, int j) const { return l[edge_index(i, j)]; }

int TetLengths::edge_index(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int e = 0; e < 6; ++e) {
    if (kTetEdgeVerts[e][0] == i && kTetEdgeVerts[e][1] == j) return e;
  }
  throw NotFoundError("no tetrahedron edge for vertex pair " + std::to_string(i) + "," +
                      std::to_string(j));
}

TriLengths TetLengths::face(int skip) const {
  std::array<int, 3> v{};
  int n = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != skip) v[n++] = i;
  }
  return TriLengths{{length(v[0], v[1]), length(v[0], v[2]), length(v[1], v[2])}};
}

double TetLengths::cayley_menger() const {
  Eigen::Matrix<double, 5, 5> m;
  m.setZero();
  for (int i = 1; i < 5; ++i) {
    m(0, i) = m(i, 0) = 1.0;
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double d2 = length(i, j) * length(i, j);
      m(i + 1, j + 1) = m(j + 1, i + 1) = d2;
    }
  }
  return m.determinant();
}

double TetLengths::mean_length() const {
  double s = 0.0;
  for (double v : l) s += v;
  return s / 6.0;
}

void TetLengths::validate() const {
  for (double v : l) check_positive(v, "tetrahedron edge");
  for (int skip = 0; skip < 4; ++skip) face(skip).validate();
  const double cm = cayley_menger();
  const double scale = std::pow(mean_length(), 6);
  if (!(cm > kCmRelTol * scale)) {
    throw InvalidSimplexError("degenerate tetrahedron: Cayley-Menger determinant " +
                              std::to_string(cm) + " below tolerance");
  }
}

double triangle_area(const TriLengths& t) {
  t.validate();
  // Kahan's numerically stable Heron form.
  double a = t.l[0], b = t.l[1], c = t.l[2];
  if (a < b) std::swap(a, b);
  if (a < c) std::swap(a, c);
  if (b < c) std::swap(b, c);
  const double s = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return 0.25 * std::sqrt(s);
}

double tet_volume(const TetLengths& t) {
  t.validate();
  return std::sqrt(t.cayley_menger() / 288.0);
}

std::array<Vec3, 4> embed_tet(const TetLengths& t) {
  t.validate();
  const double d01 = t.length(0, 1), d02 = t.length(0, 2), d03 = t.length(0, 3);
  const double d12 = t.length(1, 2), d13 = t.length(1, 3), d23 = t.length(2, 3);

  std::array<Vec3, 4> p;
  p[0] = Vec3::Zero();
  p[1] = Vec3(d01, 0.0, 0.0);

  const double x2 = (d01 * d01 + d02 * d02 - d12 * d12) / (2.0 * d01);
  const double y2sq = d02 * d02 - x2 * x2;
  if (!(y2sq > 0.0)) throw InvalidSimplexError("degenerate base triangle in embedding");
  p[2] = Vec3(x2, std::sqrt(y2sq), 0.0);

  const double x3 = (d01 * d01 + d03 * d03 - d13 * d13) / (2.0 * d01);
  const double y3 = (d02 * d02 + d03 * d03 - d23 * d23 - 2.0 * x2 * x3) / (2.0 * p[2].y());
  const double z3sq = d03 * d03 - x3 * x3 - y3 * y3;
  if (!(z3sq > 0.0)) throw InvalidSimplexError("degenerate tetrahedron in embedding");
  p[3] = Vec3(x3, y3, std::sqrt(z3sq));
  return p;
}

double dihedral_angle(const TetLengths& t, int edge_index) {
  if (edge_index < 0 || edge_index >= 6) {
    throw NotFoundError("dihedral_angle: edge index out of range");
  }
  const auto p = embed_tet(t);
  const int i = kTetEdgeVerts[edge_index][0];
  const int j = kTetEdgeVerts[edge_index][1];
  int other[2], n = 0;
  for (int v = 0; v < 4; ++v) {
    if (v != i && v != j) other[n++] = v;
  }
  const Vec3 e = p[j] - p[i];
  const Vec3 n1 = e.cross(p[other[0]] - p[i]);
  const Vec3 n2 = e.cross(p[other[1]] - p[i]);
  return std::atan2(n1.cross(n2).norm(), n1.dot(n2));
}

double solid_angle(const TetLengths& t, int vertex_index) {
  if (vertex_index < 0 || vertex_index >= 4) {
    throw NotFoundError("solid_angle: vertex index out of range");
  }
  double sum = 0.0;
  for (int e = 0; e < 6; ++e) {
    if (kTetEdgeVerts[e][0] == vertex_index || kTetEdgeVerts[e][1] == vertex_index) {
      sum += dihedral_angle(t, e);
    }
  }
  return sum - M_PI;
}

FootDecomposition foot_decomposition(double len_l, double len_h1, double len_h2) {
  TriLengths tri{{len_l, len_h1, len_h2}};
  const double area = triangle_area(tri);  // validates
  FootDecomposition f;
  f.z = 2.0 * area / len_l;
  f.d = (len_l * len_l + len_h1 * len_h1 - len_h2 * len_h2) / (2.0 * len_l);
  f.cos_theta1 = f.d / len_h1;
  f.cos_theta2 = (len_l - f.d) / len_h2;
  return f;
}

TetCircumcenter circumcenter_tet(const TetLengths& t) {
  const auto p = embed_tet(t);
  Eigen::Matrix3d a;
  Eigen::Vector3d rhs;
  for (int i = 1; i < 4; ++i) {
    const Vec3 d = p[i] - p[0];
    a.row(i - 1) = d.transpose();
    rhs(i - 1) = 0.5 * (p[i].squaredNorm() - p[0].squaredNorm());
  }
  const Vec3 c = a.partialPivLu().solve(rhs);

  // Barycentric weights of c with respect to the embedded vertices.
  Eigen::Matrix3d b;
  for (int i = 1; i < 4; ++i) b.col(i - 1) = p[i] - p[0];
  const Vec3 w123 = b.partialPivLu().solve(c - p[0]);

  TetCircumcenter out;
  out.weights = {1.0 - w123.sum(), w123(0), w123(1), w123(2)};
  out.radius = (c - p[0]).norm();
  out.inside = true;
  for (double w : out.weights) {
    if (w < 0.0) out.inside = false;
  }
  return out;
}

}  // namespace pfc
