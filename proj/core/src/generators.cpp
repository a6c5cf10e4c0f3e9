#include "pfc/generators.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "pfc/errors.hpp"
#include "pfc/parallel.hpp"

namespace pfc {
namespace {

constexpr double kPhi = 1.6180339887498948482;

std::int64_t quantize(double v) { return llround(v * 1e7); }

using EdgePointPair = std::array<Vec3, 2>;
using CanonicalKey = std::array<std::int64_t, 6>;

CanonicalKey key_of(const Vec3& p, const Vec3& q) {
  return {quantize(p[0]), quantize(p[1]), quantize(p[2]),
          quantize(q[0]), quantize(q[1]), quantize(q[2])};
}

// Assembles a covering complex whose edges are identified by canonicalizing
// their chart endpoint pairs under the deck group.
struct QuotientBuilder {
  int n_vertices = 0;
  std::vector<std::array<VertexId, 4>> tets;
  std::vector<std::array<Vec3, 4>> tet_points;  // unwrapped chart positions
  std::vector<std::int64_t> vertex_keys;
  std::vector<Vec3> vertex_points;
  double multiplicity = 1.0;

  void add_tet(const std::array<VertexId, 4>& ids, const std::array<Vec3, 4>& points) {
    tets.push_back(ids);
    tet_points.push_back(points);
  }
};

struct QuotientResult {
  GeneratedTriangulation gen;
  std::vector<EdgePointPair> orbit_rep_points;  // canonical endpoints per edge orbit
};

// canonical(p, q) must return the canonicalized endpoint pair of an edge;
// orbit identity is decided on its quantized coordinates.
template <typename Canonical>
QuotientResult build_quotient(const QuotientBuilder& b, const Canonical& canonical,
                              std::shared_ptr<SmoothChart> chart, double smooth_cover_volume) {
  // Representative unwrapped endpoints for every covering edge.
  std::unordered_map<std::uint64_t, EdgePointPair> edge_rep;
  for (size_t t = 0; t < b.tets.size(); ++t) {
    for (const auto& ev : kTetEdgeVerts) {
      const EdgeKey key(b.tets[t][ev[0]], b.tets[t][ev[1]]);
      const bool ordered = b.tets[t][ev[0]] < b.tets[t][ev[1]];
      EdgePointPair pts{b.tet_points[t][ev[ordered ? 0 : 1]], b.tet_points[t][ev[ordered ? 1 : 0]]};
      edge_rep.emplace(key.packed(), pts);
    }
  }

  QuotientLabeling labeling;
  labeling.vertex_keys = b.vertex_keys;
  labeling.multiplicity = b.multiplicity;
  std::map<CanonicalKey, std::int64_t> orbit_of_key;
  std::vector<EdgePointPair> orbit_points;
  for (const auto& [packed, pts] : edge_rep) {
    const EdgePointPair canon = canonical(pts[0], pts[1]);
    const CanonicalKey key = key_of(canon[0], canon[1]);
    auto it = orbit_of_key.find(key);
    std::int64_t orbit;
    if (it == orbit_of_key.end()) {
      orbit = static_cast<std::int64_t>(orbit_points.size());
      orbit_of_key.emplace(key, orbit);
      orbit_points.push_back(canon);
    } else {
      orbit = it->second;
    }
    labeling.edge_keys.emplace(packed, orbit);
  }

  SimplicialComplex3 complex(b.n_vertices, b.tets, std::move(labeling));

  // Geodesic lengths and smooth references, one solve per orbit.
  const int n_orbits = static_cast<int>(orbit_points.size());
  std::vector<double> orbit_length(n_orbits);
  std::vector<double> orbit_sectional(n_orbits);
  std::vector<double> orbit_ricci(n_orbits);
  parallel_for(0, n_orbits, [&](int o) {
    const GeodesicRecord rec = solve_geodesic(*chart, orbit_points[o][0], orbit_points[o][1]);
    orbit_length[o] = rec.length;
    orbit_ricci[o] = average_ricci_along(*chart, rec);
    double ksum = 0.0;
    const size_t ns = rec.points.size();
    for (size_t i = 0; i < ns; ++i) {
      const double w = (i == 0 || i + 1 == ns) ? 0.5 : 1.0;
      ksum += w * chart->sectional_orthogonal(rec.points[i], rec.unit_tangents[i]);
    }
    orbit_sectional[o] = ksum / static_cast<double>(ns - 1);
  });

  // The complex renumbers orbits by first appearance in edge order; recover
  // the builder's numbering through the labeling keys.
  const auto builder_orbit = [&](EdgeId e) {
    return complex.labeling()->edge_keys.at(complex.edges()[e].packed());
  };

  EdgeLengthMetric metric;
  metric.lengths.resize(complex.edges().size());
  for (EdgeId e = 0; e < static_cast<EdgeId>(complex.edges().size()); ++e) {
    metric.lengths[e] = orbit_length[builder_orbit(e)];
  }

  // Global rescale so the piecewise-flat covering volume matches the smooth
  // covering volume.
  double pf_volume = 0.0;
  for (TetId t = 0; t < static_cast<TetId>(complex.tets().size()); ++t) {
    pf_volume += tet_volume(tet_lengths(complex, metric, t));
  }
  const double rescale = std::cbrt(smooth_cover_volume / pf_volume);
  for (double& l : metric.lengths) l *= rescale;

  SmoothReferences smooth;
  smooth.vertex_scalar.resize(complex.n_vertices());
  std::vector<double> orbit_vertex_scalar(complex.n_vertex_orbits());
  parallel_for(0, complex.n_vertex_orbits(), [&](int o) {
    orbit_vertex_scalar[o] = chart->scalar(b.vertex_points[complex.vertex_orbit_rep(o)]);
  });
  for (VertexId v = 0; v < complex.n_vertices(); ++v) {
    smooth.vertex_scalar[v] = orbit_vertex_scalar[complex.vertex_orbit(v)];
  }
  smooth.edge_sectional.resize(complex.edges().size());
  smooth.edge_ricci.resize(complex.edges().size());
  for (EdgeId e = 0; e < static_cast<EdgeId>(complex.edges().size()); ++e) {
    smooth.edge_sectional[e] = orbit_sectional[builder_orbit(e)];
    smooth.edge_ricci[e] = orbit_ricci[builder_orbit(e)];
  }

  QuotientResult out{GeneratedTriangulation{std::move(complex), std::move(metric), chart,
                                            b.vertex_points, rescale, std::move(smooth)},
                     std::move(orbit_points)};
  return out;
}

// The six path tetrahedra of a unit cube: walk from corner (0,0,0) to
// (1,1,1) one axis at a time, once per axis permutation. Induced face
// diagonals run from the minimal to the maximal corner of every face.
std::array<std::array<std::array<int, 3>, 4>, 6> kuhn_tets() {
  std::array<std::array<std::array<int, 3>, 4>, 6> out{};
  const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int p = 0; p < 6; ++p) {
    std::array<int, 3> corner{0, 0, 0};
    out[p][0] = corner;
    for (int s = 0; s < 3; ++s) {
      corner[perms[p][s]] = 1;
      out[p][s + 1] = corner;
    }
  }
  return out;
}

std::vector<Vec3> icosahedron_vertices() {
  std::vector<Vec3> v;
  for (int axis = 0; axis < 3; ++axis) {
    for (int s1 : {-1, 1}) {
      for (int s2 : {-1, 1}) {
        Vec3 p = Vec3::Zero();
        p[axis] = 0.0;
        p[(axis + 1) % 3] = s1 * 1.0;
        p[(axis + 2) % 3] = s2 * kPhi;
        v.push_back(p);
      }
    }
  }
  return v;
}

std::vector<std::array<double, 4>> cell600_vertices4() {
  std::vector<std::array<double, 4>> v;
  for (int axis = 0; axis < 4; ++axis) {
    for (int s : {-1, 1}) {
      std::array<double, 4> p{0, 0, 0, 0};
      p[axis] = s;
      v.push_back(p);
    }
  }
  for (int mask = 0; mask < 16; ++mask) {
    std::array<double, 4> p;
    for (int i = 0; i < 4; ++i) p[i] = (mask >> i & 1) ? 0.5 : -0.5;
    v.push_back(p);
  }
  // Even permutations of (phi, 1, 1/phi, 0)/2 with independent signs on the
  // three nonzero entries.
  const std::array<std::array<int, 4>, 12> even_perms = {
      {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 3, 2, 0},
       {2, 0, 1, 3}, {2, 1, 3, 0}, {2, 3, 0, 1}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 2, 1, 0}}};
  const std::array<double, 4> base{kPhi / 2.0, 0.5, 1.0 / (2.0 * kPhi), 0.0};
  for (const auto& perm : even_perms) {
    for (int mask = 0; mask < 8; ++mask) {
      std::array<double, 4> p;
      int nz = 0;
      for (int i = 0; i < 4; ++i) {
        double val = base[perm[i]];
        if (val != 0.0) {
          if (mask >> nz & 1) val = -val;
          ++nz;
        }
        p[i] = val;
      }
      v.push_back(p);
    }
  }
  return v;
}

GeneratedTriangulation make_sphere(std::vector<std::array<VertexId, 4>> tets, int n_vertices,
                                   double r) {
  const double n_tets = static_cast<double>(tets.size());
  const double l = std::cbrt(12.0 * std::sqrt(2.0) * M_PI * M_PI / n_tets) * r;

  SimplicialComplex3 complex(n_vertices, std::move(tets));
  EdgeLengthMetric metric;
  metric.lengths.assign(complex.edges().size(), l);

  SmoothReferences smooth;
  smooth.vertex_scalar.assign(complex.n_vertices(), 6.0 / (r * r));
  smooth.edge_sectional.assign(complex.edges().size(), 1.0 / (r * r));
  smooth.edge_ricci.assign(complex.edges().size(), 2.0 / (r * r));

  return GeneratedTriangulation{std::move(complex), std::move(metric), nullptr, {}, 1.0,
                                std::move(smooth)};
}

ErrorStats finish_stats(std::vector<double>& rows, int excluded) {
  ErrorStats s;
  s.excluded = excluded;
  double sum = 0.0, sum2 = 0.0;
  int n = 0;
  for (double v : rows) {
    if (std::isnan(v)) continue;
    sum += v;
    sum2 += v * v;
    ++n;
  }
  s.count = n;
  if (n > 0) {
    s.mean_percent = sum / n;
    s.std_percent = std::sqrt(std::max(0.0, sum2 / n - s.mean_percent * s.mean_percent));
  }
  return s;
}

}  // namespace

GeneratedTriangulation generate_sphere_cell(SphereModel model, double r) {
  if (!(r > 0.0)) throw GeneratorError("sphere radius must be positive");
  std::vector<std::array<VertexId, 4>> tets;
  int n_vertices = 0;

  switch (model) {
    case SphereModel::Cell5: {
      n_vertices = 5;
      for (int skip = 0; skip < 5; ++skip) {
        std::array<VertexId, 4> t{};
        int n = 0;
        for (int v = 0; v < 5; ++v) {
          if (v != skip) t[n++] = v;
        }
        tets.push_back(t);
      }
      break;
    }
    case SphereModel::Cell16: {
      // Vertices 2*axis + sign_bit of the 4-orthoplex; facets pick one sign
      // per axis.
      n_vertices = 8;
      for (int mask = 0; mask < 16; ++mask) {
        tets.push_back({2 * 0 + (mask >> 0 & 1), 2 * 1 + (mask >> 1 & 1), 2 * 2 + (mask >> 2 & 1),
                        2 * 3 + (mask >> 3 & 1)});
      }
      break;
    }
    case SphereModel::Cell600: {
      const auto verts = cell600_vertices4();
      n_vertices = static_cast<int>(verts.size());
      const auto dist2 = [&](int i, int j) {
        double d = 0.0;
        for (int k = 0; k < 4; ++k) {
          d += (verts[i][k] - verts[j][k]) * (verts[i][k] - verts[j][k]);
        }
        return d;
      };
      double min_d2 = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n_vertices; ++i) {
        for (int j = i + 1; j < n_vertices; ++j) min_d2 = std::min(min_d2, dist2(i, j));
      }
      std::vector<std::vector<int>> adj(n_vertices);
      for (int i = 0; i < n_vertices; ++i) {
        for (int j = i + 1; j < n_vertices; ++j) {
          if (dist2(i, j) < min_d2 * 1.1) {
            adj[i].push_back(j);
          }
        }
      }
      const auto adjacent = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        return std::binary_search(adj[i].begin(), adj[i].end(), j);
      };
      for (int a = 0; a < n_vertices; ++a) {
        for (int b2 : adj[a]) {
          for (int c : adj[a]) {
            if (c <= b2 || !adjacent(b2, c)) continue;
            for (int d : adj[a]) {
              if (d <= c || !adjacent(b2, d) || !adjacent(c, d)) continue;
              tets.push_back({a, b2, c, d});
            }
          }
        }
      }
      if (tets.size() != 600) {
        throw GeneratorError("600-cell construction produced " + std::to_string(tets.size()) +
                             " tetrahedra");
      }
      break;
    }
  }
  return make_sphere(std::move(tets), n_vertices, r);
}

GeneratedTriangulation generate_cylinder(double r, double b_len, int n_rings) {
  if (!(r > 0.0) || !(b_len > 0.0)) throw GeneratorError("cylinder needs positive r and b");
  if (n_rings < 3) throw GeneratorError("cylinder needs at least 3 rings");

  const auto ico = icosahedron_vertices();
  const int nv = static_cast<int>(ico.size());
  const double edge2 = 4.0;  // icosahedron (0, +-1, +-phi) has edge length 2
  std::vector<std::array<int, 3>> faces;
  const auto adjacent = [&](int i, int j) {
    return std::abs((ico[i] - ico[j]).squaredNorm() - edge2) < 1e-9;
  };
  for (int i = 0; i < nv; ++i) {
    for (int j = i + 1; j < nv; ++j) {
      if (!adjacent(i, j)) continue;
      for (int k = j + 1; k < nv; ++k) {
        if (adjacent(i, k) && adjacent(j, k)) faces.push_back({i, j, k});
      }
    }
  }
  if (faces.size() != 20) throw GeneratorError("icosahedron construction failed");

  const auto vid = [&](int ring, int v) { return ((ring % n_rings + n_rings) % n_rings) * nv + v; };
  std::vector<std::array<VertexId, 4>> tets;
  for (int ring = 0; ring < n_rings; ++ring) {
    for (const auto& f : faces) {
      const int p = f[0], q = f[1], s = f[2];  // already sorted ascending
      // Staircase split of the prism; the shared rectangle faces between
      // neighbouring prisms get their diagonal from the lower vertex id,
      // which both prisms agree on.
      tets.push_back({vid(ring, p), vid(ring, q), vid(ring, s), vid(ring + 1, p)});
      tets.push_back({vid(ring, q), vid(ring, s), vid(ring + 1, p), vid(ring + 1, q)});
      tets.push_back({vid(ring, s), vid(ring + 1, p), vid(ring + 1, q), vid(ring + 1, s)});
    }
  }

  SimplicialComplex3 complex(nv * n_rings, std::move(tets));

  const double a = 2.0 * std::sqrt(M_PI / (5.0 * std::sqrt(3.0))) * r;
  const double c = std::sqrt(a * a + b_len * b_len);
  const double cos2 = (b_len * b_len) / (c * c);  // angle of c to the axis

  EdgeLengthMetric metric;
  metric.lengths.resize(complex.edges().size());
  SmoothReferences smooth;
  smooth.vertex_scalar.assign(complex.n_vertices(), 2.0 / (r * r));
  smooth.edge_sectional.resize(complex.edges().size());
  smooth.edge_ricci.resize(complex.edges().size());
  for (EdgeId e = 0; e < static_cast<EdgeId>(complex.edges().size()); ++e) {
    const EdgeKey key = complex.edges()[e];
    const int ring_a = key.a / nv, va = key.a % nv;
    const int ring_b = key.b / nv, vb = key.b % nv;
    if (ring_a == ring_b) {
      metric.lengths[e] = a;
      smooth.edge_sectional[e] = 0.0;
      smooth.edge_ricci[e] = 1.0 / (r * r);
    } else if (va == vb) {
      metric.lengths[e] = b_len;
      smooth.edge_sectional[e] = 1.0 / (r * r);
      smooth.edge_ricci[e] = 0.0;
    } else {
      metric.lengths[e] = c;
      smooth.edge_sectional[e] = cos2 / (r * r);
      smooth.edge_ricci[e] = (1.0 - cos2) / (r * r);
    }
  }

  return GeneratedTriangulation{std::move(complex), std::move(metric),
                                std::make_shared<CylinderChart>(r), {}, 1.0, std::move(smooth)};
}

GeneratedTriangulation generate_flat_torus(int n, double cell) {
  if (n < 3) throw GeneratorError("flat torus needs n >= 3 cells per axis");
  if (!(cell > 0.0)) throw GeneratorError("flat torus cell size must be positive");

  const auto vid = [&](int i, int j, int k) {
    const auto w = [&](int x) { return (x % n + n) % n; };
    return (w(i) * n + w(j)) * n + w(k);
  };
  const auto pattern = kuhn_tets();
  std::vector<std::array<VertexId, 4>> tets;
  std::unordered_map<std::uint64_t, double> edge_len;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (const auto& tet : pattern) {
          std::array<VertexId, 4> ids{};
          std::array<Vec3, 4> pts{};
          for (int v = 0; v < 4; ++v) {
            ids[v] = vid(i + tet[v][0], j + tet[v][1], k + tet[v][2]);
            pts[v] = cell * Vec3(i + tet[v][0], j + tet[v][1], k + tet[v][2]);
          }
          tets.push_back(ids);
          for (const auto& ev : kTetEdgeVerts) {
            edge_len.emplace(EdgeKey(ids[ev[0]], ids[ev[1]]).packed(),
                             (pts[ev[0]] - pts[ev[1]]).norm());
          }
        }
      }
    }
  }

  SimplicialComplex3 complex(n * n * n, std::move(tets));
  EdgeLengthMetric metric;
  metric.lengths.resize(complex.edges().size());
  for (EdgeId e = 0; e < static_cast<EdgeId>(complex.edges().size()); ++e) {
    metric.lengths[e] = edge_len.at(complex.edges()[e].packed());
  }

  SmoothReferences smooth;
  smooth.vertex_scalar.assign(complex.n_vertices(), 0.0);
  smooth.edge_sectional.assign(complex.edges().size(), 0.0);
  smooth.edge_ricci.assign(complex.edges().size(), 0.0);

  return GeneratedTriangulation{std::move(complex), std::move(metric),
                                std::make_shared<EuclideanChart>(), {}, 1.0, std::move(smooth)};
}

GeneratedTriangulation generate_gowdy(int blocks, GowdyStyle style, double w_amp, double x_extent,
                                      double y_extent) {
  if (blocks < 3) throw GeneratorError("wave-torus generator needs at least 3 blocks");
  if (style == GowdyStyle::Isosceles && blocks % 2 != 0) {
    throw GeneratorError("isosceles wave-torus shear needs an even block count");
  }
  const int n = blocks;
  const int rep = 3;  // covering duplications in x and y
  const double X = x_extent > 0.0 ? x_extent : 6.0 / n;
  const double Y = y_extent > 0.0 ? y_extent : 6.0 / n;
  const int layers = n;
  const double dtheta = 2.0 * M_PI / layers;
  // Isosceles style: shear every wave step by half a cell in both x and y,
  // against the subdivision diagonals. All four wave-crossing edge classes of
  // a block then share one length, so each tetrahedron has isosceles faces.
  // A full wave period shifts the lattice by n/2 cells in each direction.
  const double shear_x = style == GowdyStyle::Isosceles ? -0.5 * X : 0.0;
  const double shear_y = style == GowdyStyle::Isosceles ? -0.5 * Y : 0.0;
  const int wrap_shift = style == GowdyStyle::Isosceles ? -(n / 2) : 0;

  QuotientBuilder b;
  b.n_vertices = rep * rep * layers;
  b.multiplicity = static_cast<double>(rep * rep);
  const auto vid = [&](int i, int j, int k) {
    const auto w = [&](int x, int per) { return (x % per + per) % per; };
    // theta wrap carries the shear over into x and y shifts
    int ii = i;
    int jj = j;
    if (k >= layers) {
      ii += wrap_shift * (k / layers);
      jj += wrap_shift * (k / layers);
    }
    return (w(k, layers) * rep + w(jj, rep)) * rep + w(ii, rep);
  };
  const auto pos = [&](int i, int j, int k) {
    return Vec3(i * X + k * shear_x, j * Y + k * shear_y, k * dtheta);
  };
  b.vertex_keys.resize(b.n_vertices);
  b.vertex_points.resize(b.n_vertices);
  for (int i = 0; i < rep; ++i) {
    for (int j = 0; j < rep; ++j) {
      for (int k = 0; k < layers; ++k) {
        b.vertex_keys[vid(i, j, k)] = k;
        b.vertex_points[vid(i, j, k)] = pos(i, j, k);
      }
    }
  }

  const auto pattern = kuhn_tets();
  for (int i = 0; i < rep; ++i) {
    for (int j = 0; j < rep; ++j) {
      for (int k = 0; k < layers; ++k) {
        for (const auto& tet : pattern) {
          std::array<VertexId, 4> ids{};
          std::array<Vec3, 4> pts{};
          for (int v = 0; v < 4; ++v) {
            ids[v] = vid(i + tet[v][0], j + tet[v][1], k + tet[v][2]);
            pts[v] = pos(i + tet[v][0], j + tet[v][1], k + tet[v][2]);
          }
          b.add_tet(ids, pts);
        }
      }
    }
  }

  const auto canonical = [&](const Vec3& p, const Vec3& q) {
    const auto shift = [&](const Vec3& v, double dx, double dy) {
      return Vec3(v[0] + dx, v[1] + dy, v[2]);
    };
    const auto normalize = [&](const Vec3& p1, const Vec3& p2) {
      const double dx = -std::floor(p1[0] / X + 1e-9) * X;
      const double dy = -std::floor(p1[1] / Y + 1e-9) * Y;
      return EdgePointPair{shift(p1, dx, dy), shift(p2, dx, dy)};
    };
    const EdgePointPair c1 = normalize(p, q);
    const EdgePointPair c2 = normalize(q, p);
    return key_of(c1[0], c1[1]) <= key_of(c2[0], c2[1]) ? c1 : c2;
  };

  auto chart = std::make_shared<GowdyChart>(w_amp);
  const double smooth_volume = (rep * X) * (rep * Y) * (2.0 * M_PI);  // det g = 1
  return build_quotient(b, canonical, chart, smooth_volume).gen;
}

GeneratedTriangulation generate_nil3(int blocks, double yz_extent) {
  if (blocks < 1) throw GeneratorError("twisted-torus generator needs at least 1 block");
  const int n = blocks;
  const double L = yz_extent > 0.0 ? yz_extent : 1.0 / n;  // y,z lattice cell
  const int cx = n == 1 ? 3 : (n == 2 ? 2 : 1);  // x periods so stars embed
  const int N = n * cx;
  const int max_extent = 2 + (cx - 1);  // slab reach plus worst covering shear
  const int per = 4 * max_extent + 3;   // y,z torus period

  // The slab completing each x period interpolates between the two lattice
  // trace patterns; its tetrahedra reach across cell boundaries. Offsets are
  // (level, dj, dm) relative to a cell (j, m).
  static const std::array<std::array<std::array<int, 3>, 4>, 6> transition = {{
      {{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 1, 2}}},
      {{{0, 0, 0}, {0, 1, 0}, {1, 1, 1}, {1, 1, 2}}},
      {{{0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 1, 2}}},
      {{{0, 0, 0}, {0, 0, 1}, {1, 0, 2}, {1, 1, 2}}},
      {{{0, 0, 0}, {1, 0, 1}, {1, 0, 2}, {1, 1, 2}}},
      {{{0, 0, 0}, {1, 0, 1}, {1, 1, 1}, {1, 1, 2}}},
  }};
  const auto kuhn = kuhn_tets();

  QuotientBuilder b;
  b.n_vertices = N * per * per;
  b.multiplicity = static_cast<double>(cx * per * per);
  const auto w = [&](int x) { return (x % per + per) % per; };
  const auto vid = [&](int p, int j, int m) {
    // Crossing the last plane returns to plane 0 sheared by the full twist.
    if (p >= N) {
      m -= cx * j;
      p -= N;
    }
    return (p * per + w(j)) * per + w(m);
  };
  b.vertex_keys.resize(b.n_vertices);
  b.vertex_points.resize(b.n_vertices);
  for (int p = 0; p < N; ++p) {
    for (int j = 0; j < per; ++j) {
      for (int m = 0; m < per; ++m) {
        b.vertex_keys[vid(p, j, m)] = p % n;
        b.vertex_points[vid(p, j, m)] =
            Vec3(static_cast<double>(p) / n, j * L, (m + (p / n) * j) * L);
      }
    }
  }

  for (int blk = 0; blk < N; ++blk) {
    const int period = blk / n;
    const bool slab = blk % n == 0;
    const auto& pattern = slab ? transition : kuhn;
    for (int j = 0; j < per; ++j) {
      for (int m = 0; m < per; ++m) {
        for (const auto& tet : pattern) {
          std::array<VertexId, 4> ids{};
          std::array<Vec3, 4> pts{};
          for (int v = 0; v < 4; ++v) {
            const int p = blk + tet[v][0];
            const int J = j + tet[v][1];
            const int M = m + tet[v][2] + period * J;  // period-k copies shear z by k*y
            ids[v] = vid(p, J, M);
            pts[v] = Vec3(static_cast<double>(p) / n, J * L, M * L);
          }
          b.add_tet(ids, pts);
        }
      }
    }
  }

  // Deck group: (x,y,z) -> (x+A, y+B, z+C+A*y) for integers A,B,C. The
  // normalizing element placing the first endpoint in the unit fundamental
  // cell is unique.
  const auto canonical = [&](const Vec3& p, const Vec3& q) {
    const auto normalize = [&](const Vec3& p1, const Vec3& p2) {
      const double A = -std::floor(p1[0] + 1e-9);
      const double B = -std::floor(p1[1] / L + 1e-9) * L;
      const double C = -std::floor((p1[2] + A * p1[1]) / L + 1e-9) * L;
      const auto apply = [&](const Vec3& v) {
        return Vec3(v[0] + A, v[1] + B, v[2] + C + A * v[1]);
      };
      return EdgePointPair{apply(p1), apply(p2)};
    };
    const EdgePointPair c1 = normalize(p, q);
    const EdgePointPair c2 = normalize(q, p);
    return key_of(c1[0], c1[1]) <= key_of(c2[0], c2[1]) ? c1 : c2;
  };

  auto chart = std::make_shared<NilChart>();
  const double smooth_volume = static_cast<double>(cx) * (per * L) * (per * L);  // det g = 1
  return build_quotient(b, canonical, chart, smooth_volume).gen;
}

ErrorReport error_report(const SimplicialComplex3& c, const CurvatureReport& pf,
                         const SmoothReferences& smooth) {
  ErrorReport report;
  // A reference counts as zero — and its row is excluded — when its magnitude
  // is small against the quantity's scale over the whole mesh. Smooth fields
  // cross zero along coordinate directions on these manifolds, and near such
  // crossings a percent error diverges without measuring approximation quality,
  // so rows within 2% of the field's scale are dropped from the statistics.
  const auto zero_tol = [](const std::vector<double>& refs) {
    double m = 0.0;
    for (double r : refs) m = std::max(m, std::abs(r));
    return 0.02 * m + 1e-300;
  };
  const auto percent = [](double value, double reference, double tol, int& excluded) {
    if (std::abs(reference) < tol) {
      ++excluded;
      return std::numeric_limits<double>::quiet_NaN();
    }
    return 100.0 * std::abs(1.0 - value / reference);
  };

  std::vector<double> vrefs(c.n_vertex_orbits());
  for (int o = 0; o < c.n_vertex_orbits(); ++o) {
    vrefs[o] = smooth.vertex_scalar[c.vertex_orbit_rep(o)];
  }
  const double vtol = zero_tol(vrefs);
  int excluded = 0;
  report.vertex_percent.resize(c.n_vertex_orbits());
  for (int o = 0; o < c.n_vertex_orbits(); ++o) {
    const VertexId v = c.vertex_orbit_rep(o);
    report.vertex_percent[o] =
        percent(pf.vertex_scalar[v], smooth.vertex_scalar[v], vtol, excluded);
  }
  report.vertex_scalar = finish_stats(report.vertex_percent, excluded);

  std::vector<double> krefs(c.n_edge_orbits()), rcrefs(c.n_edge_orbits());
  for (int o = 0; o < c.n_edge_orbits(); ++o) {
    krefs[o] = smooth.edge_sectional[c.edge_orbit_rep(o)];
    rcrefs[o] = smooth.edge_ricci[c.edge_orbit_rep(o)];
  }
  const double ktol = zero_tol(krefs);
  const double rctol = zero_tol(rcrefs);
  excluded = 0;
  report.sectional_percent.resize(c.n_edge_orbits());
  std::vector<double> ricci_rows(c.n_edge_orbits());
  std::vector<double> khat_rows(c.n_edge_orbits());
  std::vector<double> rcgen_rows(c.n_edge_orbits());
  int excluded_rc = 0, excluded_khat = 0, excluded_rcgen = 0;
  for (int o = 0; o < c.n_edge_orbits(); ++o) {
    const EdgeId e = c.edge_orbit_rep(o);
    report.sectional_percent[o] =
        percent(pf.edge_sectional[e], smooth.edge_sectional[e], ktol, excluded);
    ricci_rows[o] = percent(pf.edge_ricci[e], smooth.edge_ricci[e], rctol, excluded_rc);
    khat_rows[o] = percent(pf.edge_single_hinge[e], smooth.edge_sectional[e], ktol, excluded_khat);
    rcgen_rows[o] = percent(pf.edge_ricci_general[e], smooth.edge_ricci[e], rctol, excluded_rcgen);
  }
  report.edge_sectional = finish_stats(report.sectional_percent, excluded);
  report.edge_ricci = finish_stats(ricci_rows, excluded_rc);
  report.edge_single_hinge = finish_stats(khat_rows, excluded_khat);
  report.edge_ricci_general = finish_stats(rcgen_rows, excluded_rcgen);
  report.ricci_percent = std::move(ricci_rows);
  report.single_hinge_percent = std::move(khat_rows);
  return report;
}

}  // namespace pfc
