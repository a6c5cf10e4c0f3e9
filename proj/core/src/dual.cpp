#include "pfc/dual.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_set>

#include "pfc/errors.hpp"
#include "pfc/parallel.hpp"
#include "pfc/polyhedron.hpp"

namespace pfc {
namespace {

// Embeds tet t on its own, positions aligned with c.tets()[t].
std::array<Vec3, 4> embed_complex_tet(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                                      TetId t) {
  return embed_tet(tet_lengths(c, m, t));
}

int local_index(const std::array<VertexId, 4>& tet, VertexId v) {
  for (int i = 0; i < 4; ++i) {
    if (tet[i] == v) return i;
  }
  throw NotFoundError("vertex not in tetrahedron");
}

// Circumcenter of triangle (a, b, c) in its own plane.
Vec3 face_circumcenter(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 u = b - a;
  const Vec3 w = c - a;
  Eigen::Matrix2d g;
  g << u.dot(u), u.dot(w), u.dot(w), w.dot(w);
  const Eigen::Vector2d rhs(0.5 * u.dot(u), 0.5 * w.dot(w));
  const Eigen::Vector2d ab = g.fullPivLu().solve(rhs);
  return a + ab[0] * u + ab[1] * w;
}

Vec3 weighted_point(const std::array<Vec3, 4>& p, const std::array<double, 4>& w) {
  return w[0] * p[0] + w[1] * p[1] + w[2] * p[2] + w[3] * p[3];
}

double flag_volume(const Vec3& v, const Vec3& me, const Vec3& cf, const Vec3& ct) {
  return (me - v).cross(cf - v).dot(ct - v) / 6.0;
}

// Places the point at distances (d0, d1, d2) from (q0, q1, q2), on the
// opposite side of their plane from `other`.
Vec3 place_across(const Vec3& q0, const Vec3& q1, const Vec3& q2, double d0, double d1, double d2,
                  const Vec3& other) {
  const Vec3 u = q1 - q0;
  const Vec3 w = q2 - q0;
  Eigen::Matrix2d g;
  g << u.dot(u), u.dot(w), u.dot(w), w.dot(w);
  const Eigen::Vector2d rhs(0.5 * (d0 * d0 - d1 * d1 + u.dot(u)),
                            0.5 * (d0 * d0 - d2 * d2 + w.dot(w)));
  const Eigen::Vector2d ab = g.fullPivLu().solve(rhs);
  const Vec3 in_plane = ab[0] * u + ab[1] * w;
  double h2 = d0 * d0 - in_plane.squaredNorm();
  const double scale2 = d0 * d0;
  if (h2 < -1e-10 * scale2) {
    throw DegenerateDualError("cannot unfold tetrahedron across a face: inconsistent lengths");
  }
  h2 = std::max(h2, 0.0);
  Vec3 n = u.cross(w);
  const double nn = n.norm();
  if (nn <= 0.0) throw DegenerateDualError("degenerate face while unfolding a star");
  n /= nn;
  if (n.dot(other - q0) > 0.0) n = -n;
  return q0 + in_plane + std::sqrt(h2) * n;
}

TriId find_triangle(const SimplicialComplex3& c, VertexId x, VertexId y, VertexId z) {
  std::array<VertexId, 3> key{x, y, z};
  std::sort(key.begin(), key.end());
  for (TriId f : c.tris_at_edge(c.edge_id(key[0], key[1]))) {
    if (c.triangles()[f] == key) return f;
  }
  throw NotFoundError("triangle not found");
}

// Barycentric dual corner of local vertex iv: the tetrahedron cut by the
// affine coordinate half-spaces lambda_iv(x) >= lambda_j(x).
ConvexRegion barycentric_corner(const std::array<Vec3, 4>& p, int iv) {
  Eigen::Matrix3d basis;
  basis.col(0) = p[1] - p[0];
  basis.col(1) = p[2] - p[0];
  basis.col(2) = p[3] - p[0];
  const Eigen::Matrix3d inv = basis.fullPivLu().inverse();
  std::array<Vec3, 4> g;
  std::array<double, 4> b;
  for (int i = 1; i < 4; ++i) {
    g[i] = inv.row(i - 1).transpose();
    b[i] = -g[i].dot(p[0]);
  }
  g[0] = -(g[1] + g[2] + g[3]);
  b[0] = 1.0 - (b[1] + b[2] + b[3]);
  ConvexRegion region = ConvexRegion::tetrahedron(p);
  for (int j = 0; j < 4; ++j) {
    if (j == iv) continue;
    region.clip({g[j] - g[iv], b[iv] - b[j]});
  }
  return region;
}


}  // namespace

Vec3 StarChart::at(const SimplicialComplex3& c, int chart_index, VertexId v) const {
  return positions[chart_index][local_index(c.tets()[tets[chart_index]], v)];
}

StarChart develop_star(const SimplicialComplex3& c, const EdgeLengthMetric& m, VertexId v,
                       TetId seed) {
  const auto& star = c.tets_at_vertex(v);
  if (seed < 0) seed = star.front();

  StarChart chart;
  chart.tets.reserve(star.size());
  chart.positions.reserve(star.size());
  std::unordered_map<TetId, int> chart_index;

  chart.tets.push_back(seed);
  chart.positions.push_back(embed_complex_tet(c, m, seed));
  chart_index.emplace(seed, 0);

  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int ci = queue.front();
    queue.pop_front();
    const TetId t = chart.tets[ci];
    const auto& tet = c.tets()[t];
    const auto& pos = chart.positions[ci];

    // Faces containing v, explored by ascending opposite-vertex id.
    std::array<VertexId, 3> others{};
    int n = 0;
    for (VertexId u : tet) {
      if (u != v) others[n++] = u;
    }
    std::sort(others.begin(), others.end());
    for (VertexId opp : others) {
      std::array<VertexId, 3> face{};
      int fn = 0;
      for (VertexId u : tet) {
        if (u != opp) face[fn++] = u;
      }
      const TriId f = find_triangle(c, face[0], face[1], face[2]);
      const auto& pair = c.tets_at_tri(f);
      const TetId nbr = pair[0] == t ? pair[1] : pair[0];
      if (chart_index.count(nbr)) continue;

      const auto& ntet = c.tets()[nbr];
      VertexId nv = -1;
      for (VertexId u : ntet) {
        if (u != face[0] && u != face[1] && u != face[2]) nv = u;
      }
      const TetLengths nl = tet_lengths(c, m, nbr);
      const int lnv = local_index(ntet, nv);
      std::array<Vec3, 4> npos{};
      for (int i = 0; i < 4; ++i) {
        if (i != lnv) npos[i] = pos[local_index(tet, ntet[i])];
      }
      npos[lnv] = place_across(npos[(lnv + 1) % 4], npos[(lnv + 2) % 4], npos[(lnv + 3) % 4],
                               nl.length(lnv, (lnv + 1) % 4), nl.length(lnv, (lnv + 2) % 4),
                               nl.length(lnv, (lnv + 3) % 4), pos[local_index(tet, opp)]);

      const int nci = static_cast<int>(chart.tets.size());
      chart.tets.push_back(nbr);
      chart.positions.push_back(npos);
      chart_index.emplace(nbr, nci);
      queue.push_back(nci);
    }
  }

  if (chart.tets.size() != star.size()) {
    throw TopologyError("vertex star is not face-connected");
  }
  return chart;
}

namespace {

// Develops a flat chart over `domain`, breadth-first from `seed`, crossing
// any shared face (unlike develop_star, which only crosses faces through a
// fixed vertex). Geometry near the seed is exact; discrepancies from cone
// deficits accumulate only along far seams of the breadth-first tree.
StarChart develop_domain(const SimplicialComplex3& c, const EdgeLengthMetric& m, TetId seed,
                         const std::unordered_set<TetId>& domain) {
  StarChart chart;
  std::unordered_map<TetId, int> chart_index;
  chart.tets.push_back(seed);
  chart.positions.push_back(embed_complex_tet(c, m, seed));
  chart_index.emplace(seed, 0);

  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int ci = queue.front();
    queue.pop_front();
    const TetId t = chart.tets[ci];
    const auto& tet = c.tets()[t];
    // Copied: pushing into chart.positions below invalidates references.
    const std::array<Vec3, 4> pos = chart.positions[ci];

    std::array<VertexId, 4> opps = tet;
    std::sort(opps.begin(), opps.end());
    for (VertexId opp : opps) {
      std::array<VertexId, 3> face{};
      int fn = 0;
      for (VertexId u : tet) {
        if (u != opp) face[fn++] = u;
      }
      const TriId f = find_triangle(c, face[0], face[1], face[2]);
      const auto& pair = c.tets_at_tri(f);
      const TetId nbr = pair[0] == t ? pair[1] : pair[0];
      if (!domain.count(nbr) || chart_index.count(nbr)) continue;

      const auto& ntet = c.tets()[nbr];
      VertexId nv = -1;
      for (VertexId u : ntet) {
        if (u != face[0] && u != face[1] && u != face[2]) nv = u;
      }
      const TetLengths nl = tet_lengths(c, m, nbr);
      const int lnv = local_index(ntet, nv);
      std::array<Vec3, 4> npos{};
      for (int i = 0; i < 4; ++i) {
        if (i != lnv) npos[i] = pos[local_index(tet, ntet[i])];
      }
      npos[lnv] = place_across(npos[(lnv + 1) % 4], npos[(lnv + 2) % 4], npos[(lnv + 3) % 4],
                               nl.length(lnv, (lnv + 1) % 4), nl.length(lnv, (lnv + 2) % 4),
                               nl.length(lnv, (lnv + 3) % 4), pos[local_index(tet, opp)]);

      const int nci = static_cast<int>(chart.tets.size());
      chart.tets.push_back(nbr);
      chart.positions.push_back(npos);
      chart_index.emplace(nbr, nci);
      queue.push_back(nci);
    }
  }
  return chart;
}

}  // namespace

std::vector<double> vertex_dual_volumes(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                                        DualScheme scheme) {
  std::vector<double> vol(c.n_vertices(), 0.0);
  if (scheme == DualScheme::Barycentric) {
    for (TetId t = 0; t < static_cast<TetId>(c.tets().size()); ++t) {
      const double quarter = tet_volume(tet_lengths(c, m, t)) / 4.0;
      for (VertexId v : c.tets()[t]) vol[v] += quarter;
    }
    return vol;
  }

  // Voronoi: signed circumcentric flag pieces (v, edge midpoint, face
  // circumcenter, tet circumcenter), sign of each flag calibrated against the
  // all-positive barycentric decomposition of the same tetrahedron.
  std::vector<std::array<double, 4>> per_tet(c.tets().size());
  parallel_for(0, static_cast<int>(c.tets().size()), [&](int t) {
    const auto p = embed_complex_tet(c, m, t);
    const TetLengths tl = tet_lengths(c, m, t);
    const Vec3 ct = weighted_point(p, circumcenter_tet(tl).weights);
    const Vec3 gt = weighted_point(p, barycenter_tet());
    std::array<double, 4> contrib{};
    for (int iv = 0; iv < 4; ++iv) {
      for (int f = 0; f < 4; ++f) {
        if (f == iv) continue;
        // Face opposite local vertex f; its corners other than iv.
        std::array<int, 2> fe{};
        int n = 0;
        for (int j = 0; j < 4; ++j) {
          if (j != f && j != iv) fe[n++] = j;
        }
        const Vec3 cf = face_circumcenter(p[iv], p[fe[0]], p[fe[1]]);
        const Vec3 gf = (p[iv] + p[fe[0]] + p[fe[1]]) / 3.0;
        for (int k = 0; k < 2; ++k) {
          const Vec3 me = 0.5 * (p[iv] + p[fe[k]]);
          const double cal = flag_volume(p[iv], me, gf, gt);
          const double piece = flag_volume(p[iv], me, cf, ct);
          contrib[iv] += cal >= 0.0 ? piece : -piece;
        }
      }
    }
    per_tet[t] = contrib;
  });
  for (TetId t = 0; t < static_cast<TetId>(c.tets().size()); ++t) {
    for (int iv = 0; iv < 4; ++iv) vol[c.tets()[t][iv]] += per_tet[t][iv];
  }
  return vol;
}

double solid_angle_vvl_approx(double vertex_volume, double s_v, double alpha_v) {
  const double denom = s_v * alpha_v;
  if (!(denom > 0.0)) throw DegenerateDualError("solid-angle approximation needs s_v*alpha_v > 0");
  return 2.0 * M_PI * vertex_volume / denom;
}

DualVolumeTable build_dual_table(const SimplicialComplex3& c, const EdgeLengthMetric& m,
                                 const DualOptions& options) {
  DualVolumeTable table;
  table.scheme = options.scheme;
  table.vvl_mode = options.vvl_mode;
  table.vertex_volume = vertex_dual_volumes(c, m, options.scheme);

  const int n_edges = static_cast<int>(c.edges().size());
  table.edge_volume.assign(n_edges, 0.0);
  table.vvl.assign(n_edges, {0.0, 0.0});
  table.hinge_terms.assign(n_edges, {});
  table.obtuse_hinge_warning.assign(n_edges, false);

  std::vector<double> total_solid_angle;
  if (options.vvl_mode == VvlMode::SolidAngleApprox) {
    total_solid_angle.assign(c.n_vertices(), 0.0);
    for (TetId t = 0; t < static_cast<TetId>(c.tets().size()); ++t) {
      const TetLengths tl = tet_lengths(c, m, t);
      for (int iv = 0; iv < 4; ++iv) {
        total_solid_angle[c.tets()[t][iv]] += solid_angle(tl, iv);
      }
    }
  }

  // With a quotient labeling, clip only one representative edge per orbit and
  // copy the volumes across the orbit (deck transformations are isometries).
  const bool reuse = options.clip_by_orbit && options.vvl_mode == VvlMode::Clipped &&
                     c.n_edge_orbits() < n_edges;

  parallel_for(0, n_edges, [&](int e) {
    const EdgeKey key = c.edges()[e];
    const double length = m.length(e);

    for (TriId f : c.tris_at_edge(e)) {
      VertexId w = -1;
      for (VertexId u : c.triangles()[f]) {
        if (u != key.a && u != key.b) w = u;
      }
      const EdgeId h1 = c.edge_id(key.a, w);
      const EdgeId h2 = c.edge_id(key.b, w);
      const FootDecomposition fd = foot_decomposition(length, m.length(h1), m.length(h2));
      table.hinge_terms[e].push_back({h1, 0.5 * m.length(h1), fd.cos_theta1});
      table.hinge_terms[e].push_back({h2, 0.5 * m.length(h2), fd.cos_theta2});
      if (fd.cos_theta1 < 0.0 || fd.cos_theta2 < 0.0) table.obtuse_hinge_warning[e] = true;
    }

    if (reuse && c.edge_orbit_rep(c.edge_orbit(e)) != e) return;

    for (int side = 0; side < 2; ++side) {
      const VertexId v = side == 0 ? key.a : key.b;
      if (options.vvl_mode == VvlMode::HalfVertexCell) {
        table.vvl[e][side] = 0.5 * table.vertex_volume[v];
        continue;
      }
      if (options.vvl_mode == VvlMode::SolidAngleApprox) {
        const double s_v = static_cast<double>(c.tets_at_vertex(v).size());
        table.vvl[e][side] =
            solid_angle_vvl_approx(table.vertex_volume[v], s_v, total_solid_angle[v] / s_v);
        continue;
      }
      const VertexId w = side == 0 ? key.b : key.a;

      // Tetrahedra that can carry a piece of v's cell: the star of v plus
      // its face neighbors. On meshes whose circumcenters wander out of
      // their tetrahedra, the true Voronoi cell of v spills into adjacent
      // tetrahedra that do not contain v.
      std::vector<TetId> domain_list = c.tets_at_vertex(v);
      std::unordered_set<TetId> domain(domain_list.begin(), domain_list.end());
      if (options.scheme == DualScheme::Voronoi) {
        const std::size_t n_star = domain_list.size();
        for (std::size_t i = 0; i < n_star; ++i) {
          const TetId t = domain_list[i];
          const auto& tet = c.tets()[t];
          for (int k = 0; k < 4; ++k) {
            std::array<VertexId, 3> face{};
            int fn = 0;
            for (int j = 0; j < 4; ++j) {
              if (j != k) face[fn++] = tet[j];
            }
            const auto& pair = c.tets_at_tri(find_triangle(c, face[0], face[1], face[2]));
            const TetId nbr = pair[0] == t ? pair[1] : pair[0];
            if (domain.insert(nbr).second) domain_list.push_back(nbr);
          }
        }
      }

      // Each tetrahedron gets its own chart seeded at itself, so the
      // geometry binding its piece (its corners, adjacent tetrahedra) is
      // developed exactly; deficit seams only misplace far competitors,
      // whose bisectors cannot reach the piece.
      double sum = 0.0;
      for (const TetId t : domain_list) {
        const StarChart chart = develop_domain(c, m, t, domain);
        int vtet = -1, ltet = -1;
        for (int ci = 0; ci < static_cast<int>(chart.tets.size()); ++ci) {
          const auto& tet = c.tets()[chart.tets[ci]];
          const bool hasv = std::find(tet.begin(), tet.end(), v) != tet.end();
          const bool hasw = std::find(tet.begin(), tet.end(), w) != tet.end();
          if (vtet < 0 && hasv) vtet = ci;
          if (ltet < 0 && hasv && hasw) ltet = ci;
        }
        if (vtet < 0 || ltet < 0) continue;
        const Vec3 pv = chart.at(c, vtet, v);
        Vec3 u = chart.at(c, ltet, w) - chart.at(c, ltet, v);
        u /= u.norm();
        const Plane near{-u, -u.dot(pv)};        // u.(x - pv) >= 0
        const Plane far{u, u.dot(pv) + length};  // u.(x - pv) <= |l|

        std::vector<Plane> bisectors;
        if (options.scheme == DualScheme::Voronoi) {
          std::vector<Vec3> seen;
          for (int ci = 0; ci < static_cast<int>(chart.tets.size()); ++ci) {
            const auto& tet = c.tets()[chart.tets[ci]];
            for (int i = 0; i < 4; ++i) {
              if (tet[i] == v) continue;  // chart images of v never compete
              const Vec3& q = chart.positions[ci][i];
              if ((q - pv).norm() < 1e-9 * length) continue;
              bool dup = false;
              for (const Vec3& s : seen) {
                if ((s - q).norm() < 1e-9 * length) {
                  dup = true;
                  break;
                }
              }
              if (dup) continue;
              seen.push_back(q);
              Vec3 n = q - pv;
              n /= n.norm();
              bisectors.push_back({n, n.dot(0.5 * (q + pv))});
            }
          }
        }

        const auto& pos = chart.positions[0];
        double tet_scale = 0.0;
        for (int i = 0; i < 4; ++i) {
          for (int j = i + 1; j < 4; ++j) tet_scale = std::max(tet_scale, (pos[i] - pos[j]).norm());
        }
        const double tol = 1e-12 * tet_scale;
        ConvexRegion piece = options.scheme == DualScheme::Voronoi
                                 ? ConvexRegion::tetrahedron(pos)
                                 : barycentric_corner(pos, local_index(c.tets()[t], v));
        piece.clip(near);
        piece.clip(far);
        bool empty = false;
        for (const Plane& pl : bisectors) {
          double lo = std::numeric_limits<double>::infinity(), hi = -lo;
          for (const Vec3& q : pos) {
            const double d = pl.n.dot(q) - pl.c;
            lo = std::min(lo, d);
            hi = std::max(hi, d);
          }
          if (lo >= -tol) {  // whole tetrahedron on the far side
            empty = true;
            break;
          }
          if (hi > tol) piece.clip(pl);  // plane actually cuts this tetrahedron
        }
        if (!empty) sum += piece.volume();
      }
      table.vvl[e][side] = sum;
    }
    table.edge_volume[e] = table.vvl[e][0] + table.vvl[e][1];
  });
  if (reuse) {
    for (EdgeId e = 0; e < n_edges; ++e) {
      const EdgeId rep = c.edge_orbit_rep(c.edge_orbit(e));
      if (rep != e) {
        table.vvl[e] = table.vvl[rep];
        table.edge_volume[e] = table.edge_volume[rep];
      }
    }
  }
  return table;
}

DelaunayQuality delaunay_quality(const SimplicialComplex3& c, const EdgeLengthMetric& m) {
  DelaunayQuality q;
  q.tet_circumcenter_inside.assign(c.tets().size(), true);
  for (TetId t = 0; t < static_cast<TetId>(c.tets().size()); ++t) {
    q.tet_circumcenter_inside[t] = circumcenter_tet(tet_lengths(c, m, t)).inside;
    if (!q.tet_circumcenter_inside[t]) ++q.n_tet_violations;
  }

  q.tri_dual_edge_ok.assign(c.triangles().size(), true);
  for (TriId f = 0; f < static_cast<TriId>(c.triangles().size()); ++f) {
    const auto& pair = c.tets_at_tri(f);
    const TetId t0 = pair[0];
    const TetId t1 = pair[1];
    const auto& tet0 = c.tets()[t0];
    const auto& tet1 = c.tets()[t1];
    const auto& tri = c.triangles()[f];

    const auto p0 = embed_complex_tet(c, m, t0);
    // Glue t1 across f in t0's frame.
    VertexId opp0 = -1, opp1 = -1;
    for (VertexId u : tet0) {
      if (u != tri[0] && u != tri[1] && u != tri[2]) opp0 = u;
    }
    for (VertexId u : tet1) {
      if (u != tri[0] && u != tri[1] && u != tri[2]) opp1 = u;
    }
    const TetLengths l1 = tet_lengths(c, m, t1);
    const int lo1 = local_index(tet1, opp1);
    std::array<Vec3, 4> p1{};
    for (int i = 0; i < 4; ++i) {
      if (i != lo1) p1[i] = p0[local_index(tet0, tet1[i])];
    }
    const Vec3 q0 = p0[local_index(tet0, tri[0])];
    p1[lo1] = place_across(p1[(lo1 + 1) % 4], p1[(lo1 + 2) % 4], p1[(lo1 + 3) % 4],
                           l1.length(lo1, (lo1 + 1) % 4), l1.length(lo1, (lo1 + 2) % 4),
                           l1.length(lo1, (lo1 + 3) % 4), p0[local_index(tet0, opp0)]);

    const Vec3 c0 = weighted_point(p0, circumcenter_tet(tet_lengths(c, m, t0)).weights);
    const Vec3 c1 = weighted_point(p1, circumcenter_tet(l1).weights);
    Vec3 n = (p0[local_index(tet0, tri[1])] - q0).cross(p0[local_index(tet0, tri[2])] - q0);
    n /= n.norm();
    if (n.dot(p1[lo1] - q0) < 0.0) n = -n;  // point from t0 toward t1
    const double tol = 1e-9 * tet_lengths(c, m, t0).mean_length();
    const bool ok = n.dot(c0 - q0) <= tol && n.dot(c1 - q0) >= -tol;
    q.tri_dual_edge_ok[f] = ok;
    if (!ok) ++q.n_tri_violations;
  }
  return q;
}

}  // namespace pfc
