#include "pfc/complex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "pfc/errors.hpp"

namespace pfc {

SimplicialComplex3::SimplicialComplex3(int n_vertices,
                                       std::vector<std::array<VertexId, 4>> tets,
                                       std::optional<QuotientLabeling> labeling)
    : n_vertices_(n_vertices), tets_(std::move(tets)), labeling_(std::move(labeling)) {
  if (n_vertices_ <= 0) throw TopologyError("complex needs at least one vertex");
  if (tets_.empty()) throw TopologyError("complex needs at least one tetrahedron");
  for (const auto& t : tets_) {
    for (VertexId v : t) {
      if (v < 0 || v >= n_vertices_) throw TopologyError("tetrahedron vertex id out of range");
    }
    std::array<VertexId, 4> s = t;
    std::sort(s.begin(), s.end());
    if (s[0] == s[1] || s[1] == s[2] || s[2] == s[3]) {
      throw TopologyError("tetrahedron with repeated vertex (unresolved quotient self-edge?)");
    }
  }
  if (labeling_) {
    if (static_cast<int>(labeling_->vertex_keys.size()) != n_vertices_) {
      throw TopologyError("labeling vertex_keys size mismatch");
    }
    multiplicity_ = labeling_->multiplicity;
    if (!(multiplicity_ > 0.0)) throw TopologyError("labeling multiplicity must be positive");
  }
  build_tables();
  validate_manifold();
  build_orbits();
}

void SimplicialComplex3::build_tables() {
  vertex_tets_.assign(n_vertices_, {});
  vertex_edges_.assign(n_vertices_, {});

  std::map<std::array<VertexId, 3>, TriId> tri_index;
  for (TetId t = 0; t < static_cast<TetId>(tets_.size()); ++t) {
    const auto& tet = tets_[t];
    for (VertexId v : tet) vertex_tets_[v].push_back(t);

    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const EdgeKey key(tet[i], tet[j]);
        auto it = edge_index_.find(key.packed());
        EdgeId e;
        if (it == edge_index_.end()) {
          e = static_cast<EdgeId>(edges_.size());
          edges_.push_back(key);
          edge_tets_.push_back({});
          edge_tris_.push_back({});
          edge_index_.emplace(key.packed(), e);
          vertex_edges_[key.a].push_back(e);
          vertex_edges_[key.b].push_back(e);
        } else {
          e = it->second;
        }
        edge_tets_[e].push_back(t);
      }
    }

    for (int skip = 0; skip < 4; ++skip) {
      std::array<VertexId, 3> tri{};
      int n = 0;
      for (int i = 0; i < 4; ++i) {
        if (i != skip) tri[n++] = tet[i];
      }
      std::sort(tri.begin(), tri.end());
      auto it = tri_index.find(tri);
      if (it == tri_index.end()) {
        const TriId id = static_cast<TriId>(triangles_.size());
        triangles_.push_back(tri);
        tri_tets_.push_back({t, -1});
        tri_index.emplace(tri, id);
      } else {
        auto& pair = tri_tets_[it->second];
        if (pair[1] != -1) {
          throw TopologyError("triangle shared by more than two tetrahedra");
        }
        pair[1] = t;
      }
    }
  }

  for (TriId id = 0; id < static_cast<TriId>(triangles_.size()); ++id) {
    const auto& tri = triangles_[id];
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        edge_tris_[edge_id(tri[i], tri[j])].push_back(id);
      }
    }
  }
}

void SimplicialComplex3::validate_manifold() const {
  for (TriId id = 0; id < static_cast<TriId>(triangles_.size()); ++id) {
    if (tri_tets_[id][1] == -1) {
      throw TopologyError("boundary triangle found; complex is not closed");
    }
  }
  // Edge links: the tetrahedra around each edge must form one cycle. Each tet
  // at the edge has exactly two of its faces containing the edge, so the
  // "shares a triangle at this edge" graph must be 2-regular and connected.
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
    const auto& around = edge_tets_[e];
    const auto& tris = edge_tris_[e];
    if (around.size() < 3 || around.size() != tris.size()) {
      throw TopologyError("edge star is not a cycle");
    }
    std::map<TetId, std::vector<TetId>> adj;
    for (TriId f : tris) {
      const TetId t0 = tri_tets_[f][0];
      const TetId t1 = tri_tets_[f][1];
      adj[t0].push_back(t1);
      adj[t1].push_back(t0);
    }
    for (TetId t : around) {
      if (adj[t].size() != 2) throw TopologyError("edge link is not a single cycle");
    }
    std::set<TetId> seen;
    std::vector<TetId> stack{around[0]};
    while (!stack.empty()) {
      const TetId t = stack.back();
      stack.pop_back();
      if (!seen.insert(t).second) continue;
      for (TetId n : adj[t]) stack.push_back(n);
    }
    if (seen.size() != around.size()) {
      throw TopologyError("edge link is not a single cycle");
    }
  }
}

void SimplicialComplex3::build_orbits() {
  vertex_orbit_.assign(n_vertices_, -1);
  edge_orbit_.assign(edges_.size(), -1);

  if (!labeling_) {
    vertex_orbit_reps_.resize(n_vertices_);
    for (VertexId v = 0; v < n_vertices_; ++v) {
      vertex_orbit_[v] = v;
      vertex_orbit_reps_[v] = v;
    }
    edge_orbit_reps_.resize(edges_.size());
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
      edge_orbit_[e] = e;
      edge_orbit_reps_[e] = e;
    }
    return;
  }

  std::map<std::int64_t, int> vkey_to_orbit;
  for (VertexId v = 0; v < n_vertices_; ++v) {
    const std::int64_t key = labeling_->vertex_keys[v];
    auto it = vkey_to_orbit.find(key);
    if (it == vkey_to_orbit.end()) {
      const int orbit = static_cast<int>(vertex_orbit_reps_.size());
      vkey_to_orbit.emplace(key, orbit);
      vertex_orbit_reps_.push_back(v);
      vertex_orbit_[v] = orbit;
    } else {
      vertex_orbit_[v] = it->second;
    }
  }

  std::map<std::int64_t, int> ekey_to_orbit;
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
    auto it = labeling_->edge_keys.find(edges_[e].packed());
    if (it == labeling_->edge_keys.end()) {
      throw TopologyError("labeling missing an edge key");
    }
    auto jt = ekey_to_orbit.find(it->second);
    if (jt == ekey_to_orbit.end()) {
      const int orbit = static_cast<int>(edge_orbit_reps_.size());
      ekey_to_orbit.emplace(it->second, orbit);
      edge_orbit_reps_.push_back(e);
      edge_orbit_[e] = orbit;
    } else {
      edge_orbit_[e] = jt->second;
    }
  }
}

EdgeId SimplicialComplex3::edge_id(VertexId i, VertexId j) const {
  auto found = find_edge(i, j);
  if (!found) {
    throw NotFoundError("no edge between vertices " + std::to_string(i) + " and " +
                        std::to_string(j));
  }
  return *found;
}

std::optional<EdgeId> SimplicialComplex3::find_edge(VertexId i, VertexId j) const {
  auto it = edge_index_.find(EdgeKey(i, j).packed());
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

void validate_metric(const SimplicialComplex3& c, const EdgeLengthMetric& m) {
  if (m.lengths.size() != c.edges().size()) {
    throw InvalidSimplexError("metric length count does not match edge count");
  }
  for (double l : m.lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw InvalidSimplexError("metric has a non-positive edge length");
    }
  }
  // Lengths must agree across orbits.
  std::vector<double> orbit_len(c.n_edge_orbits(), -1.0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(c.edges().size()); ++e) {
    const int o = c.edge_orbit(e);
    if (orbit_len[o] < 0.0) {
      orbit_len[o] = m.length(e);
    } else if (std::abs(orbit_len[o] - m.length(e)) > 1e-9 * orbit_len[o]) {
      throw InvalidSimplexError("edge lengths disagree within an orbit");
    }
  }
  for (TetId t = 0; t < static_cast<TetId>(c.tets().size()); ++t) {
    tet_lengths(c, m, t).validate();
  }
}

TetLengths tet_lengths(const SimplicialComplex3& c, const EdgeLengthMetric& m, TetId t) {
  const auto& tet = c.tets()[t];
  TetLengths out;
  for (int e = 0; e < 6; ++e) {
    out.l[e] = m.length(c.edge_id(tet[kTetEdgeVerts[e][0]], tet[kTetEdgeVerts[e][1]]));
  }
  return out;
}

double deficit_angle(const SimplicialComplex3& c, const EdgeLengthMetric& m, EdgeId e) {
  const EdgeKey key = c.edges()[e];
  double sum = 0.0;
  for (TetId t : c.tets_at_edge(e)) {
    const auto& tet = c.tets()[t];
    int li = -1, lj = -1;
    for (int i = 0; i < 4; ++i) {
      if (tet[i] == key.a) li = i;
      if (tet[i] == key.b) lj = i;
    }
    sum += dihedral_angle(tet_lengths(c, m, t), TetLengths::edge_index(li, lj));
  }
  return 2.0 * M_PI - sum;
}

double total_volume(const SimplicialComplex3& c, const EdgeLengthMetric& m) {
  double v = 0.0;
  for (TetId t = 0; t < static_cast<TetId>(c.tets().size()); ++t) {
    v += tet_volume(tet_lengths(c, m, t));
  }
  return v / c.multiplicity();
}

}  // namespace pfc
