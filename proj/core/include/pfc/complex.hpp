#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pfc/simplex.hpp"

namespace pfc {

using VertexId = int;
using EdgeId = int;
using TriId = int;
using TetId = int;

// Canonical (sorted) vertex pair.
struct EdgeKey {
  VertexId a, b;
  EdgeKey(VertexId i, VertexId j) : a(i < j ? i : j), b(i < j ? j : i) {}
  std::uint64_t packed() const {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }
  bool operator==(const EdgeKey& o) const { return a == o.a && b == o.b; }
};

// Identification data for quotient manifolds represented on a covering
// complex: every covering vertex/edge carries a key, and entities with equal
// keys are copies of the same fundamental-domain entity. `multiplicity` is
// the number of covering copies of the fundamental domain.
struct QuotientLabeling {
  std::vector<std::int64_t> vertex_keys;                       // per covering vertex
  std::unordered_map<std::uint64_t, std::int64_t> edge_keys;   // packed EdgeKey -> key
  double multiplicity = 1.0;
};

// A closed simplicial 3-manifold given by its tetrahedra (optionally a
// covering complex of a quotient manifold). Validates that every triangle
// bounds exactly two tetrahedra and that every edge link is a single cycle.
class SimplicialComplex3 {
 public:
  SimplicialComplex3(int n_vertices, std::vector<std::array<VertexId, 4>> tets,
                     std::optional<QuotientLabeling> labeling = std::nullopt);

  int n_vertices() const { return n_vertices_; }
  const std::vector<std::array<VertexId, 4>>& tets() const { return tets_; }
  const std::vector<EdgeKey>& edges() const { return edges_; }
  const std::vector<std::array<VertexId, 3>>& triangles() const { return triangles_; }

  EdgeId edge_id(VertexId i, VertexId j) const;             // throws NotFoundError
  std::optional<EdgeId> find_edge(VertexId i, VertexId j) const;

  const std::vector<TetId>& tets_at_vertex(VertexId v) const { return vertex_tets_[v]; }
  const std::vector<EdgeId>& edges_at_vertex(VertexId v) const { return vertex_edges_[v]; }
  const std::vector<TetId>& tets_at_edge(EdgeId e) const { return edge_tets_[e]; }
  const std::vector<TriId>& tris_at_edge(EdgeId e) const { return edge_tris_[e]; }
  const std::array<TetId, 2>& tets_at_tri(TriId t) const { return tri_tets_[t]; }

  // Quotient structure. Without labeling every entity is its own orbit.
  double multiplicity() const { return multiplicity_; }
  int n_vertex_orbits() const { return static_cast<int>(vertex_orbit_reps_.size()); }
  int n_edge_orbits() const { return static_cast<int>(edge_orbit_reps_.size()); }
  int vertex_orbit(VertexId v) const { return vertex_orbit_[v]; }
  int edge_orbit(EdgeId e) const { return edge_orbit_[e]; }
  VertexId vertex_orbit_rep(int orbit) const { return vertex_orbit_reps_[orbit]; }
  EdgeId edge_orbit_rep(int orbit) const { return edge_orbit_reps_[orbit]; }
  const std::optional<QuotientLabeling>& labeling() const { return labeling_; }

 private:
  void build_tables();
  void build_orbits();
  void validate_manifold() const;

  int n_vertices_;
  std::vector<std::array<VertexId, 4>> tets_;
  std::optional<QuotientLabeling> labeling_;
  double multiplicity_ = 1.0;

  std::vector<EdgeKey> edges_;
  std::vector<std::array<VertexId, 3>> triangles_;
  std::unordered_map<std::uint64_t, EdgeId> edge_index_;
  std::vector<std::vector<TetId>> vertex_tets_;
  std::vector<std::vector<EdgeId>> vertex_edges_;
  std::vector<std::vector<TetId>> edge_tets_;
  std::vector<std::vector<TriId>> edge_tris_;
  std::vector<std::array<TetId, 2>> tri_tets_;

  std::vector<int> vertex_orbit_;
  std::vector<int> edge_orbit_;
  std::vector<VertexId> vertex_orbit_reps_;
  std::vector<EdgeId> edge_orbit_reps_;
};

// Edge lengths indexed by the complex's edge ids.
struct EdgeLengthMetric {
  std::vector<double> lengths;

  double length(EdgeId e) const { return lengths[e]; }
};

// Throws if lengths are not positive, disagree across an orbit, or make any
// tetrahedron metrically invalid.
void validate_metric(const SimplicialComplex3& c, const EdgeLengthMetric& m);

TetLengths tet_lengths(const SimplicialComplex3& c, const EdgeLengthMetric& m, TetId t);

// 2*pi minus the sum of dihedral angles of the tetrahedra around the edge.
double deficit_angle(const SimplicialComplex3& c, const EdgeLengthMetric& m, EdgeId e);

// Total volume of the fundamental domain (covering volume / multiplicity).
double total_volume(const SimplicialComplex3& c, const EdgeLengthMetric& m);

}  // namespace pfc
