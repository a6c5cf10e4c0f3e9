#pragma once

#include <iosfwd>
#include <string>

#include "pfc/complex.hpp"

namespace pfc {

struct Mesh {
  SimplicialComplex3 complex;
  EdgeLengthMetric metric;
};

// JSON mesh format:
//   {
//     "vertices": N,
//     "tets": [[i,j,k,l], ...],
//     "lengths": {"i-j": float, ...},   // keyed by "min-max" vertex pair
//     "labeling": {                     // optional quotient orbit map
//       "vertex_keys": [k0, ...],
//       "edge_keys": {"i-j": k, ...},
//       "multiplicity": m
//     }
//   }
Mesh read_mesh(std::istream& in);
Mesh read_mesh_file(const std::string& path);
void write_mesh(std::ostream& out, const SimplicialComplex3& c, const EdgeLengthMetric& m);
void write_mesh_file(const std::string& path, const SimplicialComplex3& c,
                     const EdgeLengthMetric& m);

}  // namespace pfc
