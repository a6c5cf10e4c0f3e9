#pragma once

#include <stdexcept>
#include <string>

namespace pfc {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Degenerate or metrically impossible simplex (triangle inequality, Cayley-Menger).
struct InvalidSimplexError : Error {
  using Error::Error;
};

// Complex is not a closed 3-manifold (bad triangle incidence, broken edge link, ...).
struct TopologyError : Error {
  using Error::Error;
};

// Lookup of a vertex/edge/tet that does not exist.
struct NotFoundError : Error {
  using Error::Error;
};

// Dual cell construction failed (empty clip, inconsistent orbit data, ...).
struct DegenerateDualError : Error {
  using Error::Error;
};

// Iterative solver (geodesic shooting, ...) failed to converge.
struct SolverError : Error {
  using Error::Error;
};

// Chart evaluation outside its valid domain or with invalid parameters.
struct ChartError : Error {
  using Error::Error;
};

// Triangulation generator given inconsistent parameters.
struct GeneratorError : Error {
  using Error::Error;
};

// Malformed mesh/CSV file input.
struct IoError : Error {
  using Error::Error;
};

}  // namespace pfc
