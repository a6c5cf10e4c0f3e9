#pragma once

#include <iosfwd>
#include <string>

#include "pfc/complex.hpp"
#include "pfc/curvature.hpp"
#include "pfc/flow.hpp"
#include "pfc/generators.hpp"

namespace pfc {

// Formats with 12 significant digits, the precision all CSV output uses.
std::string format_number(double v);

// Curvature CSV: one row per vertex/edge orbit and quantity, columns
//   entity-kind, orbit-id, value, smooth-reference, percent-error
// Reference and error columns are empty when no smooth reference is given.
void write_curvature_csv(std::ostream& os, const SimplicialComplex3& c, const CurvatureReport& pf,
                         const SmoothReferences* smooth = nullptr);

// Flow trajectory CSV: one row per recorded sample and edge orbit, columns
//   step, t, orbit-edge-id, length, ricci, average-scalar, max-deficit-deg,
//   total-volume
// Edge quantities are recomputed from each sample's metric.
void write_trajectory_csv(std::ostream& os, const SimplicialComplex3& c,
                          const FlowTrajectory& traj, const DualOptions& options = {});

}  // namespace pfc
