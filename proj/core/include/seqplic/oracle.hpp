#pragma once

#include <span>

#include "seqplic/polyhedron.hpp"
#include "seqplic/vec3.hpp"

namespace seqplic {

/// Half-space { x : <x - base, normal> <= signed_distance } relative to a
/// polyhedron's base point.
struct HalfSpace {
  Vec3 normal;
  double signed_distance = 0.0;
};

/// Exact volume of P intersected with all given negative half-spaces,
/// computed on a completely separate path from the divergence machinery:
/// the polyhedron is decomposed into signed tetrahedra fanned from the
/// vertex mean, and every tetrahedron is clipped against each plane with a
/// connectivity-rebuilding convex clipper.
///
/// The signed decomposition is exact for any closed oriented surface; with
/// strict_star set, a negative fan tetrahedron (beyond tolerance) raises
/// StarPointViolation, which is the sanity check for inputs claimed convex.
/// Returns 0 for an empty intersection.
double oracle_truncated_volume(const Polyhedron& p, std::span<const HalfSpace> planes,
                               bool strict_star = false);

inline double oracle_truncated_volume(const Polyhedron& p, std::initializer_list<HalfSpace> planes,
                                      bool strict_star = false) {
  return oracle_truncated_volume(p, std::span<const HalfSpace>(planes.begin(), planes.size()),
                                 strict_star);
}

}  // namespace seqplic
