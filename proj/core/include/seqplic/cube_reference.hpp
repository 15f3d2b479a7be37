#pragma once

#include <array>
#include <vector>

#include "seqplic/polyhedron.hpp"
#include "seqplic/positioning.hpp"
#include "seqplic/vec3.hpp"

namespace seqplic {

/// Cube normal canonicalized by reflections and axis permutations so that
/// n[0] >= n[1] >= n[2] >= 0. The cube is symmetric under these maps, so
/// positions measured from the supporting corner are invariant.
struct CanonicalCubeNormal {
  std::array<double, 3> n{};
  std::array<int, 3> perm{};    // canonical slot i came from original axis perm[i]
  std::array<double, 3> sign{};  // sign flip applied per original axis
};

CanonicalCubeNormal canonicalize_cube_normal(const Vec3& n);

/// Explicit inverse of the cube volume fraction: position of the plane with
/// unit normal n enclosing fraction alpha of the cube of edge dx, measured
/// from the supporting corner (the cube vertex minimizing <x,n>) along n.
/// Fractions above 1/2 use the point symmetry of the cube fraction.
double cube_explicit_position(const Vec3& n, double alpha, double dx);

/// Same position expressed in the cube-centered frame used by the library
/// planes: <x - center, n> = result.
double cube_explicit_position_centered(const Vec3& n, double alpha, double dx);

/// Convex polyhedron with explicit connectivity for the decomposition-based
/// baseline; face loops are CCW from outside.
struct ConvexPolyhedron {
  std::vector<Vec3> verts;
  std::vector<std::vector<int>> faces;
};

ConvexPolyhedron to_convex_polyhedron(const Polyhedron& p);

/// Clips the convex polyhedron against { <x - base, n> <= d }, rebuilding
/// vertex and face connectivity (the cap polygon is assembled by angular
/// sorting, valid for convex bodies).
ConvexPolyhedron clip_convex(const ConvexPolyhedron& c, const Vec3& n, double d, const Vec3& base,
                             double zero_tol = 1e-14);

/// Volume by tetrahedral fan from the vertex mean. Throws StarPointViolation
/// if a fan tetrahedron comes out negative beyond tolerance (cannot happen
/// for convex input).
double convex_volume(const ConvexPolyhedron& c);

/// Volume of c below the plane, by clip + fan decomposition. A plane grazing
/// the extreme vertices within tolerance snaps to the empty/full volume.
double decomposition_volume(const ConvexPolyhedron& c, const Vec3& n, double d, const Vec3& base,
                            double zero_tol = 1e-14);

struct BaselineResult {
  double t_star = 0.0;
  int truncations = 0;
  TopologyClass topology = TopologyClass::triple;
};

/// Decomposition-based accelerated bisection for the secondary position in a
/// cube cell: tentative positions come from the explicit two-phase inverse
/// applied to whole-cell fractions, bracketed between the non-wetted and
/// fully wetted assumptions, and the enclosed-volume error (one truncation of
/// the remnant polyhedron per evaluation) both classifies the shortcut cases
/// and accelerates the bisection.
BaselineResult baseline_position_secondary(const Polyhedron& cube, const Vec3& n1, double alpha1,
                                           const Vec3& n2, double alpha2, double eps = 1e-12,
                                           int max_iter = 200);

}  // namespace seqplic
