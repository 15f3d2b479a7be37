#pragma once

#include <vector>

#include "seqplic/polyhedron.hpp"
#include "seqplic/status.hpp"
#include "seqplic/vec3.hpp"

namespace seqplic {

/// One boundary edge inside a face's 2D divergence sum against a single
/// cutting plane. The immersed sub-length is linear on each status bracket:
/// the crossing sits at edge parameter L0 + t*L1 measured from endpoint 1.
struct EdgeTerm {
  double len = 0.0;
  double lam1 = 0.0, lam2 = 0.0;  // level-set values of the endpoints
  double L0 = 0.0, L1 = 0.0;
  bool crossable = false;  // edge not parallel to the plane
  double a0 = 0.0, a1 = 0.0;  // divergence coefficient a0 + t*a1
};

/// Static data for |{lambda <= t} ∩ polygon| of one planar face against the
/// plane family with unit normal n: the divergence origin is kept coplanar to
/// the face and to the moving plane, which removes the plane-segment boundary
/// contribution and leaves a pure edge sum with per-edge affine coefficients.
struct FacePlaneCut {
  std::vector<EdgeTerm> edges;
  double lam_min = 0.0, lam_max = 0.0;  // projection span of the polygon
  double area = 0.0;
  bool perp = false;       // face plane parallel to the cutting plane
  double lam_face = 0.0;   // common level-set value when perp
};

struct AreaEvaluation {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Builds the static cut data of face k of p against normal n.
FacePlaneCut build_face_cut(const Polyhedron& p, std::size_t k, const Vec3& n, double zero_tol);

/// Immersed area of the polygon below level t, with derivatives in t.
/// Status conventions follow the vertex/edge status tables, so values at
/// bracket boundaries use the snapped degenerate cases.
AreaEvaluation eval_face_cut(const FacePlaneCut& fc, double t, double zero_tol);

/// Immersed length |{lambda <= t}| of one edge with the generic linear
/// coefficients; statuses of the endpoints decide between the constant and
/// crossing branches.
double immersed_edge_length(const Vec3& v1, const Vec3& v2, const Vec3& n, const Vec3& base,
                            double t, double zero_tol = kZeroTol);

}  // namespace seqplic
