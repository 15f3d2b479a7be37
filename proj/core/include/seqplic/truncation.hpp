#pragma once

#include <vector>

#include "seqplic/face_cut.hpp"
#include "seqplic/plane.hpp"
#include "seqplic/polyhedron.hpp"
#include "seqplic/vec3.hpp"

namespace seqplic {

/// Piece of an original face edge surviving the primary truncation. The
/// anchor endpoint is the retained original vertex (or the loop-first vertex
/// of a fully copied edge); the crossing parameter of the secondary plane is
/// L0 + t*L1 measured from the anchor.
struct TruncatedEdge {
  Vec3 anchor;
  Vec3 other;          // primary intersection point for cut parent edges
  int parent_edge = 0;  // edge index m within the parent face
  bool from_cut = false;
  double beta = 0.0;   // primary crossing parameter on the parent edge
  double len = 0.0;
  double lam2_anchor = 0.0, lam2_other = 0.0;  // secondary level-set values
  double L0 = 0.0, L1 = 0.0;
  bool crossable = false;
  double a0 = 0.0, a1 = 0.0;  // coefficient against the moving triple origin
};

/// Per-face static data of the once-truncated polyhedron.
struct TruncatedFace {
  bool empty = true;         // no part of the face survives the truncation
  std::vector<TruncatedEdge> edges;
  double A1 = 0.0;           // primary immersed area |H1- ∩ F|
  double area_cut = 0.0;     // |F| - A1
  double c0 = 0.0, c1 = 0.0;  // volume coefficient c0 + t*c1
  double sF_min = 0.0, sF_max = 0.0;  // secondary span of the truncated face
  bool has_cut = false;      // primary plane crosses the face
  double sT_min = 0.0, sT_max = 0.0;  // secondary span of the cut segment
  bool mu_ok = false;          // triple origin well conditioned
  double sub_threshold = 0.0;  // subtract A1 from the plain branch above this
  FacePlaneCut whole;        // original polygon against the secondary plane
};

/// Face-indexed representation of P ∩ {lambda_1 >= s*}. Connectivity is never
/// rebuilt: each face keeps a (possibly open) chain of truncated edges plus
/// the static coefficients needed to evaluate secondary volume fractions.
/// Immutable after construction; safe to share across threads.
class TruncatedPolyhedron {
 public:
  const Polyhedron& parent() const { return *parent_; }
  const PlaneConfig& primary_plane() const { return primary_; }
  const Vec3& secondary_normal() const { return n2_; }
  const IntersectionFrame& frame() const { return frame_; }
  double cut_volume() const { return cut_volume_; }
  double zero_tol() const { return zero_tol_; }
  const std::vector<TruncatedFace>& faces() const { return faces_; }
  /// Vertices of the truncated polyhedron (retained originals and primary
  /// intersection points, with per-face duplicates).
  const std::vector<Vec3>& cut_vertices() const { return cut_vertices_; }
  /// Secondary spans aggregated over non-empty faces.
  double sF_min_global() const { return sF_min_global_; }
  double sF_max_global() const { return sF_max_global_; }
  /// Secondary span of the removed region H1- ∩ P (its vertices and the
  /// primary intersection points); this is what the topological
  /// classification compares the secondary position against.
  double removed_min() const { return removed_min_; }
  double removed_max() const { return removed_max_; }

  friend TruncatedPolyhedron truncate_faces(const Polyhedron& p, const Vec3& n1, double s_star,
                                            const Vec3& n2, double zero_tol);

 private:
  TruncatedPolyhedron() = default;

  const Polyhedron* parent_ = nullptr;
  PlaneConfig primary_;
  Vec3 n2_;
  IntersectionFrame frame_;
  double cut_volume_ = 0.0;
  double zero_tol_ = 0.0;
  std::vector<TruncatedFace> faces_;
  std::vector<Vec3> cut_vertices_;
  double sF_min_global_ = 0.0;
  double sF_max_global_ = 0.0;
  double removed_min_ = 0.0;
  double removed_max_ = 0.0;
};

/// Intersection of the segment (x_m, x_m1) with the plane at signed distance
/// s from base along n1. Requires a non-degenerately intersected edge;
/// throws ParallelEdge when the edge runs parallel to the plane.
Vec3 edge_intersection_point(const Vec3& x_m, const Vec3& x_m1, const Vec3& n1, double s,
                             const Vec3& base);

/// Constructs the truncated polyhedron for the primary plane (n1, s*) and
/// precomputes every coefficient needed by the secondary volume function for
/// n2. Requires 0 < alpha1(s*) < 1; throws EmptyTruncation / FullTruncation
/// otherwise. The secondary normal is baked in: building all static
/// coefficients (and the triple-line frame) requires it.
TruncatedPolyhedron truncate_faces(const Polyhedron& p, const Vec3& n1, double s_star,
                                   const Vec3& n2, double zero_tol = kZeroTol);

}  // namespace seqplic
