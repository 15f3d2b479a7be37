#pragma once

namespace seqplic {

/// Tubular neighborhood half-thickness used for all zero comparisons against
/// a plane. Absolute, so it implicitly assumes O(1) cell dimensions.
inline constexpr double kZeroTol = 1e-14;

/// Status of a vertex with respect to an oriented plane, from its level-set
/// value: -1 interior, 0 on the plane (within zero_tol), 1 exterior.
inline int vertex_status(double levelset_value, double zero_tol = kZeroTol) {
  if (levelset_value < -zero_tol) return -1;
  if (levelset_value > zero_tol) return 1;
  return 0;
}

/// Status of an edge as an injective function of its two vertex statuses:
///   1 exterior, -1 interior, 0 intersected,
///   2 degenerate exterior, -2 degenerate interior, 3 both vertices on plane.
inline int edge_status(int s_u, int s_v) {
  if (s_u == 0 && s_v == 0) return 3;
  if (s_u == 0 || s_v == 0) return 2 * (s_u + s_v);
  if (s_u == s_v) return s_u;
  return 0;
}

}  // namespace seqplic
