#pragma once

#include "seqplic/vec3.hpp"

namespace seqplic {

/// Oriented plane { x : <x - base_point, normal> = signed_distance } and the
/// half-spaces it induces.
struct PlaneConfig {
  Vec3 normal;
  double signed_distance = 0.0;
  Vec3 base_point;

  double levelset(const Vec3& x) const { return dot(x - base_point, normal); }
};

enum class DegeneracyClass { general, parallel, antiparallel };

inline constexpr double kGammaTol = 1e-12;

/// parallel for <n1,n2> >= 1 - gamma_tol, antiparallel for <= -1 + gamma_tol.
DegeneracyClass degeneracy_class(const Vec3& n1, const Vec3& n2, double gamma_tol = kGammaTol);

/// Parametrization of the intersection line of the two planes at primary
/// signed distance s: points y0 + t*tau + u*mu, with
///   <y0 - base, n1> = s, <y0 - base, n2> = 0,
///   <tau, n2> = 1,       <tau, n1> = 0,
///   <mu, n1> = <mu, n2> = 0.
/// Moving the secondary distance t slides the line along tau; u runs along it.
struct IntersectionFrame {
  Vec3 y0;
  Vec3 tau;
  Vec3 mu;
  double gamma = 0.0;  // <n1, n2>
};

/// Throws DegenerateNormals when |<n1,n2>| >= 1 - gamma_tol; callers must
/// branch to the parallel/antiparallel shortcuts instead.
IntersectionFrame intersection_frame(const Vec3& n1, const Vec3& n2, double s, const Vec3& base,
                                     double gamma_tol = kGammaTol);

/// Unique intersection of the line frame (at secondary distance t) with the
/// plane of a face; satisfies all three coplanarity constraints. Throws
/// LineParallelToFace when |<mu, face_normal>| < mu_tol.
Vec3 face_origin(const IntersectionFrame& frame, double t, const Vec3& face_vertex,
                 const Vec3& face_normal, double mu_tol = 1e-12);

}  // namespace seqplic
