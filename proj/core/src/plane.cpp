#include "seqplic/plane.hpp"

#include <cmath>

#include "seqplic/errors.hpp"

namespace seqplic {

DegeneracyClass degeneracy_class(const Vec3& n1, const Vec3& n2, double gamma_tol) {
  const double gamma = dot(n1, n2);
  if (gamma >= 1.0 - gamma_tol) return DegeneracyClass::parallel;
  if (gamma <= -1.0 + gamma_tol) return DegeneracyClass::antiparallel;
  return DegeneracyClass::general;
}

IntersectionFrame intersection_frame(const Vec3& n1, const Vec3& n2, double s, const Vec3& base,
                                     double gamma_tol) {
  const double gamma = dot(n1, n2);
  if (std::abs(gamma) >= 1.0 - gamma_tol)
    throw DegenerateNormals("plane normals are (anti)parallel");
  const double denom = 1.0 - gamma * gamma;
  IntersectionFrame fr;
  fr.gamma = gamma;
  fr.y0 = base + (s / denom) * (n1 - gamma * n2);
  fr.tau = (n2 - gamma * n1) / denom;
  fr.mu = cross(n1, n2) / denom;
  return fr;
}

Vec3 face_origin(const IntersectionFrame& frame, double t, const Vec3& face_vertex,
                 const Vec3& face_normal, double mu_tol) {
  const double mu_n = dot(frame.mu, face_normal);
  if (std::abs(mu_n) < mu_tol)
    throw LineParallelToFace("plane intersection line is parallel to the face");
  const Vec3 y0k = frame.y0 - (dot(frame.y0 - face_vertex, face_normal) / mu_n) * frame.mu;
  const Vec3 tauk = frame.tau - (dot(frame.tau, face_normal) / mu_n) * frame.mu;
  return y0k + t * tauk;
}

}  // namespace seqplic
