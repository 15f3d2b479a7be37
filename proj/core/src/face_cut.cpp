#include "seqplic/face_cut.hpp"

#include <cmath>

namespace seqplic {

FacePlaneCut build_face_cut(const Polyhedron& p, std::size_t k, const Vec3& n, double zero_tol) {
  const Face& f = p.face(k);
  const std::size_t m = f.verts.size();

  FacePlaneCut fc;
  fc.area = f.area;

  const double gf = dot(f.normal, n);
  if (std::abs(gf) >= 1.0 - 1e-12) {
    fc.perp = true;
    fc.lam_face = p.levelset(p.vertex(f.verts[0]), n);
    fc.lam_min = fc.lam_max = fc.lam_face;
    return fc;
  }

  // In-plane direction with <w,n> = 1, <w,n_F> = 0; the moving origin
  // z(t) = v0 + (t - lambda(v0)) w stays on the face plane and on the level
  // set, so only edge terms remain in the divergence sum.
  const Vec3 w = (n - gf * f.normal) / (1.0 - gf * gf);
  const Vec3 v0 = p.vertex(f.verts[0]);
  const double lam0 = p.levelset(v0, n);

  fc.lam_min = 1e300;
  fc.lam_max = -1e300;
  fc.edges.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec3& a = p.vertex(f.verts[i]);
    const Vec3& b = p.vertex(f.verts[(i + 1) % m]);
    EdgeTerm& e = fc.edges[i];
    e.len = norm(b - a);
    e.lam1 = p.levelset(a, n);
    e.lam2 = p.levelset(b, n);
    fc.lam_min = std::min(fc.lam_min, std::min(e.lam1, e.lam2));
    fc.lam_max = std::max(fc.lam_max, std::max(e.lam1, e.lam2));
    const double denom = e.lam2 - e.lam1;
    e.crossable = std::abs(denom) > 2.0 * zero_tol;
    if (e.crossable) {
      e.L0 = -e.lam1 / denom;
      e.L1 = 1.0 / denom;
    }
    const Vec3& N = f.co_normals[i];
    const double wN = dot(w, N);
    e.a0 = dot(a - v0, N) + lam0 * wN;
    e.a1 = -wN;
  }
  return fc;
}

namespace {

// Immersed length and slope of one edge term at level t.
inline void edge_length(const EdgeTerm& e, double t, double zero_tol, double& len, double& dlen) {
  const int s1 = vertex_status(e.lam1 - t, zero_tol);
  const int s2 = vertex_status(e.lam2 - t, zero_tol);
  const int es = edge_status(s1, s2);
  if (es == 1 || es == 2) {
    len = 0.0;
    dlen = 0.0;
  } else if (es == 0) {
    const double xi = e.L0 + t * e.L1;
    if (s1 == -1) {
      len = e.len * xi;
      dlen = e.len * e.L1;
    } else {
      len = e.len * (1.0 - xi);
      dlen = -e.len * e.L1;
    }
  } else {  // -1, -2, 3
    len = e.len;
    dlen = 0.0;
  }
}

}  // namespace

AreaEvaluation eval_face_cut(const FacePlaneCut& fc, double t, double zero_tol) {
  AreaEvaluation r;
  if (fc.perp) {
    if (vertex_status(fc.lam_face - t, zero_tol) == -1) r.value = fc.area;
    return r;
  }
  if (t < fc.lam_min - zero_tol) return r;
  if (t > fc.lam_max + zero_tol) {
    r.value = fc.area;
    return r;
  }
  for (const EdgeTerm& e : fc.edges) {
    double len = 0.0, dlen = 0.0;
    edge_length(e, t, zero_tol, len, dlen);
    const double a = e.a0 + t * e.a1;
    r.value += a * len;
    r.d1 += e.a1 * len + a * dlen;
    r.d2 += 2.0 * e.a1 * dlen;
  }
  r.value *= 0.5;
  r.d1 *= 0.5;
  r.d2 *= 0.5;
  return r;
}

double immersed_edge_length(const Vec3& v1, const Vec3& v2, const Vec3& n, const Vec3& base,
                            double t, double zero_tol) {
  const double lam1 = dot(v1 - base, n);
  const double lam2 = dot(v2 - base, n);
  const int s1 = vertex_status(lam1 - t, zero_tol);
  const int s2 = vertex_status(lam2 - t, zero_tol);
  const int es = edge_status(s1, s2);
  const double len = norm(v2 - v1);
  if (es == 1 || es == 2) return 0.0;
  if (es != 0) return len;
  const double denom = lam2 - lam1;
  const double xi = (t - lam1) / denom;
  return s1 == -1 ? len * xi : len * (1.0 - xi);
}

}  // namespace seqplic
