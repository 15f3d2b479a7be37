#include "seqplic/volume.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "seqplic/errors.hpp"

namespace seqplic {

namespace {

// Consistency gate before clamping: tol is expressed in the fraction's own
// normalization, so callers scale it to keep the bound at 1e-12 of the
// original polyhedron volume.
double checked_fraction(double v, double tol) {
  if (v < -tol || v > 1.0 + tol)
    throw Error("volume fraction outside [0,1] beyond tolerance");
  return std::clamp(v, 0.0, 1.0);
}

// Immersed length and slope of a truncated edge; the crossing parameter is
// measured from the anchor vertex.
inline void trunc_edge_length(const TruncatedEdge& e, double t, double zero_tol, double& len,
                              double& dlen) {
  const int sa = vertex_status(e.lam2_anchor - t, zero_tol);
  const int so = vertex_status(e.lam2_other - t, zero_tol);
  const int es = edge_status(sa, so);
  if (es == 1 || es == 2) {
    len = 0.0;
    dlen = 0.0;
  } else if (es == 0) {
    const double xi = e.L0 + t * e.L1;
    if (sa == -1) {
      len = e.len * xi;
      dlen = e.len * e.L1;
    } else {
      len = e.len * (1.0 - xi);
      dlen = -e.len * e.L1;
    }
  } else {
    len = e.len;
    dlen = 0.0;
  }
}

AreaEvaluation eval_triple_branch(const TruncatedFace& rec, double t, double zero_tol) {
  AreaEvaluation r;
  for (const TruncatedEdge& e : rec.edges) {
    double len = 0.0, dlen = 0.0;
    trunc_edge_length(e, t, zero_tol, len, dlen);
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

AreaEvaluation eval_plain_branch(const TruncatedFace& rec, double t, double zero_tol) {
  AreaEvaluation r = eval_face_cut(rec.whole, t, zero_tol);
  if (t > rec.sub_threshold) r.value -= rec.A1;
  return r;
}

// Branch selection for one face: constant outside the face span, truncated
// edges against the moving triple origin whenever that origin is well
// conditioned, whole-polygon edges with the A1 correction as the fallback.
// The triple branch is exact on the whole span and keeps every summand at
// the scale of the truncated face, which matters for sliver cuts; the
// fallback reproduces the printed case split for grazing intersection lines.
AreaEvaluation eval_face(const TruncatedFace& rec, double t, double zero_tol) {
  AreaEvaluation r;
  // The constant branches own a zero_tol collar: the edge-based branches are
  // only provably valid strictly inside the face span, and at the boundary
  // the snapped statuses can otherwise leak the interior area.
  const double lo_gate = rec.sF_min + zero_tol;
  const double hi_gate = rec.sF_max - zero_tol;
  if (hi_gate <= lo_gate) {
    if (t > 0.5 * (rec.sF_min + rec.sF_max)) r.value = rec.area_cut;
    return r;
  }
  if (t < lo_gate) return r;
  if (t > hi_gate) {
    r.value = rec.area_cut;
    return r;
  }
  if (rec.mu_ok) return eval_triple_branch(rec, t, zero_tol);
  return eval_plain_branch(rec, t, zero_tol);
}

}  // namespace

std::size_t BracketTable::locate(double s) const {
  if (d_.size() < 2 || s <= d_[1]) return 0;
  const auto it = std::lower_bound(d_.begin(), d_.end(), s);
  const std::size_t idx = static_cast<std::size_t>(it - d_.begin());
  if (idx >= d_.size()) return d_.size() - 2;
  return idx - 1;
}

BracketTable build_bracket_table(std::span<const Vec3> points, const Vec3& n, const Vec3& base,
                                 double zero_tol) {
  std::vector<double> d;
  d.reserve(points.size());
  for (const Vec3& p : points) d.push_back(dot(p - base, n));
  std::sort(d.begin(), d.end());
  std::vector<double> out;
  out.reserve(d.size());
  for (double v : d) {
    if (out.empty() || v - out.back() > zero_tol) out.push_back(v);
  }
  return BracketTable(std::move(out));
}

PrimaryVolume::PrimaryVolume(const Polyhedron& p, const Vec3& n1, double zero_tol)
    : p_(&p), n1_(n1), zero_tol_(zero_tol), inv_vol3_(1.0 / (3.0 * p.volume())) {
  faces_.reserve(p.faces().size());
  for (std::size_t k = 0; k < p.faces().size(); ++k) {
    const Face& f = p.face(k);
    FaceData fd;
    fd.cut = build_face_cut(p, k, n1, zero_tol);
    fd.d = dot(p.vertex(f.verts[0]) - p.base_point(), f.normal);
    fd.g = dot(n1, f.normal);
    faces_.push_back(std::move(fd));
  }
}

VolumeEvaluation PrimaryVolume::operator()(double s) const {
  double v = 0.0, v1 = 0.0, v2 = 0.0, v3 = 0.0;
  for (const FaceData& fd : faces_) {
    const AreaEvaluation a = eval_face_cut(fd.cut, s, zero_tol_);
    const double u = fd.d - s * fd.g;
    v += u * a.value;
    v1 += -fd.g * a.value + u * a.d1;
    v2 += -2.0 * fd.g * a.d1 + u * a.d2;
    v3 += -3.0 * fd.g * a.d2;
  }
  VolumeEvaluation r;
  r.value = checked_fraction(v * inv_vol3_, 1e-12);
  r.d1 = std::max(v1 * inv_vol3_, 0.0);
  r.d2 = v2 * inv_vol3_;
  r.d3 = v3 * inv_vol3_;
  return r;
}

BracketTable PrimaryVolume::brackets() const {
  return build_bracket_table(p_->vertices(), n1_, p_->base_point(), zero_tol_);
}

VolumeEvaluation primary_volume_fraction(const Polyhedron& p, const Vec3& n1, double s,
                                         double zero_tol) {
  return PrimaryVolume(p, n1, zero_tol)(s);
}

VolumeEvaluation secondary_volume_fraction(const TruncatedPolyhedron& t_poly, const Vec3& n2,
                                           double t) {
  assert(norm(n2 - t_poly.secondary_normal()) < 1e-12);
  (void)n2;
  const double zero_tol = t_poly.zero_tol();
  double v = 0.0, v1 = 0.0, v2 = 0.0, v3 = 0.0;
  for (const TruncatedFace& rec : t_poly.faces()) {
    if (rec.empty) continue;
    const AreaEvaluation a = eval_face(rec, t, zero_tol);
    const double w = rec.c0 + t * rec.c1;
    v += w * a.value;
    v1 += rec.c1 * a.value + w * a.d1;
    v2 += 2.0 * rec.c1 * a.d1 + w * a.d2;
    v3 += 3.0 * rec.c1 * a.d2;
  }
  const double inv = 1.0 / (3.0 * t_poly.cut_volume());
  VolumeEvaluation r;
  const double tol = 1e-12 * t_poly.parent().volume() / t_poly.cut_volume();
  r.value = checked_fraction(v * inv, tol);
  r.d1 = std::max(v1 * inv, 0.0);
  r.d2 = v2 * inv;
  r.d3 = v3 * inv;
  return r;
}

double immersed_face_area(const TruncatedPolyhedron& t_poly, std::size_t k, double t,
                          FaceBranch branch) {
  const TruncatedFace& rec = t_poly.faces()[k];
  if (rec.empty) return 0.0;
  const double zero_tol = t_poly.zero_tol();
  switch (branch) {
    case FaceBranch::force_triple:
      if (!rec.has_cut) throw Error("face has no cut segment; triple branch undefined");
      return eval_triple_branch(rec, t, zero_tol).value;
    case FaceBranch::force_plain:
      return eval_plain_branch(rec, t, zero_tol).value;
    case FaceBranch::automatic:
    default:
      return eval_face(rec, t, zero_tol).value;
  }
}

}  // namespace seqplic
