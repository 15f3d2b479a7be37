#include "seqplic/truncation.hpp"

#include <algorithm>
#include <cmath>

#include "seqplic/errors.hpp"
#include "seqplic/status.hpp"

namespace seqplic {

namespace {
constexpr double kBetaSnap = 1e-12;
constexpr double kInf = 1e300;
}  // namespace

Vec3 edge_intersection_point(const Vec3& x_m, const Vec3& x_m1, const Vec3& n1, double s,
                             const Vec3& base) {
  const double denom = dot(x_m1 - x_m, n1);
  if (std::abs(denom) <= 2.0 * kZeroTol)
    throw ParallelEdge("edge is parallel to the plane despite intersected status");
  const double beta = (s + dot(base - x_m, n1)) / denom;
  return x_m + beta * (x_m1 - x_m);
}

TruncatedPolyhedron truncate_faces(const Polyhedron& p, const Vec3& n1, double s_star,
                                   const Vec3& n2, double zero_tol) {
  TruncatedPolyhedron t;
  t.parent_ = &p;
  t.primary_ = PlaneConfig{n1, s_star, p.base_point()};
  t.n2_ = n2;
  t.zero_tol_ = zero_tol;
  t.frame_ = intersection_frame(n1, n2, s_star, p.base_point());

  const Vec3 base = p.base_point();
  double vol1_3 = 0.0;  // 3x primary immersed volume
  t.sF_min_global_ = kInf;
  t.sF_max_global_ = -kInf;
  t.removed_min_ = kInf;
  t.removed_max_ = -kInf;

  t.faces_.resize(p.faces().size());
  for (std::size_t k = 0; k < p.faces().size(); ++k) {
    const Face& f = p.face(k);
    TruncatedFace& rec = t.faces_[k];
    const std::size_t m = f.verts.size();

    rec.whole = build_face_cut(p, k, n2, zero_tol);
    {
      const FacePlaneCut cut1 = build_face_cut(p, k, n1, zero_tol);
      rec.A1 = eval_face_cut(cut1, s_star, zero_tol).value;
    }
    rec.area_cut = f.area - rec.A1;
    vol1_3 += (dot(p.vertex(f.verts[0]) - base, f.normal) - s_star * dot(n1, f.normal)) * rec.A1;

    std::vector<int> st(m);
    bool has_pos = false;
    for (std::size_t i = 0; i < m; ++i) {
      st[i] = vertex_status(dot(p.vertex(f.verts[i]) - base, n1) - s_star, zero_tol);
      has_pos |= st[i] == 1;
      if (st[i] <= 0) {
        const double lam2 = dot(p.vertex(f.verts[i]) - base, n2);
        t.removed_min_ = std::min(t.removed_min_, lam2);
        t.removed_max_ = std::max(t.removed_max_, lam2);
      }
    }
    rec.empty = !has_pos;
    if (rec.empty) continue;

    rec.c0 = dot(p.vertex(f.verts[0]) - t.frame_.y0, f.normal);
    rec.c1 = -dot(t.frame_.tau, f.normal);

    double sT_lo = kInf, sT_hi = -kInf;
    auto note_cut = [&](double lam2) {
      sT_lo = std::min(sT_lo, lam2);
      sT_hi = std::max(sT_hi, lam2);
      t.removed_min_ = std::min(t.removed_min_, lam2);
      t.removed_max_ = std::max(t.removed_max_, lam2);
    };

    rec.sF_min = kInf;
    rec.sF_max = -kInf;
    auto add_edge = [&](const Vec3& anchor, const Vec3& other, int parent, bool from_cut,
                        double beta) {
      TruncatedEdge e;
      e.anchor = anchor;
      e.other = other;
      e.parent_edge = parent;
      e.from_cut = from_cut;
      e.beta = beta;
      e.len = norm(other - anchor);
      e.lam2_anchor = dot(anchor - base, n2);
      e.lam2_other = dot(other - base, n2);
      const double denom = e.lam2_other - e.lam2_anchor;
      e.crossable = std::abs(denom) > 2.0 * zero_tol;
      if (e.crossable) {
        e.L0 = -e.lam2_anchor / denom;
        e.L1 = 1.0 / denom;
      }
      rec.sF_min = std::min(rec.sF_min, std::min(e.lam2_anchor, e.lam2_other));
      rec.sF_max = std::max(rec.sF_max, std::max(e.lam2_anchor, e.lam2_other));
      t.cut_vertices_.push_back(anchor);
      t.cut_vertices_.push_back(other);
      rec.edges.push_back(e);
    };

    for (std::size_t i = 0; i < m; ++i) {
      const Vec3& a = p.vertex(f.verts[i]);
      const Vec3& b = p.vertex(f.verts[(i + 1) % m]);
      const int sa = st[i];
      const int sb = st[(i + 1) % m];
      const int es = edge_status(sa, sb);
      if (es == -1 || es == -2) continue;
      if (es != 0) {  // copied (1, 2, 3)
        add_edge(a, b, static_cast<int>(i), false, 0.0);
        if (sa == 0) note_cut(dot(a - base, n2));
        if (sb == 0) note_cut(dot(b - base, n2));
        continue;
      }
      const double la = dot(a - base, n1) - s_star;
      const double lb = dot(b - base, n1) - s_star;
      const double beta = la / (la - lb);
      if (beta <= kBetaSnap) {
        // intersection collapses onto the first vertex
        if (sa == -1) {
          add_edge(a, b, static_cast<int>(i), false, 0.0);
          note_cut(dot(a - base, n2));
        }
        continue;  // sa == 1: sliver between a and the cut is dropped
      }
      if (beta >= 1.0 - kBetaSnap) {
        if (sa == 1) {
          add_edge(a, b, static_cast<int>(i), false, 0.0);
          note_cut(dot(b - base, n2));
        }
        continue;
      }
      const Vec3 xhat = a + beta * (b - a);
      note_cut(dot(xhat - base, n2));
      // the anchor is the retained original vertex
      if (sa == 1)
        add_edge(a, xhat, static_cast<int>(i), true, beta);
      else
        add_edge(b, xhat, static_cast<int>(i), true, beta);
    }

    rec.has_cut = sT_lo <= sT_hi;
    if (rec.has_cut) {
      rec.sT_min = sT_lo;
      rec.sT_max = sT_hi;
      const double mu_tol =
          1e-12 * (1.0 + std::max(std::abs(sT_lo), std::abs(sT_hi)) / f.char_length);
      rec.mu_ok = std::abs(dot(t.frame_.mu, f.normal)) >= mu_tol;
      rec.sub_threshold = rec.mu_ok ? rec.sT_max : 0.5 * (rec.sT_min + rec.sT_max);
    } else {
      rec.sT_min = kInf;
      rec.sT_max = -kInf;
      rec.mu_ok = false;
      rec.sub_threshold = -kInf;  // A1 == 0 for uncut faces
    }

    if (rec.mu_ok) {
      const double mu_n = dot(t.frame_.mu, f.normal);
      const Vec3& v0 = p.vertex(f.verts[0]);
      const Vec3 y0k = t.frame_.y0 - (dot(t.frame_.y0 - v0, f.normal) / mu_n) * t.frame_.mu;
      const Vec3 tauk = t.frame_.tau - (dot(t.frame_.tau, f.normal) / mu_n) * t.frame_.mu;
      for (TruncatedEdge& e : rec.edges) {
        const Vec3& N = f.co_normals[static_cast<std::size_t>(e.parent_edge)];
        e.a0 = dot(e.anchor - y0k, N);
        e.a1 = -dot(tauk, N);
      }
    }

    t.sF_min_global_ = std::min(t.sF_min_global_, rec.sF_min);
    t.sF_max_global_ = std::max(t.sF_max_global_, rec.sF_max);
  }

  const double alpha1 = vol1_3 / (3.0 * p.volume());
  if (!(alpha1 > 0.0)) throw EmptyTruncation("primary plane does not truncate the polyhedron");
  if (!(alpha1 < 1.0)) throw FullTruncation("primary plane truncates the whole polyhedron");

  // Cut volume from the truncated faces themselves (the lid on the primary
  // plane contributes nothing to an origin on that plane). Summands scale
  // with the truncated areas, which keeps the relative accuracy of sliver
  // cuts far better than |P|*(1 - alpha1).
  double cut3 = 0.0;
  for (const TruncatedFace& rec : t.faces())
    if (!rec.empty) cut3 += rec.c0 * rec.area_cut;
  t.cut_volume_ = cut3 / 3.0;
  if (!(t.cut_volume_ > 0.0)) throw FullTruncation("truncated polyhedron has no volume");
  return t;
}

}  // namespace seqplic
