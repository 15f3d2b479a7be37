#include "seqplic/oracle.hpp"

#include <array>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "seqplic/errors.hpp"

namespace seqplic {

namespace {

// Small convex cell with rebuildable connectivity, used only for clipping
// fan tetrahedra. Face loops are CCW from outside.
struct ConvexCell {
  std::vector<Vec3> v;
  std::vector<std::vector<int>> f;
};

double cell_volume(const ConvexCell& c) {
  Vec3 o{};
  for (const Vec3& p : c.v) o += p;
  o = o / static_cast<double>(c.v.size());
  double vol6 = 0.0;
  for (const auto& loop : c.f) {
    const Vec3& a = c.v[static_cast<std::size_t>(loop[0])];
    for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
      const Vec3& b = c.v[static_cast<std::size_t>(loop[i])];
      const Vec3& d = c.v[static_cast<std::size_t>(loop[i + 1])];
      vol6 += dot(cross(a - o, b - o), d - o);
    }
  }
  return vol6 / 6.0;
}

// Clips the cell against { lambda(x) <= d }, rebuilding faces and the cap
// loop. Returns false when the intersection is empty.
bool clip_cell(ConvexCell& c, const Vec3& n, double d, const Vec3& base) {
  const std::size_t nv = c.v.size();
  std::vector<double> lam(nv);
  double scale = 0.0;
  for (std::size_t i = 0; i < nv; ++i) {
    lam[i] = dot(c.v[i] - base, n) - d;
    scale = std::max(scale, std::abs(lam[i]));
  }
  const double tol = 1e-14 * std::max(scale, 1e-300);
  std::vector<int> st(nv);
  bool any_in = false, any_out = false;
  for (std::size_t i = 0; i < nv; ++i) {
    st[i] = lam[i] > tol ? 1 : (lam[i] < -tol ? -1 : 0);
    any_in |= st[i] < 0;
    any_out |= st[i] > 0;
  }
  if (!any_out) return true;  // fully kept
  if (!any_in) {
    c.v.clear();
    c.f.clear();
    return false;
  }

  std::vector<Vec3> nev = c.v;
  std::map<std::pair<int, int>, int> cut_index;  // edge -> new vertex
  auto cut_point = [&](int i, int j) {
    const auto key = std::minmax(i, j);
    auto it = cut_index.find(key);
    if (it != cut_index.end()) return it->second;
    const double li = lam[static_cast<std::size_t>(i)];
    const double lj = lam[static_cast<std::size_t>(j)];
    const double t = li / (li - lj);
    nev.push_back(c.v[static_cast<std::size_t>(i)] +
                  t * (c.v[static_cast<std::size_t>(j)] - c.v[static_cast<std::size_t>(i)]));
    const int idx = static_cast<int>(nev.size()) - 1;
    cut_index.emplace(key, idx);
    return idx;
  };

  std::vector<std::vector<int>> nef;
  std::vector<std::pair<int, int>> cap_edges;  // (exit, enter) per clipped face
  for (const auto& loop : c.f) {
    std::vector<int> out;
    int exit_idx = -1, enter_idx = -1;
    const std::size_t m = loop.size();
    for (std::size_t i = 0; i < m; ++i) {
      const int a = loop[i];
      const int b = loop[(i + 1) % m];
      const int sa = st[static_cast<std::size_t>(a)];
      const int sb = st[static_cast<std::size_t>(b)];
      if (sa <= 0) out.push_back(a);
      if (sa < 0 && sb > 0) {
        const int x = cut_point(a, b);
        out.push_back(x);
        exit_idx = x;
      } else if (sa > 0 && sb < 0) {
        const int x = cut_point(a, b);
        out.push_back(x);
        enter_idx = x;
      } else if (sa == 0 && sb > 0) {
        exit_idx = a;
      } else if (sa > 0 && sb == 0) {
        enter_idx = b;
      }
    }
    if (out.size() >= 3) nef.push_back(std::move(out));
    if (exit_idx >= 0 && enter_idx >= 0 && exit_idx != enter_idx)
      cap_edges.emplace_back(exit_idx, enter_idx);
  }

  if (nef.empty()) {
    c.v.clear();
    c.f.clear();
    return false;
  }

  // Chain the per-face cap edges (exit -> enter pairs chain head to tail on a
  // convex cell) into the cap loop, oriented outward along +n.
  if (cap_edges.size() >= 3) {
    std::map<int, int> succ;
    for (const auto& [a, b] : cap_edges) succ[a] = b;
    std::vector<int> cap;
    cap.push_back(cap_edges.front().first);
    for (std::size_t i = 0; i < cap_edges.size(); ++i) {
      auto it = succ.find(cap.back());
      if (it == succ.end()) break;
      if (it->second == cap.front()) break;
      cap.push_back(it->second);
    }
    if (cap.size() >= 3) {
      Vec3 nw{};
      for (std::size_t i = 0; i < cap.size(); ++i)
        nw += cross(nev[static_cast<std::size_t>(cap[i])],
                    nev[static_cast<std::size_t>(cap[(i + 1) % cap.size()])]);
      if (dot(nw, n) < 0.0) std::reverse(cap.begin(), cap.end());
      nef.push_back(std::move(cap));
    }
  }

  c.v = std::move(nev);
  c.f = std::move(nef);
  return true;
}

}  // namespace

double oracle_truncated_volume(const Polyhedron& p, std::span<const HalfSpace> planes,
                               bool strict_star) {
  const Vec3 o = p.base_point();
  const double vol_tol = 1e-12 * p.volume();

  double total = 0.0;
  for (const Face& face : p.faces()) {
    for (std::size_t i = 1; i + 1 < face.verts.size(); ++i) {
      Vec3 a = p.vertex(face.verts[0]);
      Vec3 b = p.vertex(face.verts[i]);
      Vec3 c = p.vertex(face.verts[i + 1]);
      const double signed6 = dot(cross(a - o, b - o), c - o);
      double sign = 1.0;
      if (signed6 < 0.0) {
        if (strict_star && signed6 < -6.0 * vol_tol)
          throw StarPointViolation("vertex mean is not a star point of the polyhedron");
        std::swap(b, c);
        sign = -1.0;
      }
      ConvexCell cell;
      cell.v = {o, a, b, c};
      cell.f = {{1, 2, 3}, {0, 2, 1}, {0, 3, 2}, {0, 1, 3}};
      bool alive = true;
      for (const HalfSpace& h : planes) {
        if (!clip_cell(cell, h.normal, h.signed_distance, p.base_point())) {
          alive = false;
          break;
        }
      }
      if (alive) total += sign * cell_volume(cell);
    }
  }
  return std::max(total, 0.0);
}

}  // namespace seqplic
