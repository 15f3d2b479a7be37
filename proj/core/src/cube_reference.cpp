#include "seqplic/cube_reference.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "seqplic/errors.hpp"
#include "seqplic/status.hpp"

namespace seqplic {

namespace {

constexpr double kComponentTol = 1e-12;

double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

// Position from the supporting corner on the reference cube (dx = 1) for
// canonical components n1 >= n2 >= n3 >= 0 and fraction a <= 1/2.
double reference_position(double n1, double n2, double n3, double a) {
  if (n2 < kComponentTol) return a;  // single non-zero component

  if (n3 < kComponentTol) {
    // two components, parametrized by the polar angle
    const double phi = std::atan2(n2, n1);
    const double tphi = n2 / n1;
    if (a <= 0.5 * tphi) return std::sqrt(a * std::sin(2.0 * phi));
    return std::sin(phi) + std::cos(phi) * (a - 0.5 * tphi);
  }

  std::array<double, 5> bp{};
  bp[0] = 0.0;
  bp[1] = n3 * n3 / (6.0 * n1 * n2);
  bp[2] = (n2 * n2 * n2 - std::pow(n2 - n3, 3)) / (6.0 * n1 * n2 * n3);
  bp[3] = (n1 >= n2 + n3)
              ? (n2 + n3) / (2.0 * n1)
              : (n1 * n1 * n1 - std::pow(n1 - n2, 3) - std::pow(n1 - n3, 3)) / (6.0 * n1 * n2 * n3);
  bp[4] = 0.5;

  if (a <= bp[1]) return std::cbrt(6.0 * a * n1 * n2 * n3);
  if (a <= bp[2]) return 0.5 * n3 + std::sqrt(2.0 * a * n1 * n2 - n3 * n3 / 12.0);
  if (a <= bp[3]) {
    const double arg = clamp1(0.375 * std::sqrt(2.0 / (n2 * n3)) * (n2 + n3 - 2.0 * n1 * a));
    return n2 + n3 - std::sqrt(8.0 * n2 * n3) * std::cos(std::acos(arg) / 3.0 + M_PI / 3.0);
  }
  if (n1 >= n2 + n3) return 0.5 * (2.0 * a * n1 + n2 + n3);
  const double sum = n1 + n2 + n3;
  const double p = 0.75 * (2.0 * (n1 * n1 + n2 * n2 + n3 * n3) - sum * sum);
  const double q = 1.5 * n1 * n2 * n3 * (2.0 * a - 1.0);
  const double arg = clamp1(1.5 * q / p * std::sqrt(-3.0 / p));
  return 0.5 * sum + 2.0 * std::sqrt(-p / 3.0) * std::cos(std::acos(arg) / 3.0 - 2.0 * M_PI / 3.0);
}

}  // namespace

CanonicalCubeNormal canonicalize_cube_normal(const Vec3& n) {
  CanonicalCubeNormal c;
  const std::array<double, 3> comp = {n.x, n.y, n.z};
  std::array<int, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(comp[static_cast<std::size_t>(a)]) >
                                       std::abs(comp[static_cast<std::size_t>(b)]); });
  for (int i = 0; i < 3; ++i) {
    const int axis = order[static_cast<std::size_t>(i)];
    const double v = comp[static_cast<std::size_t>(axis)];
    c.n[static_cast<std::size_t>(i)] = std::abs(v);
    c.perm[static_cast<std::size_t>(i)] = axis;
    c.sign[static_cast<std::size_t>(axis)] = v < 0.0 ? -1.0 : 1.0;
  }
  return c;
}

double cube_explicit_position(const Vec3& n, double alpha, double dx) {
  const CanonicalCubeNormal c = canonicalize_cube_normal(n);
  const double n1 = c.n[0], n2 = c.n[1], n3 = c.n[2];
  const double full = n1 + n2 + n3;  // corner-to-corner extent along n
  double s;
  if (alpha <= 0.5)
    s = reference_position(n1, n2, n3, alpha);
  else
    s = full - reference_position(n1, n2, n3, 1.0 - alpha);
  return s * dx;
}

double cube_explicit_position_centered(const Vec3& n, double alpha, double dx) {
  const double half_span = 0.5 * (std::abs(n.x) + std::abs(n.y) + std::abs(n.z));
  return cube_explicit_position(n, alpha, dx) - half_span * dx;
}

ConvexPolyhedron to_convex_polyhedron(const Polyhedron& p) {
  ConvexPolyhedron c;
  c.verts = p.vertices();
  c.faces.reserve(p.faces().size());
  for (const Face& f : p.faces()) c.faces.push_back(f.verts);
  return c;
}

ConvexPolyhedron clip_convex(const ConvexPolyhedron& c, const Vec3& n, double d, const Vec3& base,
                             double zero_tol) {
  const std::size_t nv = c.verts.size();
  std::vector<double> lam(nv);
  std::vector<int> st(nv);
  bool any_in = false, any_out = false;
  for (std::size_t i = 0; i < nv; ++i) {
    lam[i] = dot(c.verts[i] - base, n) - d;
    st[i] = vertex_status(lam[i], zero_tol);
    any_in |= st[i] < 0;
    any_out |= st[i] > 0;
  }
  if (!any_out) return c;
  if (!any_in) return {};

  ConvexPolyhedron out;
  out.verts = c.verts;
  std::map<std::pair<int, int>, int> cut_of_edge;
  std::vector<int> cap;  // indices of vertices on the clip plane

  auto cut_point = [&](int i, int j) {
    const auto key = std::minmax(i, j);
    auto it = cut_of_edge.find(key);
    if (it != cut_of_edge.end()) return it->second;
    const double li = lam[static_cast<std::size_t>(i)];
    const double lj = lam[static_cast<std::size_t>(j)];
    out.verts.push_back(c.verts[static_cast<std::size_t>(i)] +
                        (li / (li - lj)) *
                            (c.verts[static_cast<std::size_t>(j)] -
                             c.verts[static_cast<std::size_t>(i)]));
    const int idx = static_cast<int>(out.verts.size()) - 1;
    cut_of_edge.emplace(key, idx);
    cap.push_back(idx);
    return idx;
  };

  for (const auto& loop : c.faces) {
    std::vector<int> kept;
    const std::size_t m = loop.size();
    for (std::size_t i = 0; i < m; ++i) {
      const int a = loop[i];
      const int b = loop[(i + 1) % m];
      const int sa = st[static_cast<std::size_t>(a)];
      const int sb = st[static_cast<std::size_t>(b)];
      if (sa <= 0) {
        kept.push_back(a);
        if (sa == 0) cap.push_back(a);
      }
      if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0)) kept.push_back(cut_point(a, b));
    }
    if (kept.size() >= 3) out.faces.push_back(std::move(kept));
  }
  if (out.faces.empty()) return {};

  // Cap face: unique on-plane vertices sorted by angle about their centroid.
  std::sort(cap.begin(), cap.end());
  cap.erase(std::unique(cap.begin(), cap.end()), cap.end());
  if (cap.size() >= 3) {
    Vec3 cen{};
    for (int i : cap) cen += out.verts[static_cast<std::size_t>(i)];
    cen = cen / static_cast<double>(cap.size());
    Vec3 u{};
    for (int i : cap) {
      u = out.verts[static_cast<std::size_t>(i)] - cen;
      if (norm2(u) > 0.0) break;
    }
    u = normalized(u - dot(u, n) * n);
    const Vec3 w = cross(n, u);
    std::sort(cap.begin(), cap.end(), [&](int a, int b) {
      const Vec3 pa = out.verts[static_cast<std::size_t>(a)] - cen;
      const Vec3 pb = out.verts[static_cast<std::size_t>(b)] - cen;
      return std::atan2(dot(pa, w), dot(pa, u)) < std::atan2(dot(pb, w), dot(pb, u));
    });
    out.faces.push_back(cap);
  }
  return out;
}

double convex_volume(const ConvexPolyhedron& c) {
  if (c.verts.empty() || c.faces.empty()) return 0.0;
  Vec3 o{};
  int used = 0;
  std::vector<char> ref(c.verts.size(), 0);
  for (const auto& loop : c.faces)
    for (int i : loop) ref[static_cast<std::size_t>(i)] = 1;
  for (std::size_t i = 0; i < c.verts.size(); ++i)
    if (ref[i]) {
      o += c.verts[i];
      ++used;
    }
  o = o / static_cast<double>(used);

  double vol6 = 0.0;
  double scale = 0.0;
  for (const auto& loop : c.faces) {
    const Vec3& a = c.verts[static_cast<std::size_t>(loop[0])];
    for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
      const double t = dot(cross(a - o, c.verts[static_cast<std::size_t>(loop[i])] - o),
                           c.verts[static_cast<std::size_t>(loop[i + 1])] - o);
      scale = std::max(scale, std::abs(t));
      if (t < -1e-12 * std::max(scale, 1.0))
        throw StarPointViolation("negative fan tetrahedron in convex volume");
      vol6 += t;
    }
  }
  return vol6 / 6.0;
}

double decomposition_volume(const ConvexPolyhedron& c, const Vec3& n, double d, const Vec3& base,
                            double zero_tol) {
  double lam_min = 1e300, lam_max = -1e300;
  for (const Vec3& v : c.verts) {
    const double l = dot(v - base, n);
    lam_min = std::min(lam_min, l);
    lam_max = std::max(lam_max, l);
  }
  // Clip grazing an extreme vertex snaps to the empty/full volume.
  if (d <= lam_min + zero_tol) return 0.0;
  if (d >= lam_max - zero_tol) return convex_volume(c);
  return convex_volume(clip_convex(c, n, d, base, zero_tol));
}

BaselineResult baseline_position_secondary(const Polyhedron& cube, const Vec3& n1, double alpha1,
                                           const Vec3& n2, double alpha2, double eps,
                                           int max_iter) {
  const Vec3 base = cube.base_point();
  const double dx = std::cbrt(cube.volume());
  const double vol = cube.volume();

  const double s_star = cube_explicit_position_centered(n1, alpha1, dx);
  const ConvexPolyhedron cell = to_convex_polyhedron(cube);
  const ConvexPolyhedron pcut = clip_convex(cell, -1.0 * n1, -s_star, base);

  int count = 0;
  auto error_at = [&](double t) {
    ++count;
    return alpha2 - decomposition_volume(pcut, n2, t, base) / vol;
  };

  // Non-wetted assumption: planes independent.
  const double t_lo = cube_explicit_position_centered(n2, alpha2, dx);
  const double err_lo = error_at(t_lo);
  if (std::abs(err_lo) < eps) return {t_lo, count, TopologyClass::non_wetted};

  // Fully wetted assumption: secondary plane encloses the primary cut.
  const double t_hi = cube_explicit_position_centered(n2, alpha1 + alpha2, dx);
  const double err_hi = error_at(t_hi);
  if (std::abs(err_hi) < eps) return {t_hi, count, TopologyClass::fully_wetted};

  // Accelerated bisection on the whole-cell fraction. The enclosed-volume
  // error is a lower limit for the required fraction adjustment, so every
  // evaluation tightens the bracket beyond the sample point by its error;
  // the next iterate is the midpoint of the tightened bracket. When the
  // error becomes uninformative this degenerates to pure bisection.
  double f_lo = alpha2 + err_lo;
  double f_hi = alpha1 + alpha2 + err_hi;
  while (count < max_iter) {
    const double f = 0.5 * (f_lo + f_hi);
    const double t = cube_explicit_position_centered(n2, f, dx);
    const double err = error_at(t);
    if (std::abs(err) < eps) return {t, count, TopologyClass::triple};
    if (err > 0.0)
      f_lo = std::max(f_lo, f + err);
    else
      f_hi = std::min(f_hi, f + err);
  }
  throw NoConvergence("baseline bisection did not converge");
}

}  // namespace seqplic
