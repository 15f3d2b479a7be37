#include "seqplic/positioning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seqplic/errors.hpp"
#include "seqplic/plane.hpp"

namespace seqplic {

const char* to_string(TopologyClass c) {
  switch (c) {
    case TopologyClass::triple: return "triple";
    case TopologyClass::fully_wetted: return "fully_wetted";
    case TopologyClass::non_wetted: return "non_wetted";
    case TopologyClass::parallel_degenerate: return "parallel_degenerate";
    case TopologyClass::antiparallel_degenerate: return "antiparallel_degenerate";
  }
  return "?";
}

double initial_guess(double alpha_ref, double s_min, double s_max) {
  const double a = std::clamp(alpha_ref, 0.0, 1.0);
  const double factor = 0.5 - std::cos((std::acos(2.0 * a - 1.0) - 2.0 * M_PI) / 3.0);
  return s_min + (s_max - s_min) * factor;
}

namespace {

// Taylor cubic built from one evaluation, expanded about its abscissa.
struct LocalCubic {
  double s0, c0, c1, c2, c3;
  double operator()(double s) const {
    const double d = s - s0;
    return ((c3 * d + c2) * d + c1) * d + c0;
  }
  double slope(double s) const {
    const double d = s - s0;
    return (3.0 * c3 * d + 2.0 * c2) * d + c1;
  }
};

LocalCubic make_cubic(double s0, const VolumeEvaluation& e) {
  return {s0, e.value, e.d1, 0.5 * e.d2, e.d3 / 6.0};
}

// Root of cubic(s) == target inside [lo, hi]; the cubic is monotone there.
// Closed-form candidate (trigonometric for the three-real-root case), then
// safeguarded Newton/bisection polish on the polynomial.
double cubic_root_in(const LocalCubic& c, double target, double lo, double hi) {
  const double span = hi - lo;
  double s = 0.5 * (lo + hi);
  // containment is decided with slack, so the target may sit marginally
  // outside the attainable range; clamp to keep the sign change
  target = std::clamp(target, std::min(c(lo), c(hi)), std::max(c(lo), c(hi)));

  const double scale = std::max({std::abs(c.c3) * span * span * span,
                                 std::abs(c.c2) * span * span, std::abs(c.c1) * span, 1e-300});
  if (std::abs(c.c3) * span * span * span > 1e-14 * scale) {
    // depressed cubic y^3 + p y + q with s = s0 + y - c2/(3 c3)
    const double a2 = c.c2 / c.c3;
    const double a1 = c.c1 / c.c3;
    const double a0 = (c.c0 - target) / c.c3;
    const double p = a1 - a2 * a2 / 3.0;
    const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    const double off = c.s0 - a2 / 3.0;
    double best = s;
    bool found = false;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (disc > 0.0 && p < 0.0) {
      const double r = 2.0 * std::sqrt(-p / 3.0);
      const double phi = std::acos(std::clamp(3.0 * q / (p * r), -1.0, 1.0));
      for (int k = 0; k < 3; ++k) {
        const double y = r * std::cos((phi - 2.0 * M_PI * k) / 3.0);
        const double cand = off + y;
        if (cand >= lo - 0.5 * span && cand <= hi + 0.5 * span &&
            (!found || std::abs(cand - 0.5 * (lo + hi)) < std::abs(best - 0.5 * (lo + hi)))) {
          best = cand;
          found = true;
        }
      }
    } else {
      const double half_q = -0.5 * q;
      const double rad = std::sqrt(std::max(half_q * half_q + p * p * p / 27.0, 0.0));
      const double u = std::cbrt(half_q + rad);
      const double v = (u != 0.0) ? -p / (3.0 * u) : std::cbrt(half_q - rad);
      best = off + u + v;
      found = true;
    }
    if (found) s = std::clamp(best, lo, hi);
  } else if (std::abs(c.c2) * span * span > 1e-14 * scale) {
    const double diff = target - c.c0;
    const double rad = c.c1 * c.c1 + 4.0 * c.c2 * diff;
    if (rad >= 0.0 && c.c1 + std::sqrt(rad) != 0.0)
      s = std::clamp(c.s0 + 2.0 * diff / (c.c1 + std::sqrt(rad)), lo, hi);
  } else if (std::abs(c.c1) > 0.0) {
    s = std::clamp(c.s0 + (target - c.c0) / c.c1, lo, hi);
  }

  // Safeguarded polish: Newton on the polynomial with a shrinking bracket.
  double bl = lo, bh = hi;
  double fl = c(bl) - target;
  for (int it = 0; it < 60; ++it) {
    const double fs = c(s) - target;
    if (fs == 0.0) break;
    if ((fs < 0.0) == (fl < 0.0))
      bl = s;
    else
      bh = s;
    const double sl = c.slope(s);
    double nxt = sl != 0.0 ? s - fs / sl : 0.5 * (bl + bh);
    if (!(nxt > bl && nxt < bh)) nxt = 0.5 * (bl + bh);
    if (nxt == s) break;
    s = nxt;
  }
  return s;
}

// Smallest-magnitude step toward the target of the locally quadratic model;
// NaN when the model has no real crossing.
double quadratic_step(const VolumeEvaluation& e, double alpha_ref) {
  const double diff = alpha_ref - e.value;
  const double rad = e.d1 * e.d1 + 2.0 * e.d2 * diff;
  if (rad < 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double denom = e.d1 + std::sqrt(rad);
  if (denom <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return 2.0 * diff / denom;
}

}  // namespace

FindResult find_position(const std::function<VolumeEvaluation(double)>& evaluator,
                         const BracketTable& brackets, double alpha_ref, double vof_tol,
                         int max_iter) {
  const auto& d = brackets.distances();
  const double s_min = brackets.min();
  const double s_max = brackets.max();
  double lo = s_min, hi = s_max;
  double s = initial_guess(alpha_ref, s_min, s_max);
  int count = 0;

  bool have_pending = false;  // evaluation carried over from a failed in-bracket solve
  VolumeEvaluation pending;

  // Iterates are kept away from the vertex distances: evaluating inside the
  // status-snapping window yields one-sided degenerate derivatives whose
  // Taylor cubic represents neither adjacent bracket.
  const auto nudged = [&](double x) {
    const std::size_t bi = brackets.locate(x);
    for (const double b : {d[bi], d[bi + 1]}) {
      const double margin = 4.0 * kZeroTol * std::max(1.0, std::abs(b));
      if (std::abs(x - b) < margin) {
        double cand = b + (x >= b ? margin : -margin);
        if (!(cand > lo && cand < hi)) cand = b + (cand > b ? -margin : margin);
        if (cand > lo && cand < hi) x = cand;
      }
    }
    return x;
  };

  s = nudged(s);
  for (int it = 0; it < 2 * max_iter; ++it) {
    VolumeEvaluation e;
    if (have_pending) {
      e = pending;
      have_pending = false;
    } else {
      e = evaluator(s);
      ++count;
    }
    if (std::abs(e.value - alpha_ref) <= vof_tol) return {s, count, e.value - alpha_ref, e};
    if (count >= max_iter) break;

    if (e.value < alpha_ref)
      lo = std::max(lo, s);
    else
      hi = std::min(hi, s);

    const std::size_t bi = brackets.locate(s);
    const double bl = d[bi];
    const double br = d[bi + 1];
    const LocalCubic cubic = make_cubic(s, e);
    const double al = cubic(bl);
    const double ar = cubic(br);

    // slack absorbs extrapolation roundoff when the root sits on a bracket
    // boundary; a wrong containment decision is cheap because the
    // verification feeds back into the search as a regular iterate
    const double slack = 1e-13;
    if (al - slack <= alpha_ref && alpha_ref <= ar + slack) {
      const double root = cubic_root_in(cubic, alpha_ref, std::max(bl, lo), std::min(br, hi));
      if (root != s) {
        const VolumeEvaluation ve = evaluator(root);
        if (std::abs(ve.value - alpha_ref) <= vof_tol)
          return {root, count, ve.value - alpha_ref, ve};  // the solve itself is free
        ++count;  // failed verification is a real truncation; reuse it
        s = root;
        pending = ve;
        have_pending = true;
        continue;
      }
    }

    // lo/hi carry only value-based evidence (tightened at the top of the
    // loop); extrapolation-based tightening can corrupt them when an iterate
    // sits on a vertex distance
    const double step = quadratic_step(e, alpha_ref);
    double next = s + step;
    if (!std::isfinite(next) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    s = nudged(next);
  }
  throw NoConvergence("position search did not converge");
}

TopologyClass classify_topology(const TruncatedPolyhedron& t_poly, double t_star,
                                double zero_tol) {
  // length-based classification against the removed region H1- ∩ P: the
  // secondary negative half-space either misses it entirely (non-wetted),
  // swallows it entirely (fully wetted), or the planes meet inside the cell
  if (t_star <= t_poly.removed_min() + zero_tol) return TopologyClass::non_wetted;
  if (t_star >= t_poly.removed_max() - zero_tol) return TopologyClass::fully_wetted;
  return TopologyClass::triple;
}

PositioningResult position_sequential(const Polyhedron& p, const Vec3& n1, double alpha1,
                                      const Vec3& n2, double alpha2, const Tolerances& tol) {
  const double e1 = tol.eps1;
  if (!(alpha1 >= e1 && alpha1 <= 1.0 - 2.0 * e1 && alpha2 >= e1 && alpha2 <= 1.0 - 2.0 * e1 &&
        alpha1 + alpha2 <= 1.0 - e1 + 1e-15))
    throw InfeasibleFractions("volume fractions violate the admissibility bounds");

  PositioningResult res;
  const DegeneracyClass dc = degeneracy_class(n1, n2, tol.gamma_tol);

  const PrimaryVolume f1(p, n1, tol.zero_tol);
  const FindResult r1 = find_position(f1, f1.brackets(), alpha1, tol.vof_tol, tol.max_iter);
  res.s_star = r1.position;
  res.truncations_primary = r1.truncations;
  res.residual_primary = r1.residual;

  if (dc == DegeneracyClass::parallel) {
    // Aligned planes: the secondary problem is the single-plane problem for
    // the accumulated fraction on the original polyhedron.
    const PrimaryVolume f2(p, n2, tol.zero_tol);
    const FindResult r2 =
        find_position(f2, f2.brackets(), alpha1 + alpha2, tol.vof_tol, tol.max_iter);
    res.t_star = r2.position;
    res.truncations_secondary = r2.truncations;
    res.residual_secondary = r2.residual;
    res.topology = TopologyClass::parallel_degenerate;
    return res;
  }
  if (dc == DegeneracyClass::antiparallel) {
    // Opposite normals: the negative half-spaces cannot overlap, so both
    // planes are positioned independently on the original polyhedron.
    const PrimaryVolume f2(p, n2, tol.zero_tol);
    const FindResult r2 = find_position(f2, f2.brackets(), alpha2, tol.vof_tol, tol.max_iter);
    res.t_star = r2.position;
    res.truncations_secondary = r2.truncations;
    res.residual_secondary = r2.residual;
    res.topology = TopologyClass::antiparallel_degenerate;
    return res;
  }

  const TruncatedPolyhedron t_poly = truncate_faces(p, n1, res.s_star, n2, tol.zero_tol);
  const BracketTable bt2 =
      build_bracket_table(t_poly.cut_vertices(), n2, p.base_point(), tol.zero_tol);
  const double target = alpha2 * p.volume() / t_poly.cut_volume();
  const auto f2 = [&](double t) { return secondary_volume_fraction(t_poly, n2, t); };
  // vof_tol bounds the error as a fraction of the original cell; expressed in
  // units of the truncated volume it scales with |P|/|P^cut|, which also
  // keeps the demand above the floating-point floor for sliver cuts
  const double tol2 = tol.vof_tol * std::max(1.0, p.volume() / t_poly.cut_volume());
  const FindResult r2 = find_position(f2, bt2, target, tol2, tol.max_iter);
  res.t_star = r2.position;
  res.truncations_secondary = r2.truncations;
  res.residual_secondary = r2.residual * t_poly.cut_volume() / p.volume();
  res.topology = classify_topology(t_poly, res.t_star, tol.zero_tol);
  return res;
}

}  // namespace seqplic
