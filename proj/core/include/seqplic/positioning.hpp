#pragma once

#include <functional>

#include "seqplic/polyhedron.hpp"
#include "seqplic/truncation.hpp"
#include "seqplic/volume.hpp"

namespace seqplic {

enum class TopologyClass {
  triple,
  fully_wetted,
  non_wetted,
  parallel_degenerate,
  antiparallel_degenerate,
};

const char* to_string(TopologyClass c);

/// Initial guess from the global cubic spline interpolation of a generic
/// monotone volume fraction over [s_min, s_max]; maps 0 -> s_min, 1/2 ->
/// midpoint, 1 -> s_max.
double initial_guess(double alpha_ref, double s_min, double s_max);

struct FindResult {
  double position = 0.0;
  int truncations = 0;       // number of full evaluator calls spent searching
  double residual = 0.0;     // signed alpha(position) - alpha_ref
  VolumeEvaluation eval;     // evaluation at the returned position
};

/// Implicit-bracketing root finder: each truncation evaluates the fraction
/// with derivatives, which determines the exact cubic on the containing
/// bracket. If the extrapolated bracket range covers alpha_ref the root of
/// the cubic is returned (closed form, Newton-polished, no further
/// truncation); otherwise a locally quadratic step moves toward the target,
/// clamped into the remaining feasible range with a bracket-table bisection
/// fallback. Throws NoConvergence after max_iter evaluations.
FindResult find_position(const std::function<VolumeEvaluation(double)>& evaluator,
                         const BracketTable& brackets, double alpha_ref, double vof_tol = 1e-12,
                         int max_iter = 50);

struct Tolerances {
  double zero_tol = 1e-14;
  double vof_tol = 1e-12;
  double gamma_tol = 1e-12;
  double eps1 = 1e-9;  // smallest admissible volume fraction
  int max_iter = 50;
};

struct PositioningResult {
  double s_star = 0.0;
  double t_star = 0.0;
  int truncations_primary = 0;
  int truncations_secondary = 0;
  TopologyClass topology = TopologyClass::triple;
  double residual_primary = 0.0;    // alpha1(s*) - alpha1_ref
  double residual_secondary = 0.0;  // secondary fraction error at t*, in units of |P|
};

/// Length-based topological classification of the secondary position against
/// the face spans of the truncation.
TopologyClass classify_topology(const TruncatedPolyhedron& t_poly, double t_star,
                                double zero_tol = kZeroTol);

/// Sequential (nested-dissection) positioning of two planes: the primary
/// plane encloses alpha1*|P|, the secondary plane encloses alpha2*|P| within
/// the remaining truncated polyhedron. (Anti)parallel normals short-circuit
/// to two independent single-plane solves on P.
PositioningResult position_sequential(const Polyhedron& p, const Vec3& n1, double alpha1,
                                      const Vec3& n2, double alpha2,
                                      const Tolerances& tol = Tolerances{});

}  // namespace seqplic
