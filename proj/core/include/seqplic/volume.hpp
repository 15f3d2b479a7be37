#pragma once

#include <functional>
#include <span>
#include <vector>

#include "seqplic/face_cut.hpp"
#include "seqplic/polyhedron.hpp"
#include "seqplic/truncation.hpp"
#include "seqplic/vec3.hpp"

namespace seqplic {

/// Volume fraction with one-sided derivatives up to third order with respect
/// to the signed plane distance. The fraction is a monotone piecewise cubic
/// of the distance, one polynomial per bracket.
struct VolumeEvaluation {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

/// Sorted unique signed distances at which the plane passes through a vertex;
/// between consecutive entries the volume fraction is a single cubic.
class BracketTable {
 public:
  explicit BracketTable(std::vector<double> distances) : d_(std::move(distances)) {}

  const std::vector<double>& distances() const { return d_; }
  double min() const { return d_.front(); }
  double max() const { return d_.back(); }

  /// Index i of the bracket (d_i, d_{i+1}] containing s; the first bracket is
  /// closed at both ends and out-of-range values clamp to the end brackets.
  std::size_t locate(double s) const;

 private:
  std::vector<double> d_;
};

BracketTable build_bracket_table(std::span<const Vec3> points, const Vec3& n, const Vec3& base,
                                 double zero_tol = kZeroTol);

/// alpha_1(s): fraction of |P| below the plane (n1, s), with derivatives.
/// Static per-face data is assembled once; evaluations are pure.
class PrimaryVolume {
 public:
  PrimaryVolume(const Polyhedron& p, const Vec3& n1, double zero_tol = kZeroTol);

  VolumeEvaluation operator()(double s) const;

  const Polyhedron& polyhedron() const { return *p_; }
  const Vec3& normal() const { return n1_; }
  BracketTable brackets() const;

 private:
  struct FaceData {
    FacePlaneCut cut;
    double d = 0.0;  // distance coefficient d - s*g against the moving origin
    double g = 0.0;
  };
  const Polyhedron* p_;
  Vec3 n1_;
  double zero_tol_;
  double inv_vol3_;
  std::vector<FaceData> faces_;
};

VolumeEvaluation primary_volume_fraction(const Polyhedron& p, const Vec3& n1, double s,
                                         double zero_tol = kZeroTol);

/// alpha_2(t): fraction of |P^cut| below the secondary plane (n2, t).
/// n2 must be the normal the truncation was built for.
VolumeEvaluation secondary_volume_fraction(const TruncatedPolyhedron& t_poly, const Vec3& n2,
                                           double t);

/// Branch selection of the per-face immersed area; `automatic` follows the
/// span windows, the forced values exist to probe branch consistency.
enum class FaceBranch { automatic, force_triple, force_plain };

/// Immersed area |H2-(t) ∩ H1+ ∩ F_k| of one face of the truncation.
double immersed_face_area(const TruncatedPolyhedron& t_poly, std::size_t k, double t,
                          FaceBranch branch = FaceBranch::automatic);

}  // namespace seqplic
