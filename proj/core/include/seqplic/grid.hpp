#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "seqplic/vec3.hpp"

namespace seqplic {

/// Sample sets of the benchmark experiment: a (phi, theta) lattice of unit
/// normals on the sphere (poles deduplicated, so |normals| = 2 + 2M(M-1)),
/// volume fractions with linear spacing on [1e-4, 1-1e-4] plus logarithmic
/// tails down to eps1, and the admissible ordered pairs with
/// alpha1 + alpha2 <= 1 - eps1.
struct SampleGrid {
  std::vector<Vec3> normals;
  std::vector<double> fractions;
  std::vector<std::pair<double, double>> fraction_pairs;
  double eps1 = 1e-9;
  double eps2 = 1e-5;

  std::size_t normal_pair_count() const { return normals.size() * normals.size(); }
  std::size_t instance_count() const { return fraction_pairs.size() * normal_pair_count(); }
};

SampleGrid generate_grid(int m_normal, int m_alpha, double eps1 = 1e-9, double eps2 = 1e-5);

}  // namespace seqplic
