#include "seqplic/grid.hpp"

#include <algorithm>
#include <cmath>

#include "seqplic/errors.hpp"

namespace seqplic {

SampleGrid generate_grid(int m_normal, int m_alpha, double eps1, double eps2) {
  if (m_normal < 2 || m_alpha < 2) throw Error("grid resolutions must be at least 2");

  SampleGrid g;
  g.eps1 = eps1;
  g.eps2 = eps2;

  g.normals.push_back({0.0, 0.0, 1.0});
  for (int i = 1; i < m_normal; ++i) {
    const double theta = M_PI * i / m_normal;
    for (int j = 1; j <= 2 * m_normal; ++j) {
      const double phi = M_PI * j / (2.0 * m_normal);
      g.normals.push_back(normalized(
          {std::cos(phi) * std::sin(theta), std::sin(phi) * std::sin(theta), std::cos(theta)}));
    }
  }
  g.normals.push_back({0.0, 0.0, -1.0});

  // Linear part on [1e-4, 1-1e-4] plus logarithmic tails near 0 and 1.
  for (int m = 1; m <= m_alpha; ++m)
    g.fractions.push_back(1e-4 + (m - 1) * (1.0 - 2e-4) / (m_alpha - 1));
  for (double v = eps1; v < eps2 * 1.0000001; v *= 10.0) g.fractions.push_back(v);
  for (double v = eps2; v > 10.0 * eps1 * 0.9999999; v /= 10.0) g.fractions.push_back(1.0 - v);
  g.fractions.push_back(1.0 - 2.0 * eps1);
  std::sort(g.fractions.begin(), g.fractions.end());
  g.fractions.erase(std::unique(g.fractions.begin(), g.fractions.end()), g.fractions.end());

  for (double a1 : g.fractions)
    for (double a2 : g.fractions)
      if (a1 + a2 <= 1.0 - eps1 + 1e-15) g.fraction_pairs.emplace_back(a1, a2);

  return g;
}

}  // namespace seqplic
