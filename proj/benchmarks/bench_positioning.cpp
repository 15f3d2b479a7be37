#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "seqplic/cube_reference.hpp"
#include "seqplic/oracle.hpp"
#include "seqplic/positioning.hpp"
#include "seqplic/truncation.hpp"
#include "seqplic/volume.hpp"

using namespace seqplic;

namespace {

struct Instance {
  Vec3 n1, n2;
  double a1, a2;
};

std::vector<Instance> make_instances(std::size_t n) {
  std::mt19937_64 rng(123);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> ua(0.05, 0.45);
  std::vector<Instance> out;
  out.reserve(n);
  while (out.size() < n) {
    const Vec3 n1 = normalized({g(rng), g(rng), g(rng)});
    const Vec3 n2 = normalized({g(rng), g(rng), g(rng)});
    if (std::abs(dot(n1, n2)) > 1.0 - 1e-6) continue;
    out.push_back({n1, n2, ua(rng), ua(rng)});
  }
  return out;
}

void BM_PrimaryEvaluation(benchmark::State& state) {
  const Polyhedron cube = make_unit_cube();
  const PrimaryVolume f(cube, normalized({3, 2, 1}));
  double s = -0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f(s));
    s = s < 0.3 ? s + 1e-3 : -0.3;
  }
}
BENCHMARK(BM_PrimaryEvaluation);

void BM_SecondaryEvaluation(benchmark::State& state) {
  const Polyhedron cube = make_unit_cube();
  const Vec3 n1 = normalized({3, 2, 1});
  const Vec3 n2 = normalized({-1, 2, 2});
  const TruncatedPolyhedron t = truncate_faces(cube, n1, 0.05, n2);
  double x = -0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(secondary_volume_fraction(t, n2, x));
    x = x < 0.3 ? x + 1e-3 : -0.3;
  }
}
BENCHMARK(BM_SecondaryEvaluation);

void BM_TruncateFaces(benchmark::State& state) {
  const Polyhedron cube = make_unit_cube();
  const Vec3 n1 = normalized({3, 2, 1});
  const Vec3 n2 = normalized({-1, 2, 2});
  for (auto _ : state) benchmark::DoNotOptimize(truncate_faces(cube, n1, 0.05, n2));
}
BENCHMARK(BM_TruncateFaces);

void BM_PositionSequentialCube(benchmark::State& state) {
  const Polyhedron cube = make_unit_cube();
  const auto inst = make_instances(256);
  std::size_t i = 0;
  for (auto _ : state) {
    const Instance& in = inst[i++ % inst.size()];
    benchmark::DoNotOptimize(position_sequential(cube, in.n1, in.a1, in.n2, in.a2));
  }
}
BENCHMARK(BM_PositionSequentialCube);

void BM_PositionSequentialDodecahedron(benchmark::State& state) {
  const Polyhedron dode = make_dodecahedron();
  const auto inst = make_instances(256);
  std::size_t i = 0;
  for (auto _ : state) {
    const Instance& in = inst[i++ % inst.size()];
    benchmark::DoNotOptimize(position_sequential(dode, in.n1, in.a1, in.n2, in.a2));
  }
}
BENCHMARK(BM_PositionSequentialDodecahedron);

void BM_BaselineSecondary(benchmark::State& state) {
  const Polyhedron cube = make_unit_cube();
  const auto inst = make_instances(256);
  std::size_t i = 0;
  for (auto _ : state) {
    const Instance& in = inst[i++ % inst.size()];
    benchmark::DoNotOptimize(
        baseline_position_secondary(cube, in.n1, in.a1, in.n2, in.a2));
  }
}
BENCHMARK(BM_BaselineSecondary);

void BM_OracleDoubleCut(benchmark::State& state) {
  const Polyhedron dode = make_dodecahedron();
  const auto inst = make_instances(256);
  std::size_t i = 0;
  for (auto _ : state) {
    const Instance& in = inst[i++ % inst.size()];
    benchmark::DoNotOptimize(oracle_truncated_volume(
        dode, {HalfSpace{in.n1, 0.1}, HalfSpace{in.n2, -0.05}}));
  }
}
BENCHMARK(BM_OracleDoubleCut);

}  // namespace

BENCHMARK_MAIN();
