#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "seqplic/grid.hpp"
#include "seqplic/polyhedron.hpp"
#include "seqplic/positioning.hpp"

namespace seqplic {

enum class Method { proposed, baseline, both };

struct ExperimentConfig {
  Tolerances tol;
  double baseline_eps = 1e-12;
  int baseline_max_iter = 200;
  int threads = 1;
  std::uint64_t seed = 0;
  std::uint64_t audit_every = 100;  // oracle re-verification of ~1/audit_every instances
  bool cube_cell = false;           // enables the cube-only baseline
};

struct ClassStats {
  std::uint64_t count = 0;
  std::uint64_t truncations = 0;

  double average() const { return count ? static_cast<double>(truncations) / count : 0.0; }
};

inline constexpr std::size_t kTopologyClasses = 5;

/// Aggregates for one (alpha1, alpha2) cell over all normal pairs.
struct CellReport {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::array<ClassStats, kTopologyClasses> proposed{};  // indexed by TopologyClass
  std::array<ClassStats, 3> baseline{};                 // triple / fully / non-wetted
  std::uint64_t baseline_instances = 0;
  std::uint64_t mismatches = 0;
  double max_residual_primary = 0.0;
  double max_residual_secondary = 0.0;
  std::uint64_t audited = 0;
  double max_audit_error = 0.0;
};

struct Defect {
  double alpha1 = 0.0, alpha2 = 0.0;
  Vec3 n1, n2;
  std::string what;
};

struct AggregateReport {
  Method method = Method::proposed;
  std::string shape_name;
  std::uint64_t seed = 0;
  std::size_t normal_pairs = 0;
  std::vector<CellReport> cells;
  std::vector<Defect> defects;

  ClassStats proposed_total(TopologyClass c) const;
  ClassStats baseline_total(std::size_t c) const;
  std::uint64_t mismatch_total() const;
  std::uint64_t audited_total() const;
  double max_audit_error() const;
  double max_residual_primary() const;
  double max_residual_secondary() const;
};

/// Runs both positioners over every grid instance and aggregates truncation
/// counts, topology incidence and classification mismatches per fraction
/// pair. Cells are distributed over threads; instances within a cell are
/// processed in a fixed order, so the report is independent of the thread
/// count. A deterministic ~1% subsample is re-verified against the clipping
/// oracle. Positioner failures are recorded as defects with the offending
/// instance.
AggregateReport run_experiment(const SampleGrid& grid, const Polyhedron& shape,
                               const std::string& shape_name, Method method,
                               const ExperimentConfig& cfg);

/// Writes the CSV artifacts: one file per (method x topology class) with
/// rows (alpha1, alpha2, n_av, incidence_pct, count) where n_av is "x" for
/// cells without incidence, a mismatch matrix, and a summary. Byte-identical
/// across reruns with identical inputs.
void emit_report(const AggregateReport& rep, const std::string& out_dir);

}  // namespace seqplic
