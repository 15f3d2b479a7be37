#include "seqplic/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <thread>

#include "seqplic/cube_reference.hpp"
#include "seqplic/errors.hpp"
#include "seqplic/oracle.hpp"

namespace seqplic {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t baseline_class_index(TopologyClass c) {
  switch (c) {
    case TopologyClass::triple: return 0;
    case TopologyClass::fully_wetted: return 1;
    case TopologyClass::non_wetted: return 2;
    default: return 0;
  }
}

}  // namespace

ClassStats AggregateReport::proposed_total(TopologyClass c) const {
  ClassStats t;
  for (const CellReport& cell : cells) {
    const ClassStats& s = cell.proposed[static_cast<std::size_t>(c)];
    t.count += s.count;
    t.truncations += s.truncations;
  }
  return t;
}

ClassStats AggregateReport::baseline_total(std::size_t c) const {
  ClassStats t;
  for (const CellReport& cell : cells) {
    t.count += cell.baseline[c].count;
    t.truncations += cell.baseline[c].truncations;
  }
  return t;
}

std::uint64_t AggregateReport::mismatch_total() const {
  std::uint64_t t = 0;
  for (const CellReport& cell : cells) t += cell.mismatches;
  return t;
}

std::uint64_t AggregateReport::audited_total() const {
  std::uint64_t t = 0;
  for (const CellReport& cell : cells) t += cell.audited;
  return t;
}

double AggregateReport::max_audit_error() const {
  double m = 0.0;
  for (const CellReport& cell : cells) m = std::max(m, cell.max_audit_error);
  return m;
}

double AggregateReport::max_residual_primary() const {
  double m = 0.0;
  for (const CellReport& cell : cells) m = std::max(m, cell.max_residual_primary);
  return m;
}

double AggregateReport::max_residual_secondary() const {
  double m = 0.0;
  for (const CellReport& cell : cells) m = std::max(m, cell.max_residual_secondary);
  return m;
}

AggregateReport run_experiment(const SampleGrid& grid, const Polyhedron& shape,
                               const std::string& shape_name, Method method,
                               const ExperimentConfig& cfg) {
  AggregateReport rep;
  rep.method = method;
  rep.shape_name = shape_name;
  rep.seed = cfg.seed;
  rep.normal_pairs = grid.normal_pair_count();
  rep.cells.resize(grid.fraction_pairs.size());

  const bool run_proposed = method != Method::baseline;
  const bool run_baseline = method != Method::proposed && cfg.cube_cell;
  const std::size_t nn = grid.normals.size();

  std::mutex defect_mutex;

  auto process_cell = [&](std::size_t ci) {
    CellReport cell;
    cell.alpha1 = grid.fraction_pairs[ci].first;
    cell.alpha2 = grid.fraction_pairs[ci].second;
    const double a1 = cell.alpha1;
    const double a2 = cell.alpha2;

    for (std::size_t i = 0; i < nn; ++i) {
      for (std::size_t j = 0; j < nn; ++j) {
        const Vec3& nrm1 = grid.normals[i];
        const Vec3& nrm2 = grid.normals[j];
        const std::uint64_t instance = (ci * nn + i) * nn + j;
        try {
          TopologyClass proposed_class = TopologyClass::triple;
          if (run_proposed) {
            const PositioningResult r = position_sequential(shape, nrm1, a1, nrm2, a2, cfg.tol);
            proposed_class = r.topology;
            ClassStats& s = cell.proposed[static_cast<std::size_t>(r.topology)];
            ++s.count;
            s.truncations += static_cast<std::uint64_t>(r.truncations_secondary);
            cell.max_residual_primary =
                std::max(cell.max_residual_primary, std::abs(r.residual_primary));
            cell.max_residual_secondary =
                std::max(cell.max_residual_secondary, std::abs(r.residual_secondary));

            if (cfg.audit_every > 0 &&
                splitmix64(instance ^ cfg.seed) % cfg.audit_every == 0) {
              const double vol = oracle_truncated_volume(
                  shape, {HalfSpace{-1.0 * nrm1, -r.s_star}, HalfSpace{nrm2, r.t_star}});
              ++cell.audited;
              cell.max_audit_error =
                  std::max(cell.max_audit_error, std::abs(vol / shape.volume() - a2));
            }
          }
          const bool degenerate =
              degeneracy_class(nrm1, nrm2, cfg.tol.gamma_tol) != DegeneracyClass::general;
          if (run_baseline && !degenerate) {
            const BaselineResult b = baseline_position_secondary(
                shape, nrm1, a1, nrm2, a2, cfg.baseline_eps, cfg.baseline_max_iter);
            ++cell.baseline_instances;
            ClassStats& s = cell.baseline[baseline_class_index(b.topology)];
            ++s.count;
            s.truncations += static_cast<std::uint64_t>(b.truncations);
            if (run_proposed && b.topology != proposed_class) ++cell.mismatches;
          }
        } catch (const Error& err) {
          std::lock_guard<std::mutex> lock(defect_mutex);
          rep.defects.push_back({a1, a2, nrm1, nrm2, err.what()});
        }
      }
    }
    rep.cells[ci] = cell;
  };

  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (std::size_t ci = 0; ci < rep.cells.size(); ++ci) process_cell(ci);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t ci = next.fetch_add(1);
          if (ci >= rep.cells.size()) return;
          process_cell(ci);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return rep;
}

namespace {

struct CsvFile {
  FILE* f = nullptr;
  explicit CsvFile(const std::string& path) {
    f = std::fopen(path.c_str(), "w");
    if (!f) throw Error("cannot open output file: " + path);
  }
  ~CsvFile() {
    if (f) std::fclose(f);
  }
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;
};

void write_class_file(const std::string& path, const AggregateReport& rep,
                      std::size_t class_index, bool baseline) {
  CsvFile out(path);
  std::fprintf(out.f, "alpha1,alpha2,n_av,incidence_pct,count\n");
  for (const CellReport& cell : rep.cells) {
    const ClassStats& s =
        baseline ? cell.baseline[class_index] : cell.proposed[class_index];
    std::uint64_t denom = 0;
    if (baseline) {
      denom = cell.baseline_instances;
    } else {
      for (const ClassStats& cs : cell.proposed) denom += cs.count;
    }
    const double pct = denom ? 100.0 * static_cast<double>(s.count) / denom : 0.0;
    if (s.count == 0)
      std::fprintf(out.f, "%.12g,%.12g,x,%.6f,0\n", cell.alpha1, cell.alpha2, pct);
    else
      std::fprintf(out.f, "%.12g,%.12g,%.6f,%.6f,%llu\n", cell.alpha1, cell.alpha2, s.average(),
                   pct, static_cast<unsigned long long>(s.count));
  }
}

}  // namespace

void emit_report(const AggregateReport& rep, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto path = [&](const std::string& name) { return out_dir + "/" + name; };

  static const char* kProposedNames[kTopologyClasses] = {
      "triple", "fully_wetted", "non_wetted", "parallel_degenerate", "antiparallel_degenerate"};
  static const char* kBaselineNames[3] = {"triple", "fully_wetted", "non_wetted"};

  const bool has_proposed = rep.method != Method::baseline;
  const bool has_baseline = rep.method != Method::proposed;

  if (has_proposed)
    for (std::size_t c = 0; c < kTopologyClasses; ++c)
      write_class_file(path(std::string("proposed_") + kProposedNames[c] + ".csv"), rep, c, false);
  if (has_baseline)
    for (std::size_t c = 0; c < 3; ++c)
      write_class_file(path(std::string("baseline_") + kBaselineNames[c] + ".csv"), rep, c, true);

  {
    CsvFile out(path("mismatch.csv"));
    std::fprintf(out.f, "alpha1,alpha2,mismatches,mismatch_pct\n");
    for (const CellReport& cell : rep.cells) {
      const double pct = cell.baseline_instances
                             ? 100.0 * static_cast<double>(cell.mismatches) /
                                   static_cast<double>(cell.baseline_instances)
                             : 0.0;
      std::fprintf(out.f, "%.12g,%.12g,%llu,%.6f\n", cell.alpha1, cell.alpha2,
                   static_cast<unsigned long long>(cell.mismatches), pct);
    }
  }

  {
    CsvFile out(path("summary.csv"));
    std::fprintf(out.f, "shape,%s\n", rep.shape_name.c_str());
    std::fprintf(out.f, "seed,%llu\n", static_cast<unsigned long long>(rep.seed));
    std::fprintf(out.f, "normal_pairs,%llu\n", static_cast<unsigned long long>(rep.normal_pairs));
    std::fprintf(out.f, "cells,%llu\n", static_cast<unsigned long long>(rep.cells.size()));
    std::uint64_t instances = 0;
    for (const CellReport& cell : rep.cells)
      for (const ClassStats& s : cell.proposed) instances += s.count;
    std::fprintf(out.f, "method,class,count,incidence_pct,avg_truncations\n");
    if (has_proposed) {
      for (std::size_t c = 0; c < kTopologyClasses; ++c) {
        const ClassStats s = rep.proposed_total(static_cast<TopologyClass>(c));
        const double pct =
            instances ? 100.0 * static_cast<double>(s.count) / static_cast<double>(instances)
                      : 0.0;
        std::fprintf(out.f, "proposed,%s,%llu,%.6f,%.6f\n", kProposedNames[c],
                     static_cast<unsigned long long>(s.count), pct, s.average());
      }
    }
    if (has_baseline) {
      std::uint64_t binst = 0;
      for (const CellReport& cell : rep.cells) binst += cell.baseline_instances;
      for (std::size_t c = 0; c < 3; ++c) {
        const ClassStats s = rep.baseline_total(c);
        const double pct =
            binst ? 100.0 * static_cast<double>(s.count) / static_cast<double>(binst) : 0.0;
        std::fprintf(out.f, "baseline,%s,%llu,%.6f,%.6f\n", kBaselineNames[c],
                     static_cast<unsigned long long>(s.count), pct, s.average());
      }
    }
    std::fprintf(out.f, "mismatches,%llu\n",
                 static_cast<unsigned long long>(rep.mismatch_total()));
    std::fprintf(out.f, "audited,%llu\n", static_cast<unsigned long long>(rep.audited_total()));
    std::fprintf(out.f, "max_audit_error,%.3e\n", rep.max_audit_error());
    std::fprintf(out.f, "max_residual_primary,%.3e\n", rep.max_residual_primary());
    std::fprintf(out.f, "max_residual_secondary,%.3e\n", rep.max_residual_secondary());
    std::fprintf(out.f, "defects,%llu\n", static_cast<unsigned long long>(rep.defects.size()));
    for (const Defect& d : rep.defects)
      std::fprintf(out.f, "defect,%.17g,%.17g,(%.17g %.17g %.17g),(%.17g %.17g %.17g),%s\n",
                   d.alpha1, d.alpha2, d.n1.x, d.n1.y, d.n1.z, d.n2.x, d.n2.y, d.n2.z,
                   d.what.c_str());
  }
}

}  // namespace seqplic
