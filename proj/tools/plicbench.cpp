// Benchmark driver: generates the sample grids, runs the divergence-based
// positioner (and optionally the decomposition-based baseline) over every
// instance, and writes the aggregated CSV reports.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "seqplic/experiment.hpp"
#include "seqplic/polyhedron.hpp"

namespace {

int run(int argc, char** argv) {
  CLI::App app{"Sequential two-plane PLIC positioning benchmark"};

  std::string shape_arg = "cube";
  int m_normal = 6;
  int m_vof = 10;
  double eps1 = 1e-9;
  double eps2 = 1e-5;
  double zero_tol = 1e-14;
  double vof_tol = 1e-12;
  std::string method_arg = "proposed";
  int threads = 0;
  std::string out_dir = "plicbench-out";
  bool full_grid = false;
  std::uint64_t seed = 0;

  app.add_option("--shape", shape_arg, "cube | dodeca | notched | off:<path>");
  app.add_option("--m-normal", m_normal, "normal lattice resolution");
  app.add_option("--m-vof", m_vof, "linear volume-fraction resolution");
  app.add_option("--eps1", eps1, "smallest admissible volume fraction");
  app.add_option("--eps2", eps2, "log/linear spacing transition");
  app.add_option("--zero-tol", zero_tol, "plane tubular-neighborhood tolerance");
  app.add_option("--vof-tol", vof_tol, "volume-fraction convergence tolerance");
  app.add_option("--method", method_arg, "proposed | baseline | both");
  app.add_option("--threads", threads, "worker threads (env PLICBENCH_THREADS as fallback)");
  app.add_option("--out", out_dir, "output directory for CSV reports");
  app.add_flag("--full-grid", full_grid, "paper-resolution grid (m-normal 10, m-vof 20)");
  app.add_option("--seed", seed, "seed for the deterministic audit subsample");

  CLI11_PARSE(app, argc, argv);

  if (threads <= 0) {
    if (const char* env = std::getenv("PLICBENCH_THREADS")) threads = std::atoi(env);
    if (threads <= 0) threads = 1;
  }
  if (full_grid) {
    m_normal = 10;
    m_vof = 20;
  }

  seqplic::Method method;
  if (method_arg == "proposed")
    method = seqplic::Method::proposed;
  else if (method_arg == "baseline")
    method = seqplic::Method::baseline;
  else if (method_arg == "both")
    method = seqplic::Method::both;
  else {
    std::fprintf(stderr, "unknown method: %s\n", method_arg.c_str());
    return 1;
  }

  seqplic::Polyhedron shape = seqplic::make_unit_cube();
  bool cube_cell = true;
  std::string shape_name = shape_arg;
  if (shape_arg == "cube") {
  } else if (shape_arg == "dodeca") {
    shape = seqplic::make_dodecahedron();
    cube_cell = false;
  } else if (shape_arg == "notched") {
    shape = seqplic::make_notched_cube();
    cube_cell = false;
  } else if (shape_arg.rfind("off:", 0) == 0) {
    shape = seqplic::read_off(shape_arg.substr(4));
    cube_cell = false;
  } else {
    std::fprintf(stderr, "unknown shape: %s\n", shape_arg.c_str());
    return 1;
  }
  if (!cube_cell && method != seqplic::Method::proposed) {
    std::fprintf(stderr, "baseline requires the cube shape\n");
    return 1;
  }

  const seqplic::SampleGrid grid = seqplic::generate_grid(m_normal, m_vof, eps1, eps2);

  seqplic::ExperimentConfig cfg;
  cfg.tol.zero_tol = zero_tol;
  cfg.tol.vof_tol = vof_tol;
  cfg.tol.eps1 = eps1;
  cfg.threads = threads;
  cfg.seed = seed;
  cfg.cube_cell = cube_cell;

  std::printf("shape=%s normals=%zu fraction-pairs=%zu instances=%zu threads=%d\n",
              shape_name.c_str(), grid.normals.size(), grid.fraction_pairs.size(),
              grid.instance_count(), threads);

  const seqplic::AggregateReport rep =
      seqplic::run_experiment(grid, shape, shape_name, method, cfg);
  seqplic::emit_report(rep, out_dir);

  if (method != seqplic::Method::baseline) {
    for (std::size_t c = 0; c < seqplic::kTopologyClasses; ++c) {
      const seqplic::ClassStats s = rep.proposed_total(static_cast<seqplic::TopologyClass>(c));
      std::printf("proposed %-24s count=%-10llu avg-truncations=%.4f\n",
                  seqplic::to_string(static_cast<seqplic::TopologyClass>(c)),
                  static_cast<unsigned long long>(s.count), s.average());
    }
    std::printf("max residuals: primary=%.3e secondary=%.3e audit=%.3e (audited %llu)\n",
                rep.max_residual_primary(), rep.max_residual_secondary(), rep.max_audit_error(),
                static_cast<unsigned long long>(rep.audited_total()));
  }
  if (method != seqplic::Method::proposed) {
    static const char* names[3] = {"triple", "fully_wetted", "non_wetted"};
    for (std::size_t c = 0; c < 3; ++c) {
      const seqplic::ClassStats s = rep.baseline_total(c);
      std::printf("baseline %-24s count=%-10llu avg-truncations=%.4f\n", names[c],
                  static_cast<unsigned long long>(s.count), s.average());
    }
    std::printf("topology mismatches: %llu\n",
                static_cast<unsigned long long>(rep.mismatch_total()));
  }
  std::printf("reports written to %s\n", out_dir.c_str());

  if (!rep.defects.empty()) {
    std::fprintf(stderr, "%zu positioner defect(s); first: %s\n", rep.defects.size(),
                 rep.defects.front().what.c_str());
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
