#include "ropas/json_io.hpp"
#include "ropas/rng.hpp"
#include "ropas/solver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

namespace {

using namespace ropas;

// `chains` parallel chains of `length` tasks each: width = chains, so the
// evolution graph has exactly (length+1)^chains nodes and the two solver
// paths get a predictable amount of work
instance chain_instance(int chains, int length, int workers, uint64_t seed) {
  int t = chains * length;
  std::vector<arc> arcs;
  for (int c = 0; c < chains; ++c)
    for (int i = 1; i < length; ++i)
      arcs.emplace_back(c * length + i - 1, c * length + i);
  instance inst;
  inst.g = dag(t, std::move(arcs));
  inst.worker_count = workers;
  splitmix64 rng = splitmix64::stream(seed, 0);
  inst.success.assign(size_t(workers), std::vector<double>(size_t(t)));
  for (auto& row : inst.success)
    for (double& p : row) p = 0.2 + 0.8 * rng.next_double();
  return inst;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"compare the parallel solver against the serial reference"};
  int chains = 4, length = 4, workers = 3, reps = 3, threads = 0;
  uint64_t seed = 20240901;
  app.add_option("--chains", chains, "parallel chains in the dag");
  app.add_option("--length", length, "tasks per chain");
  app.add_option("--workers", workers, "workers in the instance");
  app.add_option("--reps", reps, "timed repetitions of each solver");
  app.add_option("--seed", seed, "probability-matrix seed");
  app.add_option("--threads", threads, "threads for the parallel solver (0 = all)");
  CLI11_PARSE(app, argc, argv);

  instance inst = chain_instance(chains, length, workers, seed);
  solve_options opts;
  opts.threads = threads;

  std::printf("instance: %d tasks (%d chains of %d), %d workers\n", inst.task_count(), chains,
              length, workers);

  regimen reference = solve_reference(inst, opts);
  regimen parallel = solve(inst, opts);
  if (regimen_to_json(reference) != regimen_to_json(parallel)) {
    std::fprintf(stderr, "FAIL: parallel and reference regimens differ\n");
    return 1;
  }
  std::printf("outputs identical, nodes=%lld, value=%s\n",
              (long long)reference.evolution->node_count(),
              format_double(reference.value_at[reference.evolution->source_id()], 12).c_str());

  double best_serial = -1.0, best_parallel = -1.0;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    regimen a = solve_reference(inst, opts);
    double serial_ms = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    regimen b = solve(inst, opts);
    double parallel_ms = ms_since(t0);
    if (best_serial < 0 || serial_ms < best_serial) best_serial = serial_ms;
    if (best_parallel < 0 || parallel_ms < best_parallel) best_parallel = parallel_ms;
    std::printf("rep %d: serial %.2f ms, parallel %.2f ms\n", r + 1, serial_ms, parallel_ms);
  }
  std::printf("best: serial %.2f ms, parallel %.2f ms, speedup %.2fx\n", best_serial,
              best_parallel, best_serial / best_parallel);
  return 0;
}
