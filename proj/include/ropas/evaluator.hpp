#pragma once

#include "ropas/solver.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace ropas {

inline constexpr int64_t default_round_cap = 1'000'000;

// Monte-Carlo summary; trials with the same (instance, strategy, seed)
// reproduce this struct exactly, independent of thread count
struct sim_report {
  int64_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double min = 0.0;
  double max = 0.0;
  uint64_t seed = 0;

  bool operator==(const sim_report&) const = default;
};

// expected rounds to completion from every node under the regimen's own
// assignments (value_at in the regimen is ignored, not trusted)
std::vector<double> evaluate_all(const instance& inst, const regimen& reg);

// expected rounds to completion from `start`; +inf when a stalled node is
// reachable with positive probability
double evaluate(const instance& inst, const regimen& reg, const task_set& start);

// the baseline strategy: aim every worker at the lowest-id eligible task
regimen chain_regimen(const instance& inst, int64_t node_limit = default_node_limit);

// Simulates `trials` runs from `start` under the regimen.  Trial r draws
// from splitmix64::stream(seed, r); within a round the assigned workers draw
// in worker-id order, one double each.  A trial passing `round_cap` rounds
// raises capacity_error.
sim_report simulate(const instance& inst, const regimen& reg, const task_set& start,
                    int64_t trials, uint64_t seed, int threads = 0,
                    int64_t round_cap = default_round_cap);

// Common trial engine: `assign_at` maps the executed set to this round's
// assignment.  simulate() and simulate_policy() both run on it, so equal
// seeds give identical draw sequences whichever way the strategy is stored.
sim_report run_trials(const instance& inst,
                      const std::function<assignment(const task_set&)>& assign_at,
                      const task_set& start, int64_t trials, uint64_t seed, int threads,
                      int64_t round_cap);

} // namespace ropas
