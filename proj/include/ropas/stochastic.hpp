#pragma once

#include "ropas/dag.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace ropas {

inline constexpr double inf_value = std::numeric_limits<double>::infinity();

// absolute tolerance used for value comparisons throughout the repo
inline constexpr double repo_epsilon = 1e-9;

// a worker not aimed at any task this round
inline constexpr int idle = -1;

// one round's worker -> task map; target[i] is a task id or `idle`
struct assignment {
  std::vector<int> target;

  bool operator==(const assignment&) const = default;
};

// a scheduling problem: precedence dag + per-(worker, task) success odds
struct instance {
  dag g;
  int worker_count = 0;
  std::vector<std::vector<double>> success;  // success[worker][task]

  int task_count() const { return g.task_count(); }
};

// Returns human-readable problems, empty when the instance is well formed:
// matrix dimensions, probabilities in [0,1] (NaN rejected), and every task
// executable by at least one worker.
std::vector<std::string> validate(const instance& inst);

// throws validation_error listing every problem found by validate()
void require_valid(const instance& inst);

// q_j: probability task j completes this round, 1 - prod over the workers
// aimed at j of (1 - success[i][j]); 0 when nobody is aimed at j
double task_success_prob(const instance& inst, const assignment& a, int task);

// the set of distinct tasks some worker is aimed at
task_set assigned_task_set(const assignment& a, int task_count);

// P(exactly the tasks in `done` succeed this round) under assignment `a`;
// zero whenever `done` includes an unattempted task
double exact_set_prob(const instance& inst, const assignment& a, const task_set& done);

// sum over tasks of the expected rounds to finish that task alone with every
// worker aimed at it; an upper bound on the optimum (and exact on chains)
double chain_upper_bound(const instance& inst);

// Probability that out of the positions in `attempted` exactly those in
// `succeeded` succeed, with q[k] the success probability of position k.
// Factors multiply in ascending position order; the solver and the evaluator
// both price outcomes through this one routine so they agree bit for bit.
inline double exact_mask_prob(uint64_t attempted, uint64_t succeeded, const std::vector<double>& q) {
  double prob = 1.0;
  uint64_t m = attempted;
  while (m) {
    int k = std::countr_zero(m);
    m &= m - 1;
    prob *= ((succeeded >> k) & 1u) ? q[size_t(k)] : 1.0 - q[size_t(k)];
  }
  return prob;
}

} // namespace ropas
