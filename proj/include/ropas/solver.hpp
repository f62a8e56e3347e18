#pragma once

#include "ropas/evolution.hpp"
#include "ropas/stochastic.hpp"

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

namespace ropas {

inline constexpr int64_t default_assignment_limit = 10'000'000;

// a full strategy: one assignment per evolution node, plus the expected
// rounds-to-completion from that node under the strategy
struct regimen {
  std::shared_ptr<const evolution_graph> evolution;
  std::vector<assignment> assignment_at;  // indexed by node id
  std::vector<double> value_at;           // indexed by node id

  const dag& graph() const { return evolution->graph(); }
};

struct solve_options {
  bool allow_idle = false;  // also enumerate assignments that rest workers
  int64_t node_limit = default_node_limit;
  int64_t assignment_limit = default_assignment_limit;  // per node
  int threads = 0;                                      // 0 = all available
};

// Enumerates the worker -> target maps at one node in a fixed total order:
// worker 0 is the most significant digit, each worker's digits are the
// eligible tasks ascending (then idle last when allowed).  at(i) decodes an
// arbitrary rank; next() advances in place.  Construction throws
// capacity_error when the count exceeds `limit`.
class assignment_enumerator {
public:
  assignment_enumerator(const task_set& eligible_tasks, int worker_count, bool allow_idle,
                        int64_t limit = default_assignment_limit);

  int64_t total() const { return total_; }
  assignment at(int64_t index) const;
  bool next(assignment& a) const;  // false once `a` was the last assignment

private:
  int radix() const { return int(tasks_.size()) + (allow_idle_ ? 1 : 0); }
  int digit_of(int target) const;
  int target_of(int digit) const { return digit < int(tasks_.size()) ? tasks_[size_t(digit)] : idle; }

  std::vector<int> tasks_;  // eligible ids ascending
  int workers_;
  bool allow_idle_;
  int64_t total_;
};

// Prices assignments at one evolution node: the one-round recurrence
//   T_X = (1 + sum over nonempty D of a_D * T_{X+D}) / (1 - a_empty)
// with 1/0 = +inf and 0 * anything = 0 (zero-probability arcs are skipped,
// so an unreachable infinite child costs nothing).  Both the solver and the
// evaluator price rounds through this class, so their arithmetic agrees.
class node_pricer {
public:
  node_pricer(const instance& inst, const evolution_graph& ev, uint32_t node_id);

  // `value_at` holds child values indexed by node id; entries for nodes of
  // cardinality <= |X| are never read
  double price(const assignment& a, const std::vector<double>& value_at);

private:
  const instance* inst_;
  const evolution_graph* ev_;
  uint32_t node_;
  std::vector<int> positions_;  // eligible ids ascending
  std::vector<double> q_;       // scratch, per position
};

// Standalone form of the recurrence for callers without an evolution graph:
// child values are keyed by executed set; a missing key that gets positive
// probability is a validation_error.
double node_value(const instance& inst, const task_set& executed, const assignment& a,
                  const std::unordered_map<task_set, double, task_set_hash>& child_values);

// Exact optimum by dynamic programming over the evolution graph, sweeping
// cardinality layers in decreasing order; nodes within a layer are
// independent and run under OpenMP.  Ties pick the first assignment in
// enumeration order, so the result is identical for every thread count.
regimen solve(const instance& inst, const solve_options& opts = {});

// single-threaded textbook sweep; must agree with solve() bit for bit
regimen solve_reference(const instance& inst, const solve_options& opts = {});

// how many assignments a full sweep enumerates (saturating), for reporting
int64_t count_assignments(const evolution_graph& ev, int worker_count, bool allow_idle);

} // namespace ropas
