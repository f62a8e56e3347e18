#pragma once

#include "ropas/stochastic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ropas {

// 3k subsets of {1..3k} covering all of it (elements 1-based, kept sorted);
// the underlying question: do some 2k of them have a union of at most 2k
// elements?
struct subset_system {
  int k = 0;
  std::vector<std::vector<int>> subsets;
};

// validates and normalizes (sorts, dedupes) the subsets
subset_system make_subset_system(int k, std::vector<std::vector<int>> subsets);

// S_j = {j}: every choice of 2k subsets works, so always a yes-instance
subset_system singleton_system(int k);

// first 2k subset indices (0-based, ascending) whose union has at most 2k
// elements, or nothing; plain brute force over all C(3k, 2k) choices
std::optional<std::vector<int>> find_witness(const subset_system& sys);

// a claimed schedule: per round, one target (or idle) per worker
struct certificate_schedule {
  int64_t claimed_rounds = 0;
  std::vector<assignment> rounds;
};

// a reduction instance, with a completion schedule when a witness is known
struct gadget {
  instance inst;
  std::optional<certificate_schedule> schedule;
};

// The two-worker reduction: with n = 3k, an instance of 2n^2 + 5n/3 tasks
// whose two 0/1 workers can finish in n^2 + n rounds exactly when the
// subset question is a yes-instance.  A missing witness is searched for
// automatically when k <= 3; without one the schedule stays empty.
gadget two_worker_gadget(const subset_system& sys,
                         std::optional<std::vector<int>> witness = std::nullopt);

// The tight reduction: 4k all-capable workers and 16k tasks, finishable in
// 4 rounds on yes-instances and not before 5 otherwise.
gadget inapprox_gadget(const subset_system& sys,
                       std::optional<std::vector<int>> witness = std::nullopt);

struct replay_result {
  bool ok = false;
  int64_t rounds_used = 0;   // rounds consumed when the last task finished
  int64_t failed_round = 0;  // 1-based round of the first bad target, 0 if none
  std::vector<int> unexecuted;
  std::string message;
};

// Deterministically replays a schedule against a 0/1-probability instance:
// every target must be eligible in its round and everything must finish
// within claimed_rounds.  Fractional probabilities are rejected, their
// replay would not be deterministic.
replay_result replay_certificate(const instance& inst, const certificate_schedule& cert);

// Two isolated tasks, one worker per entry of `fail_odds`; worker i
// completes either task with probability 1 - fail_odds[i] per round.
// Each fail_odds[i] must lie strictly between 0 and 1.
instance two_task_instance(const std::vector<double>& fail_odds);

// block layout of the two-worker gadget, for inspection and tests
struct two_worker_blocks {
  int k = 0, n = 0;               // n = 3k
  int a1_begin = 0, a1_size = 0;  // n source groups of n tasks
  int a2_begin = 0, a2_size = 0;  // 2n^2/3 source tasks
  int b1_begin = 0, b1_size = 0;  // 2n/3 tasks over all of A2
  int b2_begin = 0, b2_size = 0;  // n tasks, one per subset
  int c2_begin = 0, c2_size = 0;  // n^2/3 tasks over all of B1
  int task_count = 0;
  int a1_group_begin(int group) const { return a1_begin + (group - 1) * n; }
};
two_worker_blocks two_worker_layout(int k);

// block layout of the 4k-worker gadget
struct inapprox_blocks {
  int k = 0;
  int a_begin = 0, a_size = 0;    // 3k source pairs
  int ba_begin = 0, ba_size = 0;  // 3k tasks, one over each pair
  int bb_begin = 0, bb_size = 0;  // k tasks over all of A
  int ca_begin = 0, ca_size = 0;  // 3k tasks, one per subset over B_a
  int cb_begin = 0, cb_size = 0;  // 3k tasks over all of B_b
  int task_count = 0;
  int a_pair_begin(int group) const { return a_begin + (group - 1) * 2; }
};
inapprox_blocks inapprox_layout(int k);

} // namespace ropas
