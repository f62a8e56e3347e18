#include "ropas/gadgets.hpp"

#include "ropas/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace ropas {

subset_system make_subset_system(int k, std::vector<std::vector<int>> subsets) {
  if (k < 1) throw validation_error("subset system: k must be at least 1");
  const int m = 3 * k;
  if (int(subsets.size()) != m)
    throw validation_error("subset system: expected " + std::to_string(m) + " subsets, got " +
                           std::to_string(subsets.size()));
  std::vector<char> covered(size_t(m) + 1, 0);
  for (size_t j = 0; j < subsets.size(); ++j) {
    std::vector<int>& s = subsets[j];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty())
      throw validation_error("subset system: subset " + std::to_string(j + 1) + " is empty");
    for (int e : s) {
      if (e < 1 || e > m)
        throw validation_error("subset system: subset " + std::to_string(j + 1) + " holds " +
                               std::to_string(e) + ", outside 1.." + std::to_string(m));
      covered[size_t(e)] = 1;
    }
  }
  for (int e = 1; e <= m; ++e)
    if (!covered[size_t(e)])
      throw validation_error("subset system: element " + std::to_string(e) +
                             " is in no subset");
  return {k, std::move(subsets)};
}

subset_system singleton_system(int k) {
  if (k < 1) throw validation_error("subset system: k must be at least 1");
  std::vector<std::vector<int>> subsets;
  subsets.reserve(size_t(3 * k));
  for (int j = 1; j <= 3 * k; ++j) subsets.push_back({j});
  return {k, std::move(subsets)};
}

namespace {

uint64_t element_mask(const std::vector<int>& subset) {
  uint64_t mask = 0;
  for (int e : subset) mask |= uint64_t(1) << (e - 1);
  return mask;
}

} // namespace

std::optional<std::vector<int>> find_witness(const subset_system& sys) {
  const int m = 3 * sys.k;
  const int pick = 2 * sys.k;
  if (m > 63)
    throw capacity_error("witness search: brute force is limited to k <= 21");
  std::vector<uint64_t> masks;
  masks.reserve(size_t(m));
  for (const std::vector<int>& s : sys.subsets) masks.push_back(element_mask(s));

  // lexicographically first combination wins, so results are reproducible
  std::vector<int> choice(static_cast<size_t>(pick));
  for (int i = 0; i < pick; ++i) choice[size_t(i)] = i;
  for (;;) {
    uint64_t covered = 0;
    for (int j : choice) covered |= masks[size_t(j)];
    if (std::popcount(covered) <= pick) return choice;
    int i = pick - 1;
    while (i >= 0 && choice[size_t(i)] == m - pick + i) --i;
    if (i < 0) return std::nullopt;
    ++choice[size_t(i)];
    for (int j = i + 1; j < pick; ++j) choice[size_t(j)] = choice[size_t(j - 1)] + 1;
  }
}

namespace {

// checks the witness indices and returns them sorted
std::vector<int> checked_witness(const subset_system& sys, std::vector<int> witness) {
  const int m = 3 * sys.k;
  const int pick = 2 * sys.k;
  if (int(witness.size()) != pick)
    throw validation_error("witness: expected " + std::to_string(pick) + " subset indices, got " +
                           std::to_string(witness.size()));
  std::sort(witness.begin(), witness.end());
  for (size_t i = 0; i < witness.size(); ++i) {
    if (witness[i] < 0 || witness[i] >= m)
      throw validation_error("witness: index " + std::to_string(witness[i]) + " outside 0.." +
                             std::to_string(m - 1));
    if (i > 0 && witness[i] == witness[i - 1])
      throw validation_error("witness: index " + std::to_string(witness[i]) + " repeats");
  }
  uint64_t covered = 0;
  for (int j : witness) covered |= element_mask(sys.subsets[size_t(j)]);
  if (std::popcount(covered) > pick)
    throw validation_error("witness: the union has " + std::to_string(std::popcount(covered)) +
                           " elements, more than " + std::to_string(pick));
  return witness;
}

// the witness union, padded with the smallest unused elements to exactly 2k
// group ids (1-based, ascending)
std::vector<int> padded_union(const subset_system& sys, const std::vector<int>& witness) {
  const int pick = 2 * sys.k;
  uint64_t covered = 0;
  for (int j : witness) covered |= element_mask(sys.subsets[size_t(j)]);
  for (int e = 1; std::popcount(covered) < pick; ++e) covered |= uint64_t(1) << (e - 1);
  std::vector<int> u;
  u.reserve(size_t(pick));
  for (int e = 1; e <= 3 * sys.k; ++e)
    if ((covered >> (e - 1)) & 1u) u.push_back(e);
  return u;
}

// resolve the witness: validate a given one, search when k is small enough
// for the brute force to be instant
std::optional<std::vector<int>> resolve_witness(const subset_system& sys,
                                                std::optional<std::vector<int>> witness) {
  if (witness) return checked_witness(sys, std::move(*witness));
  if (sys.k <= 3) return find_witness(sys);
  return std::nullopt;
}

} // namespace

two_worker_blocks two_worker_layout(int k) {
  if (k < 1) throw validation_error("gadget layout: k must be at least 1");
  two_worker_blocks b;
  b.k = k;
  b.n = 3 * k;
  b.a1_begin = 0;
  b.a1_size = b.n * b.n;
  b.a2_begin = b.a1_begin + b.a1_size;
  b.a2_size = 2 * b.n * b.n / 3;
  b.b1_begin = b.a2_begin + b.a2_size;
  b.b1_size = 2 * b.n / 3;
  b.b2_begin = b.b1_begin + b.b1_size;
  b.b2_size = b.n;
  b.c2_begin = b.b2_begin + b.b2_size;
  b.c2_size = b.n * b.n / 3;
  b.task_count = b.c2_begin + b.c2_size;
  return b;
}

gadget two_worker_gadget(const subset_system& sys, std::optional<std::vector<int>> witness) {
  const two_worker_blocks b = two_worker_layout(sys.k);
  const int n = b.n;

  std::vector<arc> arcs;
  // each source group feeds the subset sinks it belongs to
  for (int j = 1; j <= n; ++j)
    for (int i : sys.subsets[size_t(j - 1)])
      for (int a = b.a1_group_begin(i); a < b.a1_group_begin(i) + n; ++a)
        arcs.emplace_back(a, b.b2_begin + j - 1);
  // the second source block gates both middle layers completely
  for (int a = b.a2_begin; a < b.a2_begin + b.a2_size; ++a) {
    for (int s = b.b2_begin; s < b.b2_begin + b.b2_size; ++s) arcs.emplace_back(a, s);
    for (int s = b.b1_begin; s < b.b1_begin + b.b1_size; ++s) arcs.emplace_back(a, s);
  }
  // and the first middle layer gates the tail block completely
  for (int s = b.b1_begin; s < b.b1_begin + b.b1_size; ++s)
    for (int c = b.c2_begin; c < b.c2_begin + b.c2_size; ++c) arcs.emplace_back(s, c);

  instance inst;
  inst.g = dag(b.task_count, std::move(arcs));
  inst.worker_count = 2;
  inst.success.assign(2, std::vector<double>(size_t(b.task_count), 0.0));
  for (int a = b.a1_begin; a < b.a1_begin + b.a1_size; ++a) inst.success[0][size_t(a)] = 1.0;
  for (int s = b.b1_begin; s < b.b1_begin + b.b1_size; ++s) inst.success[0][size_t(s)] = 1.0;
  for (int a = b.a2_begin; a < b.a2_begin + b.a2_size; ++a) inst.success[1][size_t(a)] = 1.0;
  for (int s = b.b2_begin; s < b.b2_begin + b.b2_size; ++s) inst.success[1][size_t(s)] = 1.0;
  for (int c = b.c2_begin; c < b.c2_begin + b.c2_size; ++c) inst.success[1][size_t(c)] = 1.0;

  gadget result{std::move(inst), std::nullopt};
  std::optional<std::vector<int>> w = resolve_witness(sys, std::move(witness));
  if (!w) return result;

  // the schedule that proves n^2 + n rounds suffice on a yes-instance
  const std::vector<int> u = padded_union(sys, *w);
  std::vector<int> first, second;  // per-round targets of the two workers
  first.reserve(size_t(n * n + n));
  second.reserve(size_t(n * n + n));

  std::vector<char> in_u(size_t(n) + 1, 0);
  for (int g : u) in_u[size_t(g)] = 1;
  for (int g : u)  // chosen source groups first, freeing their subset sinks
    for (int a = b.a1_group_begin(g); a < b.a1_group_begin(g) + n; ++a) first.push_back(a);
  for (int s = b.b1_begin; s < b.b1_begin + b.b1_size; ++s) first.push_back(s);
  for (int g = 1; g <= n; ++g)
    if (!in_u[size_t(g)])
      for (int a = b.a1_group_begin(g); a < b.a1_group_begin(g) + n; ++a) first.push_back(a);
  for (int r = 0; r < n / 3; ++r) first.push_back(idle);

  std::vector<char> in_w(size_t(n), 0);
  for (int j : *w) in_w[size_t(j)] = 1;
  for (int a = b.a2_begin; a < b.a2_begin + b.a2_size; ++a) second.push_back(a);
  for (int j : *w) second.push_back(b.b2_begin + j);
  for (int c = b.c2_begin; c < b.c2_begin + b.c2_size; ++c) second.push_back(c);
  for (int j = 0; j < n; ++j)
    if (!in_w[size_t(j)]) second.push_back(b.b2_begin + j);

  certificate_schedule cert;
  cert.claimed_rounds = int64_t(n) * n + n;
  cert.rounds.reserve(first.size());
  for (size_t r = 0; r < first.size(); ++r)
    cert.rounds.push_back(assignment{{first[r], second[r]}});
  result.schedule = std::move(cert);
  return result;
}

inapprox_blocks inapprox_layout(int k) {
  if (k < 1) throw validation_error("gadget layout: k must be at least 1");
  inapprox_blocks b;
  b.k = k;
  b.a_begin = 0;
  b.a_size = 6 * k;
  b.ba_begin = b.a_begin + b.a_size;
  b.ba_size = 3 * k;
  b.bb_begin = b.ba_begin + b.ba_size;
  b.bb_size = k;
  b.ca_begin = b.bb_begin + b.bb_size;
  b.ca_size = 3 * k;
  b.cb_begin = b.ca_begin + b.ca_size;
  b.cb_size = 3 * k;
  b.task_count = b.cb_begin + b.cb_size;
  return b;
}

gadget inapprox_gadget(const subset_system& sys, std::optional<std::vector<int>> witness) {
  const inapprox_blocks b = inapprox_layout(sys.k);
  const int k = sys.k;

  std::vector<arc> arcs;
  for (int i = 1; i <= 3 * k; ++i) {  // one gate over each source pair
    arcs.emplace_back(b.a_pair_begin(i), b.ba_begin + i - 1);
    arcs.emplace_back(b.a_pair_begin(i) + 1, b.ba_begin + i - 1);
  }
  for (int s = b.bb_begin; s < b.bb_begin + b.bb_size; ++s)
    for (int a = b.a_begin; a < b.a_begin + b.a_size; ++a) arcs.emplace_back(a, s);
  for (int j = 1; j <= 3 * k; ++j)  // subset sinks over the pair gates
    for (int i : sys.subsets[size_t(j - 1)])
      arcs.emplace_back(b.ba_begin + i - 1, b.ca_begin + j - 1);
  for (int c = b.cb_begin; c < b.cb_begin + b.cb_size; ++c)
    for (int s = b.bb_begin; s < b.bb_begin + b.bb_size; ++s) arcs.emplace_back(s, c);

  instance inst;
  inst.g = dag(b.task_count, std::move(arcs));
  inst.worker_count = 4 * k;
  inst.success.assign(size_t(4 * k), std::vector<double>(size_t(b.task_count), 1.0));

  gadget result{std::move(inst), std::nullopt};
  std::optional<std::vector<int>> w = resolve_witness(sys, std::move(witness));
  if (!w) return result;

  const std::vector<int> u = padded_union(sys, *w);
  std::vector<char> in_u(size_t(3 * k) + 1, 0);
  for (int g : u) in_u[size_t(g)] = 1;
  std::vector<char> in_w(size_t(3 * k), 0);
  for (int j : *w) in_w[size_t(j)] = 1;

  std::vector<std::vector<int>> round_tasks(4);
  for (int g : u) {  // chosen pairs first, freeing their subset sinks early
    round_tasks[0].push_back(b.a_pair_begin(g));
    round_tasks[0].push_back(b.a_pair_begin(g) + 1);
  }
  for (int g = 1; g <= 3 * k; ++g) {
    if (in_u[size_t(g)]) {
      round_tasks[1].push_back(b.ba_begin + g - 1);
    } else {
      round_tasks[1].push_back(b.a_pair_begin(g));
      round_tasks[1].push_back(b.a_pair_begin(g) + 1);
      round_tasks[2].push_back(b.ba_begin + g - 1);
    }
  }
  for (int j = 0; j < 3 * k; ++j)
    (in_w[size_t(j)] ? round_tasks[2] : round_tasks[3]).push_back(b.ca_begin + j);
  for (int s = b.bb_begin; s < b.bb_begin + b.bb_size; ++s) round_tasks[2].push_back(s);
  for (int c = b.cb_begin; c < b.cb_begin + b.cb_size; ++c) round_tasks[3].push_back(c);

  certificate_schedule cert;
  cert.claimed_rounds = 4;
  for (std::vector<int>& tasks : round_tasks) {
    std::sort(tasks.begin(), tasks.end());  // worker w takes the w-th task
    assignment a{std::vector<int>(size_t(4 * k), idle)};
    for (size_t i = 0; i < tasks.size(); ++i) a.target[i] = tasks[i];
    cert.rounds.push_back(std::move(a));
  }
  result.schedule = std::move(cert);
  return result;
}

replay_result replay_certificate(const instance& inst, const certificate_schedule& cert) {
  require_valid(inst);
  for (const std::vector<double>& row : inst.success)
    for (double p : row)
      if (p != 0.0 && p != 1.0)
        throw validation_error("certificate replay needs 0/1 success probabilities");

  const int t = inst.task_count();
  task_set executed(t);
  replay_result result;

  auto list_missing = [&]() {
    std::vector<int> missing;
    for (int j = 0; j < t; ++j)
      if (!executed.test(j)) missing.push_back(j);
    return missing;
  };

  for (size_t r = 0; r < cert.rounds.size() && executed.count() < t; ++r) {
    const assignment& a = cert.rounds[r];
    if (int(a.target.size()) != inst.worker_count)
      throw validation_error("round " + std::to_string(r + 1) + " has " +
                             std::to_string(a.target.size()) + " targets, expected " +
                             std::to_string(inst.worker_count));
    task_set elig = eligible(inst.g, executed);
    task_set next = executed;
    for (int i = 0; i < inst.worker_count; ++i) {
      int j = a.target[size_t(i)];
      if (j == idle) continue;
      if (j < 0 || j >= t || !elig.test(j)) {
        result.ok = false;
        result.rounds_used = int64_t(r + 1);
        result.failed_round = int64_t(r + 1);
        result.unexecuted = list_missing();
        result.message = "round " + std::to_string(r + 1) + ": worker " + std::to_string(i) +
                         " aims at task " + std::to_string(j) + ", which is not eligible";
        return result;
      }
      if (inst.success[size_t(i)][size_t(j)] == 1.0) next.set(j);
    }
    executed = next;
    result.rounds_used = int64_t(r + 1);
  }

  result.unexecuted = list_missing();
  if (!result.unexecuted.empty()) {
    result.ok = false;
    result.message = std::to_string(result.unexecuted.size()) + " of " + std::to_string(t) +
                     " tasks unexecuted after " + std::to_string(cert.rounds.size()) + " rounds";
    result.rounds_used = int64_t(cert.rounds.size());
    return result;
  }
  if (result.rounds_used > cert.claimed_rounds) {
    result.ok = false;
    result.message = "finished in " + std::to_string(result.rounds_used) +
                     " rounds, over the claimed " + std::to_string(cert.claimed_rounds);
    return result;
  }
  result.ok = true;
  result.message = "all " + std::to_string(t) + " tasks executed in " +
                   std::to_string(result.rounds_used) + " rounds (claimed " +
                   std::to_string(cert.claimed_rounds) + ")";
  return result;
}

instance two_task_instance(const std::vector<double>& fail_odds) {
  if (fail_odds.empty()) throw validation_error("two-task instance: needs at least one worker");
  for (double r : fail_odds)
    if (!(r > 0.0 && r < 1.0))
      throw validation_error("two-task instance: failure odds must lie strictly in (0,1)");
  instance inst;
  inst.g = dag(2, {});
  inst.worker_count = int(fail_odds.size());
  inst.success.reserve(fail_odds.size());
  for (double r : fail_odds) inst.success.push_back({1.0 - r, 1.0 - r});
  return inst;
}

} // namespace ropas
