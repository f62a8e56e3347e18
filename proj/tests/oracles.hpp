#pragma once

// Independent reference implementations for the tests: slow, direct
// translations of the definitions, sharing no logic with the library code
// they check.  Everything works on plain uint64_t task masks (bit j = task
// j), which caps them at 20 or so tasks -- plenty for test sizes.

#include "ropas/gadgets.hpp"
#include "ropas/rng.hpp"
#include "ropas/stochastic.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace oracle {

inline bool mask_downward_closed(const std::vector<ropas::arc>& arcs, uint64_t mask) {
  for (const ropas::arc& a : arcs)
    if (((mask >> a.second) & 1u) && !((mask >> a.first) & 1u)) return false;
  return true;
}

inline std::vector<uint64_t> all_downsets(int tasks, const std::vector<ropas::arc>& arcs) {
  std::vector<uint64_t> out;
  for (uint64_t mask = 0; mask < (uint64_t(1) << tasks); ++mask)
    if (mask_downward_closed(arcs, mask)) out.push_back(mask);
  return out;
}

inline std::vector<int> mask_eligible(int tasks, const std::vector<ropas::arc>& arcs,
                                      uint64_t mask) {
  std::vector<int> out;
  for (int j = 0; j < tasks; ++j) {
    if ((mask >> j) & 1u) continue;
    bool ready = true;
    for (const ropas::arc& a : arcs)
      if (a.second == j && !((mask >> a.first) & 1u)) ready = false;
    if (ready) out.push_back(j);
  }
  return out;
}

// distribution of "which tasks finished this round" under an assignment,
// by enumerating every combination of per-worker successes and failures
inline std::map<uint64_t, double> outcome_distribution(const ropas::instance& inst,
                                                       const std::vector<int>& targets) {
  std::vector<int> assigned;
  for (int i = 0; i < inst.worker_count; ++i)
    if (targets[size_t(i)] >= 0) assigned.push_back(i);
  std::map<uint64_t, double> dist;
  for (uint64_t pattern = 0; pattern < (uint64_t(1) << assigned.size()); ++pattern) {
    double prob = 1.0;
    uint64_t done = 0;
    for (size_t b = 0; b < assigned.size(); ++b) {
      int i = assigned[b];
      int j = targets[size_t(i)];
      double p = inst.success[size_t(i)][size_t(j)];
      if ((pattern >> b) & 1u) {
        prob *= p;
        done |= uint64_t(1) << j;
      } else {
        prob *= 1.0 - p;
      }
    }
    dist[done] += prob;
  }
  return dist;
}

// walks every worker -> eligible-task map (idle excluded) and calls f(targets)
template <class F>
inline void for_each_full_assignment(const std::vector<int>& eligible_tasks, int workers, F&& f) {
  if (eligible_tasks.empty()) return;
  std::vector<size_t> digit(size_t(workers), 0);
  std::vector<int> targets(size_t(workers), 0);
  for (;;) {
    for (int i = 0; i < workers; ++i) targets[size_t(i)] = eligible_tasks[digit[size_t(i)]];
    f(targets);
    int i = workers - 1;
    while (i >= 0 && digit[size_t(i)] + 1 == eligible_tasks.size()) digit[size_t(i--)] = 0;
    if (i < 0) return;
    ++digit[size_t(i)];
  }
}

// Exact optimum by value iteration: start every state at 0 and sweep the
// one-round improvement until nothing moves.  Values only ever grow, and
// because progress strictly enlarges the executed set the iteration settles
// exactly after at most tasks+1 sweeps.
inline double value_iteration_opt(const ropas::instance& inst, double tolerance = 1e-12) {
  const int t = inst.task_count();
  const std::vector<ropas::arc>& arcs = inst.g.arcs();
  const std::vector<uint64_t> downsets = all_downsets(t, arcs);
  const uint64_t full = (uint64_t(1) << t) - 1;

  std::map<uint64_t, double> value;
  for (uint64_t x : downsets) value[x] = 0.0;

  for (int sweep = 0; sweep < 10 * (t + 2); ++sweep) {
    double moved = 0.0;
    for (uint64_t x : downsets) {
      if (x == full) continue;
      std::vector<int> elig = mask_eligible(t, arcs, x);
      double best = std::numeric_limits<double>::infinity();
      for_each_full_assignment(elig, inst.worker_count, [&](const std::vector<int>& targets) {
        std::map<uint64_t, double> dist = outcome_distribution(inst, targets);
        double stay = dist.count(0) ? dist[0] : 0.0;
        if (stay >= 1.0) return;  // this assignment can never progress
        double sum = 1.0;
        for (const auto& [done, prob] : dist)
          if (done != 0) sum += prob * value[x | done];
        double v = sum / (1.0 - stay);
        if (v < best) best = v;
      });
      double delta = best - value[x];
      if (delta > moved) moved = delta;
      value[x] = best;
    }
    if (moved < tolerance) break;
  }
  return value[0];
}

// largest antichain, from scratch: own transitive closure by relaxation,
// then a scan over every subset
inline int max_antichain(int tasks, const std::vector<ropas::arc>& arcs) {
  std::vector<uint64_t> reach(size_t(tasks), 0);
  for (const ropas::arc& a : arcs) reach[size_t(a.first)] |= uint64_t(1) << a.second;
  for (bool changed = true; changed;) {
    changed = false;
    for (int u = 0; u < tasks; ++u) {
      uint64_t grown = reach[size_t(u)];
      uint64_t bits = reach[size_t(u)];
      while (bits) {
        int v = std::countr_zero(bits);
        bits &= bits - 1;
        grown |= reach[size_t(v)];
      }
      if (grown != reach[size_t(u)]) {
        reach[size_t(u)] = grown;
        changed = true;
      }
    }
  }
  int best = 0;
  for (uint64_t mask = 0; mask < (uint64_t(1) << tasks); ++mask) {
    bool antichain = true;
    for (int u = 0; u < tasks && antichain; ++u) {
      if (!((mask >> u) & 1u)) continue;
      for (int v = u + 1; v < tasks && antichain; ++v) {
        if (!((mask >> v) & 1u)) continue;
        if (((reach[size_t(u)] >> v) & 1u) || ((reach[size_t(v)] >> u) & 1u)) antichain = false;
      }
    }
    if (antichain) best = std::max(best, std::popcount(mask));
  }
  return best;
}

// yes/no subset-union question, enumerating index masks in plain ascending
// order (colexicographic choices -- a different route than the library's
// lexicographic combination walk)
inline std::optional<std::vector<int>> firmssu(const ropas::subset_system& sys) {
  const int m = 3 * sys.k;
  const int pick = 2 * sys.k;
  std::vector<uint64_t> masks;
  for (const std::vector<int>& s : sys.subsets) {
    uint64_t em = 0;
    for (int e : s) em |= uint64_t(1) << (e - 1);
    masks.push_back(em);
  }
  for (uint64_t chosen = 0; chosen < (uint64_t(1) << m); ++chosen) {
    if (std::popcount(chosen) != pick) continue;
    uint64_t covered = 0;
    for (int j = 0; j < m; ++j)
      if ((chosen >> j) & 1u) covered |= masks[size_t(j)];
    if (std::popcount(covered) <= pick) {
      std::vector<int> witness;
      for (int j = 0; j < m; ++j)
        if ((chosen >> j) & 1u) witness.push_back(j);
      return witness;
    }
  }
  return std::nullopt;
}

// ---- seeded generators for test corpora ----

inline ropas::dag random_dag(ropas::splitmix64& rng, int max_tasks) {
  int t = 1 + int(rng.next_below(uint64_t(max_tasks)));
  double density = 0.2 + 0.6 * rng.next_double();
  std::vector<ropas::arc> arcs;
  for (int u = 0; u < t; ++u)
    for (int v = u + 1; v < t; ++v)
      if (rng.next_double() < density) arcs.emplace_back(u, v);
  return ropas::dag(t, std::move(arcs));
}

inline ropas::dag random_dag_bounded_width(ropas::splitmix64& rng, int max_tasks, int max_width) {
  for (;;) {
    ropas::dag g = random_dag(rng, max_tasks);
    if (max_antichain(g.task_count(), g.arcs()) <= max_width) return g;
  }
}

inline ropas::instance random_instance(ropas::splitmix64& rng, int max_tasks, int max_width,
                                       int max_workers, double p_lo, double p_hi) {
  ropas::instance inst;
  inst.g = random_dag_bounded_width(rng, max_tasks, max_width);
  inst.worker_count = 1 + int(rng.next_below(uint64_t(max_workers)));
  inst.success.assign(size_t(inst.worker_count),
                      std::vector<double>(size_t(inst.g.task_count())));
  for (auto& row : inst.success)
    for (double& p : row) p = p_lo + (p_hi - p_lo) * rng.next_double();
  return inst;
}

} // namespace oracle
