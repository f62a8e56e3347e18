#pragma once

#include "ropas/task_set.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ropas {

using arc = std::pair<int, int>;  // (from, to): from must run before to

// Precedence dag over tasks 0..task_count-1.  Construction validates arcs
// (range, no self-loops, acyclic), silently drops duplicates, and caches the
// strict transitive closure so reachability queries are O(1) bitset tests.
class dag {
public:
  dag() = default;
  dag(int task_count, std::vector<arc> arcs);

  int task_count() const { return task_count_; }
  const std::vector<arc>& arcs() const { return arcs_; }  // sorted, deduped
  const std::vector<int>& parents(int task) const { return parents_[size_t(task)]; }
  const std::vector<int>& children(int task) const { return children_[size_t(task)]; }

  // strict descendants of `task` (everything reachable by >= 1 arc)
  const task_set& descendants(int task) const { return closure_[size_t(task)]; }
  bool reaches(int from, int to) const { return closure_[size_t(from)].test(to); }

  bool operator==(const dag& o) const {
    return task_count_ == o.task_count_ && arcs_ == o.arcs_;
  }

private:
  int task_count_ = 0;
  std::vector<arc> arcs_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
  std::vector<task_set> closure_;
};

// X is downward closed iff every parent of every member is a member
bool is_downward_closed(const dag& g, const task_set& executed);

// E(X): tasks outside X whose parents all lie in X.  Throws validation_error
// when X is not downward closed (such states are unreachable).
task_set eligible(const dag& g, const task_set& executed);

// Kahn's algorithm, smallest ready id first (deterministic)
std::vector<int> topo_sort(const dag& g);

// Dilworth width: size of the largest antichain, computed as
// task_count - (maximum matching of the comparability bigraph)
int width(const dag& g);

} // namespace ropas
