#pragma once

#include "ropas/dag.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

namespace ropas {

inline constexpr int64_t default_node_limit = 1'000'000;

// one way a round can make progress from a node: the executed set grows by
// `delta`, a nonempty subset of the node's eligible tasks
struct evolution_arc {
  uint32_t child;
  task_set delta;
};

// The graph of executed-set states: one node per downward-closed subset of
// the dag, an arc X -> X+D for every nonempty D inside E(X).  Node ids are
// discovery order from the empty set; for node x the arc whose delta has
// compact pattern v over the ascending eligible tasks sits at arcs(x)[v-1],
// so deltas enumerate in increasing-pattern order and lookups are O(1).
class evolution_graph {
public:
  evolution_graph(dag g, int64_t node_limit);

  const dag& graph() const { return g_; }
  int64_t node_count() const { return int64_t(nodes_.size()); }
  int64_t arc_count() const { return arc_count_; }
  const task_set& node(uint32_t id) const { return nodes_[id]; }
  const task_set& eligible_at(uint32_t id) const { return eligible_[id]; }
  const std::vector<evolution_arc>& arcs(uint32_t id) const { return arcs_[id]; }

  // every node id, sorted by (cardinality, bit-vector value) ascending; the
  // dynamic program sweeps it in reverse
  const std::vector<uint32_t>& topo_order() const { return topo_order_; }

  uint32_t source_id() const { return source_; }  // the empty set
  uint32_t sink_id() const { return sink_; }      // the full set

  std::optional<uint32_t> find(const task_set& executed) const;
  uint32_t id_of(const task_set& executed) const;  // throws validation_error

private:
  dag g_;
  std::vector<task_set> nodes_;
  std::vector<task_set> eligible_;
  std::vector<std::vector<evolution_arc>> arcs_;
  std::unordered_map<task_set, uint32_t, task_set_hash> index_;
  std::vector<uint32_t> topo_order_;
  uint32_t source_ = 0;
  uint32_t sink_ = 0;
  int64_t arc_count_ = 0;
};

evolution_graph build_evolution(const dag& g, int64_t node_limit = default_node_limit);

// (t+1)^w, saturated at INT64_MAX: the node-count bound for a dag of t tasks
// and width w
int64_t estimate_node_bound(int task_count, int dag_width);

// Graphviz rendering; nodes are labelled with executed-set bit strings
void write_dot(const evolution_graph& ev, std::ostream& out);

} // namespace ropas
