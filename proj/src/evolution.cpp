#include "ropas/evolution.hpp"

#include "ropas/errors.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>

namespace ropas {

evolution_graph::evolution_graph(dag g, int64_t node_limit) : g_(std::move(g)) {
  const int t = g_.task_count();

  task_set empty(t);
  nodes_.push_back(empty);
  index_.emplace(empty, 0);

  // Breadth-first over executed sets.  Every downward-closed set is the
  // union of steps through eligible tasks, so this reaches all of them.
  for (uint32_t x = 0; x < nodes_.size(); ++x) {
    task_set elig = eligible(g_, nodes_[x]);
    eligible_.push_back(elig);
    const int e = elig.count();
    if (e >= 63)
      throw capacity_error("evolution graph: node with " + std::to_string(e) +
                           " eligible tasks; delta enumeration needs fewer than 63");
    if (e == 0) {
      arcs_.emplace_back();
      continue;  // the sink: nothing left to start
    }
    std::vector<int> positions = elig.to_vector();
    std::vector<evolution_arc> out;
    out.reserve((size_t(1) << e) - 1);
    for (uint64_t pattern = 1; pattern < (uint64_t(1) << e); ++pattern) {
      task_set delta(t);
      for (int b = 0; b < e; ++b)
        if ((pattern >> b) & 1u) delta.set(positions[size_t(b)]);
      task_set child = nodes_[x] | delta;
      auto [it, inserted] = index_.emplace(child, uint32_t(nodes_.size()));
      if (inserted) {
        if (int64_t(nodes_.size()) + 1 > node_limit)
          throw capacity_error(
              "evolution graph: node limit " + std::to_string(node_limit) +
              " exceeded (bound (t+1)^w = " +
              std::to_string(estimate_node_bound(t, width(g_))) + ")");
        nodes_.push_back(child);
      }
      out.push_back({it->second, std::move(delta)});
    }
    arc_count_ += int64_t(out.size());
    arcs_.push_back(std::move(out));
  }

  task_set full(t);
  for (int j = 0; j < t; ++j) full.set(j);
  source_ = 0;
  sink_ = index_.at(full);

  topo_order_.resize(nodes_.size());
  for (uint32_t i = 0; i < nodes_.size(); ++i) topo_order_[i] = i;
  std::sort(topo_order_.begin(), topo_order_.end(), [&](uint32_t a, uint32_t b) {
    int ca = nodes_[a].count(), cb = nodes_[b].count();
    if (ca != cb) return ca < cb;
    return nodes_[a].compare_value(nodes_[b]) < 0;
  });
}

std::optional<uint32_t> evolution_graph::find(const task_set& executed) const {
  auto it = index_.find(executed);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

uint32_t evolution_graph::id_of(const task_set& executed) const {
  auto it = index_.find(executed);
  if (it == index_.end())
    throw validation_error("evolution graph: no node for executed set " + executed.to_hex());
  return it->second;
}

evolution_graph build_evolution(const dag& g, int64_t node_limit) {
  return evolution_graph(g, node_limit);
}

int64_t estimate_node_bound(int task_count, int dag_width) {
  __int128 bound = 1;
  for (int i = 0; i < dag_width; ++i) {
    bound *= task_count + 1;
    if (bound > std::numeric_limits<int64_t>::max())
      return std::numeric_limits<int64_t>::max();
  }
  return int64_t(bound);
}

void write_dot(const evolution_graph& ev, std::ostream& out) {
  out << "digraph evolution {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (uint32_t id : ev.topo_order())
    out << "  n" << id << " [label=\"" << ev.node(id).to_bitstring() << "\"];\n";
  for (uint32_t id : ev.topo_order()) {
    for (const evolution_arc& a : ev.arcs(id)) {
      out << "  n" << id << " -> n" << a.child << " [label=\"";
      bool first = true;
      a.delta.for_each([&](int t) {
        if (!first) out << ",";
        out << t;
        first = false;
      });
      out << "\"];\n";
    }
  }
  out << "}\n";
}

} // namespace ropas
