#include "ropas/dag.hpp"

#include "ropas/errors.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace ropas {

namespace {

std::string arc_str(const arc& a) {
  return "(" + std::to_string(a.first) + " -> " + std::to_string(a.second) + ")";
}

// Runs Kahn's elimination; if tasks remain, every one of them lies on a
// cycle, so walking child pointers inside the residual must revisit a task.
void check_acyclic(int task_count, const std::vector<std::vector<int>>& children,
                   const std::vector<std::vector<int>>& parents) {
  std::vector<int> degree(static_cast<size_t>(task_count));
  for (int v = 0; v < task_count; ++v) degree[size_t(v)] = int(parents[size_t(v)].size());
  std::queue<int> ready;
  for (int v = 0; v < task_count; ++v)
    if (degree[size_t(v)] == 0) ready.push(v);
  int removed = 0;
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop();
    ++removed;
    for (int c : children[size_t(v)])
      if (--degree[size_t(c)] == 0) ready.push(c);
  }
  if (removed == task_count) return;

  int start = 0;
  while (degree[size_t(start)] == 0) ++start;
  std::vector<char> seen(static_cast<size_t>(task_count));
  int v = start;
  while (!seen[size_t(v)]) {
    seen[size_t(v)] = 1;
    for (int c : children[size_t(v)]) {
      if (degree[size_t(c)] > 0) {  // stay inside the residual graph
        v = c;
        break;
      }
    }
  }
  throw validation_error("dag: cycle through task " + std::to_string(v));
}

} // namespace

dag::dag(int task_count, std::vector<arc> arcs) : task_count_(task_count) {
  if (task_count < 0) throw validation_error("dag: negative task count");
  for (const arc& a : arcs) {
    if (a.first < 0 || a.first >= task_count || a.second < 0 || a.second >= task_count)
      throw validation_error("dag: arc " + arc_str(a) + " references a task outside 0.." +
                             std::to_string(task_count - 1));
    if (a.first == a.second)
      throw validation_error("dag: self-loop " + arc_str(a));
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  arcs_ = std::move(arcs);

  parents_.assign(size_t(task_count), {});
  children_.assign(size_t(task_count), {});
  for (const arc& a : arcs_) {
    children_[size_t(a.first)].push_back(a.second);
    parents_[size_t(a.second)].push_back(a.first);
  }

  check_acyclic(task_count_, children_, parents_);

  // closure in reverse topological order: descendants(v) = union over
  // children c of ({c} + descendants(c))
  std::vector<int> order = topo_sort(*this);
  closure_.assign(size_t(task_count), task_set(task_count));
  for (size_t i = order.size(); i-- > 0;) {
    int v = order[i];
    task_set& d = closure_[size_t(v)];
    for (int c : children_[size_t(v)]) {
      d.set(c);
      d |= closure_[size_t(c)];
    }
  }
}

bool is_downward_closed(const dag& g, const task_set& executed) {
  bool ok = true;
  executed.for_each([&](int t) {
    for (int p : g.parents(t))
      if (!executed.test(p)) ok = false;
  });
  return ok;
}

task_set eligible(const dag& g, const task_set& executed) {
  if (executed.universe() != g.task_count())
    throw validation_error("eligible: executed-set universe does not match the dag");
  if (!is_downward_closed(g, executed))
    throw validation_error("eligible: executed set is not downward closed");
  task_set e(g.task_count());
  for (int t = 0; t < g.task_count(); ++t) {
    if (executed.test(t)) continue;
    bool ready = true;
    for (int p : g.parents(t)) {
      if (!executed.test(p)) {
        ready = false;
        break;
      }
    }
    if (ready) e.set(t);
  }
  return e;
}

std::vector<int> topo_sort(const dag& g) {
  int t = g.task_count();
  std::vector<int> degree(static_cast<size_t>(t));
  for (int v = 0; v < t; ++v) degree[size_t(v)] = int(g.parents(v).size());
  // min-heap on task id so the order is deterministic
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < t; ++v)
    if (degree[size_t(v)] == 0) ready.push(v);
  std::vector<int> order;
  order.reserve(size_t(t));
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c : g.children(v))
      if (--degree[size_t(c)] == 0) ready.push(c);
  }
  return order;
}

namespace {

// Hopcroft-Karp on the bipartite graph (left copy, right copy) with an edge
// u -> v whenever u strictly precedes v; by Dilworth/Mirsky via Konig,
// width = task_count - maximum matching.
struct matcher {
  const dag& g;
  int t;
  std::vector<int> match_left, match_right, dist;

  explicit matcher(const dag& graph)
      : g(graph), t(graph.task_count()),
        match_left(size_t(t), -1), match_right(size_t(t), -1), dist(size_t(t)) {}

  bool bfs() {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < t; ++u) {
      if (match_left[size_t(u)] == -1) {
        dist[size_t(u)] = 0;
        q.push(u);
      } else {
        dist[size_t(u)] = -1;
      }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      g.descendants(u).for_each([&](int v) {
        int w = match_right[size_t(v)];
        if (w == -1) {
          found = true;
        } else if (dist[size_t(w)] == -1) {
          dist[size_t(w)] = dist[size_t(u)] + 1;
          q.push(w);
        }
      });
    }
    return found;
  }

  bool dfs(int u) {
    bool advanced = false;
    g.descendants(u).for_each([&](int v) {
      if (advanced) return;
      int w = match_right[size_t(v)];
      if (w == -1 || (dist[size_t(w)] == dist[size_t(u)] + 1 && dfs(w))) {
        match_left[size_t(u)] = v;
        match_right[size_t(v)] = u;
        advanced = true;
      }
    });
    if (!advanced) dist[size_t(u)] = -1;
    return advanced;
  }

  int run() {
    int matching = 0;
    while (bfs())
      for (int u = 0; u < t; ++u)
        if (match_left[size_t(u)] == -1 && dfs(u)) ++matching;
    return matching;
  }
};

} // namespace

int width(const dag& g) {
  if (g.task_count() == 0) return 0;
  return g.task_count() - matcher(g).run();
}

} // namespace ropas
