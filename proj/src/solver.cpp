#include "ropas/solver.hpp"

#include "ropas/errors.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <string>

#ifdef ROPAS_HAVE_OPENMP
#include <omp.h>
#endif

namespace ropas {

namespace {

int64_t pow_saturating(int64_t base, int exp) {
  __int128 v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > std::numeric_limits<int64_t>::max()) return std::numeric_limits<int64_t>::max();
  }
  return int64_t(v);
}

int64_t add_saturating(int64_t a, int64_t b) {
  if (a > std::numeric_limits<int64_t>::max() - b) return std::numeric_limits<int64_t>::max();
  return a + b;
}

} // namespace

assignment_enumerator::assignment_enumerator(const task_set& eligible_tasks, int worker_count,
                                             bool allow_idle, int64_t limit)
    : tasks_(eligible_tasks.to_vector()), workers_(worker_count), allow_idle_(allow_idle) {
  if (worker_count < 0) throw validation_error("assignment enumeration: negative worker count");
  total_ = workers_ == 0 ? 1 : pow_saturating(radix(), workers_);
  if (total_ > limit)
    throw capacity_error("assignment enumeration: " + std::to_string(radix()) + "^" +
                         std::to_string(workers_) + " = " + std::to_string(total_) +
                         " assignments exceeds the limit " + std::to_string(limit));
}

assignment assignment_enumerator::at(int64_t index) const {
  if (index < 0 || index >= total_)
    throw validation_error("assignment enumeration: rank " + std::to_string(index) +
                           " outside 0.." + std::to_string(total_ - 1));
  assignment a{std::vector<int>(size_t(workers_), idle)};
  const int64_t r = radix();
  for (int i = workers_ - 1; i >= 0; --i) {  // worker 0 is most significant
    a.target[size_t(i)] = target_of(int(index % r));
    index /= r;
  }
  return a;
}

int assignment_enumerator::digit_of(int target) const {
  if (target == idle) {
    if (!allow_idle_) throw validation_error("assignment enumeration: idle target not allowed here");
    return int(tasks_.size());
  }
  auto it = std::lower_bound(tasks_.begin(), tasks_.end(), target);
  if (it == tasks_.end() || *it != target)
    throw validation_error("assignment enumeration: task " + std::to_string(target) +
                           " is not eligible at this node");
  return int(it - tasks_.begin());
}

bool assignment_enumerator::next(assignment& a) const {
  if (int(a.target.size()) != workers_)
    throw validation_error("assignment enumeration: assignment has " +
                           std::to_string(a.target.size()) + " targets, expected " +
                           std::to_string(workers_));
  for (int i = workers_ - 1; i >= 0; --i) {
    int d = digit_of(a.target[size_t(i)]) + 1;
    if (d < radix()) {
      a.target[size_t(i)] = target_of(d);
      for (int j = i + 1; j < workers_; ++j) a.target[size_t(j)] = target_of(0);
      return true;
    }
  }
  return false;  // a was the lexicographically last assignment
}

node_pricer::node_pricer(const instance& inst, const evolution_graph& ev, uint32_t node_id)
    : inst_(&inst), ev_(&ev), node_(node_id),
      positions_(ev.eligible_at(node_id).to_vector()),
      q_(positions_.size(), 0.0) {}

double node_pricer::price(const assignment& a, const std::vector<double>& value_at) {
  if (int(a.target.size()) != inst_->worker_count)
    throw validation_error("assignment has " + std::to_string(a.target.size()) +
                           " targets, expected one per worker (" +
                           std::to_string(inst_->worker_count) + ")");
  uint64_t attempted = 0;
  for (int target : a.target) {
    if (target == idle) continue;
    auto it = std::lower_bound(positions_.begin(), positions_.end(), target);
    if (it == positions_.end() || *it != target)
      throw validation_error("assignment aims at task " + std::to_string(target) +
                             ", not eligible at node " + ev_->node(node_).to_hex());
    attempted |= uint64_t(1) << (it - positions_.begin());
  }
  uint64_t m = attempted;
  while (m) {
    int k = std::countr_zero(m);
    m &= m - 1;
    q_[size_t(k)] = task_success_prob(*inst_, a, positions_[size_t(k)]);
  }
  double stall = exact_mask_prob(attempted, 0, q_);  // P(no progress this round)
  if (stall == 1.0) return inf_value;

  const std::vector<evolution_arc>& arcs = ev_->arcs(node_);
  double sum = 1.0;
  uint64_t s = 0;  // nonempty submasks of `attempted`, increasing
  for (;;) {
    s = (s - attempted) & attempted;
    if (s == 0) break;
    double prob = exact_mask_prob(attempted, s, q_);
    if (prob == 0.0) continue;  // 0 * T is 0 even when T is infinite
    sum += prob * value_at[arcs[s - 1].child];
  }
  return sum / (1.0 - stall);
}

double node_value(const instance& inst, const task_set& executed, const assignment& a,
                  const std::unordered_map<task_set, double, task_set_hash>& child_values) {
  if (int(a.target.size()) != inst.worker_count)
    throw validation_error("assignment has " + std::to_string(a.target.size()) +
                           " targets, expected one per worker (" +
                           std::to_string(inst.worker_count) + ")");
  task_set elig = eligible(inst.g, executed);
  std::vector<int> positions = elig.to_vector();
  if (positions.size() >= 63)
    throw capacity_error("node value: more than 62 eligible tasks");

  uint64_t attempted = 0;
  for (int target : a.target) {
    if (target == idle) continue;
    auto it = std::lower_bound(positions.begin(), positions.end(), target);
    if (it == positions.end() || *it != target)
      throw validation_error("assignment aims at task " + std::to_string(target) +
                             ", not eligible after " + executed.to_hex());
    attempted |= uint64_t(1) << (it - positions.begin());
  }
  std::vector<double> q(positions.size(), 0.0);
  uint64_t m = attempted;
  while (m) {
    int k = std::countr_zero(m);
    m &= m - 1;
    q[size_t(k)] = task_success_prob(inst, a, positions[size_t(k)]);
  }
  double stall = exact_mask_prob(attempted, 0, q);
  if (stall == 1.0) return inf_value;

  double sum = 1.0;
  uint64_t s = 0;
  for (;;) {
    s = (s - attempted) & attempted;
    if (s == 0) break;
    double prob = exact_mask_prob(attempted, s, q);
    if (prob == 0.0) continue;
    task_set child = executed;
    uint64_t bits = s;
    while (bits) {
      int k = std::countr_zero(bits);
      bits &= bits - 1;
      child.set(positions[size_t(k)]);
    }
    auto it = child_values.find(child);
    if (it == child_values.end())
      throw validation_error("node value: no child value for executed set " + child.to_hex());
    sum += prob * it->second;
  }
  return sum / (1.0 - stall);
}

namespace {

// shared body of solve / solve_reference: fill in the best assignment and
// value for one non-sink node, children already final
void solve_node(const instance& inst, const evolution_graph& ev, uint32_t x,
                const solve_options& opts, regimen& reg) {
  node_pricer pricer(inst, ev, x);
  assignment_enumerator en(ev.eligible_at(x), inst.worker_count, opts.allow_idle,
                           opts.assignment_limit);
  assignment a = en.at(0);
  assignment best_a = a;
  double best = inf_value;
  int64_t best_rank = -1;
  int64_t rank = 0;
  do {
    double v = pricer.price(a, reg.value_at);
    if (v < best) {  // strict: ties keep the earliest assignment
      best = v;
      best_rank = rank;
      best_a = a;
    }
    ++rank;
  } while (en.next(a));
  assert(best_rank >= 0 && "a valid instance always has a productive assignment");
  reg.value_at[x] = best;
  if (best_rank >= 0) reg.assignment_at[x] = best_a;
}

// serial pre-pass so capacity problems surface before any parallel region
void check_assignment_capacity(const evolution_graph& ev, int worker_count,
                               const solve_options& opts) {
  for (uint32_t x = 0; x < uint32_t(ev.node_count()); ++x) {
    if (x == ev.sink_id()) continue;
    int r = ev.eligible_at(x).count() + (opts.allow_idle ? 1 : 0);
    int64_t count = worker_count == 0 ? 1 : pow_saturating(r, worker_count);
    if (count > opts.assignment_limit)
      throw capacity_error("node " + ev.node(x).to_hex() + ": " + std::to_string(r) + "^" +
                           std::to_string(worker_count) + " = " + std::to_string(count) +
                           " assignments exceeds the limit " +
                           std::to_string(opts.assignment_limit));
  }
}

regimen make_blank_regimen(std::shared_ptr<const evolution_graph> ev, int worker_count) {
  size_t nodes = size_t(ev->node_count());
  regimen reg;
  reg.evolution = std::move(ev);
  reg.assignment_at.assign(nodes, assignment{std::vector<int>(size_t(worker_count), idle)});
  reg.value_at.assign(nodes, 0.0);
  return reg;
}

} // namespace

regimen solve(const instance& inst, const solve_options& opts) {
  require_valid(inst);
  auto ev = std::make_shared<const evolution_graph>(build_evolution(inst.g, opts.node_limit));
  check_assignment_capacity(*ev, inst.worker_count, opts);
  regimen reg = make_blank_regimen(ev, inst.worker_count);

  // Sweep cardinality layers largest first; every arc leaves its layer, so
  // the nodes of one layer only read finished values and are independent.
  const std::vector<uint32_t>& order = ev->topo_order();
  size_t hi = order.size();
  while (hi > 0) {
    int layer_card = ev->node(order[hi - 1]).count();
    size_t lo = hi;
    while (lo > 0 && ev->node(order[lo - 1]).count() == layer_card) --lo;
#ifdef ROPAS_HAVE_OPENMP
    int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
#endif
    for (int64_t i = int64_t(lo); i < int64_t(hi); ++i) {
      uint32_t x = order[size_t(i)];
      if (x != ev->sink_id()) solve_node(inst, *ev, x, opts, reg);
    }
    hi = lo;
  }
  return reg;
}

regimen solve_reference(const instance& inst, const solve_options& opts) {
  require_valid(inst);
  auto ev = std::make_shared<const evolution_graph>(build_evolution(inst.g, opts.node_limit));
  check_assignment_capacity(*ev, inst.worker_count, opts);
  regimen reg = make_blank_regimen(ev, inst.worker_count);

  const std::vector<uint32_t>& order = ev->topo_order();
  for (size_t i = order.size(); i-- > 0;) {
    uint32_t x = order[i];
    if (x != ev->sink_id()) solve_node(inst, *ev, x, opts, reg);
  }
  return reg;
}

int64_t count_assignments(const evolution_graph& ev, int worker_count, bool allow_idle) {
  int64_t total = 0;
  for (uint32_t x = 0; x < uint32_t(ev.node_count()); ++x) {
    if (x == ev.sink_id()) continue;
    int r = ev.eligible_at(x).count() + (allow_idle ? 1 : 0);
    total = add_saturating(total, worker_count == 0 ? 1 : pow_saturating(r, worker_count));
  }
  return total;
}

} // namespace ropas
