#include "ropas/evaluator.hpp"

#include "ropas/errors.hpp"
#include "ropas/rng.hpp"

#include <cmath>
#include <exception>
#include <string>

#ifdef ROPAS_HAVE_OPENMP
#include <omp.h>
#endif

namespace ropas {

namespace {

void validate_regimen(const instance& inst, const regimen& reg) {
  if (!reg.evolution) throw validation_error("regimen has no evolution graph");
  if (!(reg.graph() == inst.g))
    throw validation_error("regimen was built for a different dag");
  size_t nodes = size_t(reg.evolution->node_count());
  // value_at is never read here, so a still-unfilled table is fine
  if (reg.assignment_at.size() != nodes || (!reg.value_at.empty() && reg.value_at.size() != nodes))
    throw validation_error("regimen tables do not cover every evolution node");
}

// every target must be eligible where it is used; checked once up front so
// the per-trial loops cannot fail on a malformed regimen
void validate_targets(const instance& inst, const regimen& reg) {
  const evolution_graph& ev = *reg.evolution;
  for (uint32_t x = 0; x < uint32_t(ev.node_count()); ++x) {
    const assignment& a = reg.assignment_at[x];
    if (int(a.target.size()) != inst.worker_count)
      throw validation_error("node " + ev.node(x).to_hex() + ": assignment has " +
                             std::to_string(a.target.size()) + " targets, expected " +
                             std::to_string(inst.worker_count));
    for (int target : a.target)
      if (target != idle && !ev.eligible_at(x).test(target))
        throw validation_error("node " + ev.node(x).to_hex() + ": task " +
                               std::to_string(target) + " is not eligible there");
  }
}

} // namespace

std::vector<double> evaluate_all(const instance& inst, const regimen& reg) {
  require_valid(inst);
  validate_regimen(inst, reg);
  const evolution_graph& ev = *reg.evolution;
  std::vector<double> values(size_t(ev.node_count()), 0.0);
  const std::vector<uint32_t>& order = ev.topo_order();
  for (size_t i = order.size(); i-- > 0;) {
    uint32_t x = order[i];
    if (x == ev.sink_id()) continue;
    node_pricer pricer(inst, ev, x);
    values[x] = pricer.price(reg.assignment_at[x], values);
  }
  return values;
}

double evaluate(const instance& inst, const regimen& reg, const task_set& start) {
  std::vector<double> values = evaluate_all(inst, reg);
  return values[reg.evolution->id_of(start)];
}

regimen chain_regimen(const instance& inst, int64_t node_limit) {
  require_valid(inst);
  auto ev = std::make_shared<const evolution_graph>(build_evolution(inst.g, node_limit));
  regimen reg;
  reg.evolution = ev;
  reg.assignment_at.assign(size_t(ev->node_count()),
                           assignment{std::vector<int>(size_t(inst.worker_count), idle)});
  for (uint32_t x = 0; x < uint32_t(ev->node_count()); ++x) {
    if (x == ev->sink_id()) continue;
    int target = ev->eligible_at(x).find_first();
    for (int& t : reg.assignment_at[x].target) t = target;
  }
  reg.value_at = evaluate_all(inst, reg);
  return reg;
}

sim_report run_trials(const instance& inst,
                      const std::function<assignment(const task_set&)>& assign_at,
                      const task_set& start, int64_t trials, uint64_t seed, int threads,
                      int64_t round_cap) {
  if (trials < 1) throw validation_error("simulation needs at least one trial");
  if (round_cap < 1) throw validation_error("round cap must be positive");
  const int t = inst.task_count();
  task_set full(t);
  for (int j = 0; j < t; ++j) full.set(j);

  std::vector<int64_t> rounds_of(size_t(trials), 0);

  // run one trial; throws surface after the loop so parallel runs are safe
  auto one_trial = [&](int64_t r) {
    splitmix64 rng = splitmix64::stream(seed, uint64_t(r));
    task_set executed = start;
    int64_t rounds = 0;
    while (!(executed == full)) {
      if (rounds >= round_cap)
        throw capacity_error("trial " + std::to_string(r) + " passed the round cap " +
                             std::to_string(round_cap));
      assignment a = assign_at(executed);
      if (int(a.target.size()) != inst.worker_count)
        throw validation_error("assignment has " + std::to_string(a.target.size()) +
                               " targets, expected " + std::to_string(inst.worker_count));
      ++rounds;
      task_set next = executed;
      for (int i = 0; i < inst.worker_count; ++i) {
        int j = a.target[size_t(i)];
        if (j == idle) continue;
        if (j < 0 || j >= t || executed.test(j))
          throw validation_error("worker " + std::to_string(i) + " aimed at task " +
                                 std::to_string(j) + ", not eligible after " +
                                 executed.to_hex());
        // simultaneous round: everyone assigned draws, in worker-id order
        double u = rng.next_double();
        if (u < inst.success[size_t(i)][size_t(j)]) next.set(j);
      }
      executed = next;
    }
    rounds_of[size_t(r)] = rounds;
  };

  // keep the error of the smallest failing trial: deterministic whichever
  // thread count ran the loop
  int64_t bad_trial = -1;
  std::exception_ptr error;
#ifdef ROPAS_HAVE_OPENMP
  int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
  for (int64_t r = 0; r < trials; ++r) {
    try {
      one_trial(r);
    } catch (...) {
#ifdef ROPAS_HAVE_OPENMP
#pragma omp critical(ropas_trial_error)
#endif
      if (bad_trial == -1 || r < bad_trial) {
        bad_trial = r;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);

  double sum = 0.0, sum_sq = 0.0;
  int64_t lo = rounds_of[0], hi = rounds_of[0];
  for (int64_t r : rounds_of) {
    sum += double(r);
    sum_sq += double(r) * double(r);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  double mean = sum / double(trials);
  double variance = trials > 1 ? (sum_sq - sum * mean) / double(trials - 1) : 0.0;
  if (variance < 0.0) variance = 0.0;  // rounding guard
  sim_report report;
  report.trials = trials;
  report.mean = mean;
  report.std_error = std::sqrt(variance / double(trials));
  report.min = double(lo);
  report.max = double(hi);
  report.seed = seed;
  return report;
}

sim_report simulate(const instance& inst, const regimen& reg, const task_set& start,
                    int64_t trials, uint64_t seed, int threads, int64_t round_cap) {
  require_valid(inst);
  validate_regimen(inst, reg);
  validate_targets(inst, reg);
  const evolution_graph& ev = *reg.evolution;
  ev.id_of(start);  // start must name a real state
  auto assign_at = [&](const task_set& executed) { return reg.assignment_at[ev.id_of(executed)]; };
  return run_trials(inst, assign_at, start, trials, seed, threads, round_cap);
}

} // namespace ropas
