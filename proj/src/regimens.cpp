#include "ropas/regimens.hpp"

#include "ropas/errors.hpp"

namespace ropas {

assignment greedy_marginal(const instance& inst, const task_set& executed) {
  task_set elig = eligible(inst.g, executed);
  assignment a{std::vector<int>(size_t(inst.worker_count), idle)};
  if (elig.empty()) return a;
  for (int i = 0; i < inst.worker_count; ++i) {
    int choice = -1;
    double best_gain = -1.0;
    elig.for_each([&](int j) {
      double gain = inst.success[size_t(i)][size_t(j)];
      for (int w = 0; w < i; ++w)
        if (a.target[size_t(w)] == j) gain *= 1.0 - inst.success[size_t(w)][size_t(j)];
      if (gain > best_gain) {  // strict: ties keep the lowest task id
        best_gain = gain;
        choice = j;
      }
    });
    a.target[size_t(i)] = choice;
  }
  return a;
}

policy_regimen greedy_marginal_policy() {
  return {"greedy_marginal", [](const instance& inst, const task_set& executed) {
            return greedy_marginal(inst, executed);
          }};
}

std::optional<policy_regimen> find_policy(const std::string& name) {
  if (name == "greedy_marginal") return greedy_marginal_policy();
  return std::nullopt;
}

sim_report simulate_policy(const instance& inst, const policy_regimen& policy, int64_t trials,
                           uint64_t seed, int threads, int64_t round_cap) {
  require_valid(inst);
  if (!policy.rule) throw validation_error("policy '" + policy.name + "' has no rule");
  task_set start(inst.task_count());
  auto assign_at = [&](const task_set& executed) { return policy.rule(inst, executed); };
  return run_trials(inst, assign_at, start, trials, seed, threads, round_cap);
}

regimen materialize(const instance& inst, const policy_regimen& policy, int64_t node_limit) {
  require_valid(inst);
  if (!policy.rule) throw validation_error("policy '" + policy.name + "' has no rule");
  auto ev = std::make_shared<const evolution_graph>(build_evolution(inst.g, node_limit));
  regimen reg;
  reg.evolution = ev;
  reg.assignment_at.reserve(size_t(ev->node_count()));
  for (uint32_t x = 0; x < uint32_t(ev->node_count()); ++x)
    reg.assignment_at.push_back(policy.rule(inst, ev->node(x)));
  reg.value_at = evaluate_all(inst, reg);
  return reg;
}

} // namespace ropas
