#pragma once

#include "ropas/evaluator.hpp"

#include <functional>
#include <optional>
#include <string>

namespace ropas {

// a strategy given as a rule instead of a table: maps the executed set to
// this round's assignment
struct policy_regimen {
  std::string name;
  std::function<assignment(const instance&, const task_set&)> rule;
};

// One round of greedy choices: workers in id order, each aiming at the
// eligible task with the largest marginal completion gain
//   success[i][j] * prod over earlier workers w already on j of (1 - success[w][j]),
// lowest task id on ties.  Nobody idles while work is eligible.
assignment greedy_marginal(const instance& inst, const task_set& executed);

// greedy_marginal packaged under its lookup name
policy_regimen greedy_marginal_policy();

// policy registry for the command line; empty when the name is unknown
std::optional<policy_regimen> find_policy(const std::string& name);

// runs the common trial engine on a policy, starting from the empty set
sim_report simulate_policy(const instance& inst, const policy_regimen& policy, int64_t trials,
                           uint64_t seed, int threads = 0,
                           int64_t round_cap = default_round_cap);

// tabulates the policy over every evolution node and fills in its values
regimen materialize(const instance& inst, const policy_regimen& policy,
                    int64_t node_limit = default_node_limit);

} // namespace ropas
