#include "ropas/stochastic.hpp"

#include "ropas/errors.hpp"

#include <cmath>

namespace ropas {

std::vector<std::string> validate(const instance& inst) {
  std::vector<std::string> problems;
  const int t = inst.task_count();
  const int n = inst.worker_count;
  if (n < 0) problems.push_back("worker count is negative");
  if (int(inst.success.size()) != n) {
    problems.push_back("success matrix has " + std::to_string(inst.success.size()) +
                       " rows, expected one per worker (" + std::to_string(n) + ")");
    return problems;  // dimensions are wrong; nothing below is meaningful
  }
  bool shape_ok = true;
  for (int i = 0; i < n; ++i) {
    if (int(inst.success[size_t(i)].size()) != t) {
      problems.push_back("success row " + std::to_string(i) + " has " +
                         std::to_string(inst.success[size_t(i)].size()) +
                         " entries, expected one per task (" + std::to_string(t) + ")");
      shape_ok = false;
    }
  }
  if (!shape_ok) return problems;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < t; ++j) {
      double p = inst.success[size_t(i)][size_t(j)];
      if (std::isnan(p) || p < 0.0 || p > 1.0)
        problems.push_back("success[" + std::to_string(i) + "][" + std::to_string(j) +
                           "] = " + std::to_string(p) + " is not a probability");
    }
  }
  for (int j = 0; j < t; ++j) {
    bool executable = false;
    for (int i = 0; i < n && !executable; ++i)
      executable = inst.success[size_t(i)][size_t(j)] > 0.0;
    if (!executable)
      problems.push_back("task " + std::to_string(j) +
                         ": no worker has positive success probability");
  }
  return problems;
}

void require_valid(const instance& inst) {
  std::vector<std::string> problems = validate(inst);
  if (problems.empty()) return;
  std::string what = "invalid instance:";
  for (const std::string& p : problems) what += "\n  - " + p;
  throw validation_error(what);
}

double task_success_prob(const instance& inst, const assignment& a, int task) {
  double fail = 1.0;
  for (size_t i = 0; i < a.target.size(); ++i)
    if (a.target[i] == task) fail *= 1.0 - inst.success[i][size_t(task)];
  return 1.0 - fail;
}

task_set assigned_task_set(const assignment& a, int task_count) {
  task_set attempted(task_count);
  for (int target : a.target)
    if (target != idle) attempted.set(target);  // set() rejects bad ids
  return attempted;
}

double exact_set_prob(const instance& inst, const assignment& a, const task_set& done) {
  task_set attempted = assigned_task_set(a, inst.task_count());
  if (!attempted.contains(done)) return 0.0;
  double prob = 1.0;
  attempted.for_each([&](int j) {
    double q = task_success_prob(inst, a, j);
    prob *= done.test(j) ? q : 1.0 - q;
  });
  return prob;
}

double chain_upper_bound(const instance& inst) {
  double bound = 0.0;
  for (int j = 0; j < inst.task_count(); ++j) {
    double fail = 1.0;
    for (int i = 0; i < inst.worker_count; ++i)
      fail *= 1.0 - inst.success[size_t(i)][size_t(j)];
    bound += 1.0 / (1.0 - fail);  // IEEE: +inf when the task is unexecutable
  }
  return bound;
}

} // namespace ropas
