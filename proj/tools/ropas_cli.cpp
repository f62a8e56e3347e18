#include "ropas/errors.hpp"
#include "ropas/evaluator.hpp"
#include "ropas/gadgets.hpp"
#include "ropas/json_io.hpp"
#include "ropas/regimens.hpp"
#include "ropas/solver.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ropas;

std::vector<int> parse_int_list(const std::string& text, char sep, const char* what) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find(sep, pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    size_t first = item.find_first_not_of(" \t");
    size_t last = item.find_last_not_of(" \t");
    if (first == std::string::npos)
      throw validation_error(std::string(what) + ": empty entry in \"" + text + "\"");
    item = item.substr(first, last - first + 1);
    try {
      size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw validation_error(std::string(what) + ": \"" + item + "\" is not an integer");
    }
    pos = end + 1;
  }
  return out;
}

subset_system parse_subsets(int k, const std::string& text) {
  std::vector<std::vector<int>> subsets;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    subsets.push_back(parse_int_list(text.substr(pos, end - pos), ',', "subsets"));
    pos = end + 1;
  }
  return make_subset_system(k, std::move(subsets));
}

void cmd_solve(const std::string& instance_path, const std::string& out_path, bool allow_idle,
               int64_t node_limit, int64_t assignment_limit, int threads) {
  instance inst = load_instance(instance_path);
  solve_options opts;
  opts.allow_idle = allow_idle;
  opts.node_limit = node_limit;
  opts.assignment_limit = assignment_limit;
  opts.threads = threads;
  regimen reg = solve(inst, opts);
  const evolution_graph& ev = *reg.evolution;
  if (!out_path.empty()) write_file(out_path, regimen_to_json(reg) + "\n");
  std::cout << "{\"arcs\":" << ev.arc_count()
            << ",\"assignments\":" << count_assignments(ev, inst.worker_count, allow_idle)
            << ",\"nodes\":" << ev.node_count()
            << ",\"value\":" << format_double(reg.value_at[ev.source_id()], 12) << "}\n";
}

void cmd_eval(const std::string& instance_path, const std::string& regimen_path,
              const std::string& certificate_path, int64_t node_limit) {
  instance inst = load_instance(instance_path);
  if (regimen_path.empty() == certificate_path.empty())
    throw validation_error("eval needs exactly one of --regimen or --certificate");
  if (!regimen_path.empty()) {
    regimen reg = load_regimen(regimen_path, inst, node_limit);
    task_set start(inst.task_count());
    std::cout << "{\"value\":" << format_double(evaluate(inst, reg, start), 12) << "}\n";
    return;
  }
  certificate_schedule cert = load_certificate(certificate_path);
  replay_result res = replay_certificate(inst, cert);
  std::cerr << res.message << "\n";
  std::cout << "{\"ok\":" << (res.ok ? "true" : "false") << ",\"rounds\":" << res.rounds_used
            << "}\n";
}

void cmd_simulate(const std::string& instance_path, const std::string& regimen_path,
                  const std::string& policy_name, int64_t trials, uint64_t seed, int threads,
                  int64_t round_cap, int64_t node_limit) {
  instance inst = load_instance(instance_path);
  if (regimen_path.empty() == policy_name.empty())
    throw validation_error("simulate needs exactly one of --regimen or --policy");
  sim_report report;
  if (!regimen_path.empty()) {
    regimen reg = load_regimen(regimen_path, inst, node_limit);
    task_set start(inst.task_count());
    report = simulate(inst, reg, start, trials, seed, threads, round_cap);
  } else {
    std::optional<policy_regimen> policy = find_policy(policy_name);
    if (!policy)
      throw validation_error("unknown policy \"" + policy_name +
                             "\" (available: greedy_marginal)");
    report = simulate_policy(inst, *policy, trials, seed, threads, round_cap);
  }
  std::cout << sim_report_to_json(report) << "\n";
}

void cmd_width(const std::string& instance_path) {
  instance inst = load_instance(instance_path);
  std::cout << "{\"width\":" << width(inst.g) << "}\n";
}

void cmd_gadget(const std::string& kind, int k, const std::string& subsets_text,
                const std::string& witness_text, const std::string& out_instance,
                const std::string& out_certificate) {
  subset_system sys = subsets_text.empty() ? singleton_system(k) : parse_subsets(k, subsets_text);
  std::optional<std::vector<int>> witness;
  if (!witness_text.empty()) witness = parse_int_list(witness_text, ',', "witness");

  gadget g;
  if (kind == "two-worker") {
    g = two_worker_gadget(sys, std::move(witness));
  } else if (kind == "inapprox") {
    g = inapprox_gadget(sys, std::move(witness));
  } else {
    throw validation_error("unknown gadget \"" + kind + "\" (two-worker or inapprox)");
  }

  write_file(out_instance, instance_to_json(g.inst) + "\n");
  if (!out_certificate.empty()) {
    if (!g.schedule)
      throw validation_error("no witness known (none given, none found), cannot emit a schedule");
    write_file(out_certificate, certificate_to_json(*g.schedule) + "\n");
  }
  std::cout << "{\"arcs\":" << g.inst.g.arcs().size() << ",\"rounds\":"
            << (g.schedule ? std::to_string(g.schedule->claimed_rounds) : "null")
            << ",\"tasks\":" << g.inst.task_count() << "}\n";
}

void cmd_dot(const std::string& instance_path, int64_t node_limit) {
  instance inst = load_instance(instance_path);
  evolution_graph ev = build_evolution(inst.g, node_limit);
  write_dot(ev, std::cout);
}

int run(int argc, char** argv) {
  CLI::App app{"exact solving, evaluation and simulation of dag scheduling on unreliable workers"};
  app.require_subcommand(1);

  std::string instance_path, out_path, regimen_path, certificate_path, policy_name;
  std::string gadget_kind, subsets_text, witness_text, out_instance, out_certificate;
  bool allow_idle = false;
  int64_t node_limit = default_node_limit;
  int64_t assignment_limit = default_assignment_limit;
  int64_t trials = 0, round_cap = default_round_cap;
  int threads = 0, k = 0;
  uint64_t seed = 0;

  CLI::App* solve = app.add_subcommand("solve", "compute an optimal regimen");
  solve->add_option("--instance", instance_path, "instance file")->required();
  solve->add_option("--out", out_path, "write the optimal regimen here");
  solve->add_flag("--allow-idle", allow_idle, "also consider assignments that rest workers");
  solve->add_option("--node-limit", node_limit, "evolution-graph node cap");
  solve->add_option("--assignment-limit", assignment_limit, "per-node assignment cap");
  solve->add_option("--threads", threads, "worker threads (0 = all)");
  solve->callback([&] {
    cmd_solve(instance_path, out_path, allow_idle, node_limit, assignment_limit, threads);
  });

  CLI::App* eval = app.add_subcommand("eval", "expected rounds of a regimen, or replay a schedule");
  eval->add_option("--instance", instance_path, "instance file")->required();
  eval->add_option("--regimen", regimen_path, "regimen file to evaluate");
  eval->add_option("--certificate", certificate_path, "schedule file to replay");
  eval->add_option("--node-limit", node_limit, "evolution-graph node cap");
  eval->callback([&] { cmd_eval(instance_path, regimen_path, certificate_path, node_limit); });

  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo runs of a regimen or policy");
  simulate->add_option("--instance", instance_path, "instance file")->required();
  simulate->add_option("--regimen", regimen_path, "regimen file to follow");
  simulate->add_option("--policy", policy_name, "built-in policy name");
  simulate->add_option("--trials", trials, "number of runs")->required();
  simulate->add_option("--seed", seed, "base seed; trial r draws from stream r")->required();
  simulate->add_option("--threads", threads, "worker threads (0 = all)");
  simulate->add_option("--round-cap", round_cap, "abort a trial after this many rounds");
  simulate->add_option("--node-limit", node_limit, "evolution-graph node cap");
  simulate->callback([&] {
    cmd_simulate(instance_path, regimen_path, policy_name, trials, seed, threads, round_cap,
                 node_limit);
  });

  CLI::App* width_cmd = app.add_subcommand("width", "antichain width of the instance dag");
  width_cmd->add_option("--instance", instance_path, "instance file")->required();
  width_cmd->callback([&] { cmd_width(instance_path); });

  CLI::App* gadget_cmd = app.add_subcommand("gadget", "emit a reduction instance");
  gadget_cmd->add_option("kind", gadget_kind, "two-worker or inapprox")->required();
  gadget_cmd->add_option("--k", k, "reduction size parameter")->required();
  gadget_cmd->add_option("--subsets", subsets_text,
                         "subset system, e.g. \"1,2;2,3;1,3\" (default: singletons)");
  gadget_cmd->add_option("--witness", witness_text, "0-based subset indices, e.g. \"0,1\"");
  gadget_cmd->add_option("--out-instance", out_instance, "instance file to write")->required();
  gadget_cmd->add_option("--out-certificate", out_certificate, "schedule file to write");
  gadget_cmd->callback([&] {
    cmd_gadget(gadget_kind, k, subsets_text, witness_text, out_instance, out_certificate);
  });

  CLI::App* dot = app.add_subcommand("dot", "evolution graph as Graphviz text");
  dot->add_option("--instance", instance_path, "instance file")->required();
  dot->add_option("--node-limit", node_limit, "evolution-graph node cap");
  dot->callback([&] { cmd_dot(instance_path, node_limit); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a validation failure
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ropas::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ropas::capacity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ropas::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
