#include "ropas/json_io.hpp"

#include "ropas/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ropas {

using nlohmann::json;

std::string format_double(double v, int significant_digits) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  if (std::isnan(v)) return "\"nan\"";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream body;
  body << in.rdbuf();
  if (in.bad()) throw io_error("error while reading '" + path + "'");
  return body.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw io_error("error while writing '" + path + "'");
}

namespace {

json parse_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string(what) + ": invalid JSON: " + e.what());
  }
}

// strict shape: exactly the listed keys, nothing else
void require_keys(const json& obj, std::initializer_list<const char*> keys, const char* what) {
  if (!obj.is_object()) throw validation_error(std::string(what) + ": expected a JSON object");
  for (const char* key : keys)
    if (!obj.contains(key))
      throw validation_error(std::string(what) + ": missing key \"" + key + "\"");
  for (const auto& item : obj.items()) {
    bool known = std::any_of(keys.begin(), keys.end(),
                             [&](const char* key) { return item.key() == key; });
    if (!known)
      throw validation_error(std::string(what) + ": unknown key \"" + item.key() + "\"");
  }
}

int get_count(const json& obj, const char* key, const char* what) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<int64_t>() < 0 || v.get<int64_t>() > 1'000'000'000)
    throw validation_error(std::string(what) + ": \"" + key +
                           "\" must be a non-negative integer");
  return int(v.get<int64_t>());
}

double get_value(const json& v, const char* what) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "inf") return inf_value;
    if (s == "-inf") return -inf_value;
    throw validation_error(std::string(what) + ": bad value string \"" + s + "\"");
  }
  if (!v.is_number()) throw validation_error(std::string(what) + ": value must be a number");
  return v.get<double>();
}

std::vector<int> get_targets(const json& v, int worker_count, const char* what) {
  if (!v.is_array() || int(v.size()) != worker_count)
    throw validation_error(std::string(what) + ": \"targets\" must list one task per worker (" +
                           std::to_string(worker_count) + ")");
  std::vector<int> targets;
  targets.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number_integer())
      throw validation_error(std::string(what) + ": targets must be integers (-1 idles)");
    int64_t target = e.get<int64_t>();
    if (target < -1 || target > 1'000'000'000)
      throw validation_error(std::string(what) + ": target " + std::to_string(target) +
                             " out of range");
    targets.push_back(int(target));
  }
  return targets;
}

} // namespace

instance parse_instance(const std::string& text) {
  json j = parse_text(text, "instance");
  require_keys(j, {"arcs", "success", "tasks", "workers"}, "instance");
  int tasks = get_count(j, "tasks", "instance");
  int workers = get_count(j, "workers", "instance");

  const json& jarcs = j.at("arcs");
  if (!jarcs.is_array()) throw validation_error("instance: \"arcs\" must be an array");
  std::vector<arc> arcs;
  arcs.reserve(jarcs.size());
  for (const json& e : jarcs) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw validation_error("instance: every arc must be a pair [from, to]");
    arcs.emplace_back(int(e[0].get<int64_t>()), int(e[1].get<int64_t>()));
  }

  const json& jsuccess = j.at("success");
  if (!jsuccess.is_array())
    throw validation_error("instance: \"success\" must be an array of rows");
  std::vector<std::vector<double>> success;
  success.reserve(jsuccess.size());
  for (const json& row : jsuccess) {
    if (!row.is_array())
      throw validation_error("instance: every \"success\" row must be an array");
    std::vector<double> probs;
    probs.reserve(row.size());
    for (const json& p : row) {
      if (!p.is_number())
        throw validation_error("instance: success probabilities must be numbers");
      probs.push_back(p.get<double>());
    }
    success.push_back(std::move(probs));
  }

  instance inst{dag(tasks, std::move(arcs)), workers, std::move(success)};
  require_valid(inst);
  return inst;
}

instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::string instance_to_json(const instance& inst) {
  std::string out = "{\"arcs\":[";
  const std::vector<arc>& arcs = inst.g.arcs();
  for (size_t i = 0; i < arcs.size(); ++i) {
    if (i) out += ",";
    out += "[" + std::to_string(arcs[i].first) + "," + std::to_string(arcs[i].second) + "]";
  }
  out += "],\"success\":[";
  for (int i = 0; i < inst.worker_count; ++i) {
    if (i) out += ",";
    out += "[";
    for (int t = 0; t < inst.task_count(); ++t) {
      if (t) out += ",";
      out += format_double(inst.success[size_t(i)][size_t(t)], 17);
    }
    out += "]";
  }
  out += "],\"tasks\":" + std::to_string(inst.task_count()) +
         ",\"workers\":" + std::to_string(inst.worker_count) + "}";
  return out;
}

regimen parse_regimen(const std::string& text, const instance& inst, int64_t node_limit) {
  json j = parse_text(text, "regimen");
  require_keys(j, {"nodes", "tasks", "workers"}, "regimen");
  if (get_count(j, "tasks", "regimen") != inst.task_count() ||
      get_count(j, "workers", "regimen") != inst.worker_count)
    throw validation_error("regimen: task/worker counts do not match the instance");

  const json& jnodes = j.at("nodes");
  if (!jnodes.is_object()) throw validation_error("regimen: \"nodes\" must be an object");

  auto ev = std::make_shared<const evolution_graph>(build_evolution(inst.g, node_limit));
  regimen reg;
  reg.evolution = ev;
  reg.assignment_at.assign(size_t(ev->node_count()),
                           assignment{std::vector<int>(size_t(inst.worker_count), idle)});
  reg.value_at.assign(size_t(ev->node_count()), 0.0);

  for (const auto& item : jnodes.items()) {  // no keys beyond the real nodes
    task_set executed = task_set::from_hex(item.key(), inst.task_count());
    std::optional<uint32_t> id = ev->find(executed);
    if (!id || executed.to_hex() != item.key())
      throw validation_error("regimen: \"" + item.key() +
                             "\" does not name an evolution node (keys are canonical "
                             "lowercase hex of downward-closed sets)");
  }
  for (uint32_t x = 0; x < uint32_t(ev->node_count()); ++x) {
    std::string key = ev->node(x).to_hex();
    if (!jnodes.contains(key))
      throw validation_error("regimen: missing node \"" + key + "\"");
    const json& entry = jnodes.at(key);
    std::string what = "regimen node \"" + key + "\"";
    require_keys(entry, {"targets", "value"}, what.c_str());
    std::vector<int> targets = get_targets(entry.at("targets"), inst.worker_count, what.c_str());
    for (int target : targets)
      if (target != idle && !ev->eligible_at(x).test(target))
        throw validation_error(what + ": task " + std::to_string(target) +
                               " is not eligible there");
    reg.assignment_at[x].target = std::move(targets);
    reg.value_at[x] = get_value(entry.at("value"), what.c_str());
  }
  return reg;
}

regimen load_regimen(const std::string& path, const instance& inst, int64_t node_limit) {
  return parse_regimen(read_file(path), inst, node_limit);
}

std::string regimen_to_json(const regimen& reg) {
  if (!reg.evolution) throw validation_error("regimen has no evolution graph");
  const evolution_graph& ev = *reg.evolution;

  std::vector<std::pair<std::string, uint32_t>> keyed;
  keyed.reserve(size_t(ev.node_count()));
  for (uint32_t x = 0; x < uint32_t(ev.node_count()); ++x) keyed.emplace_back(ev.node(x).to_hex(), x);
  std::sort(keyed.begin(), keyed.end());  // plain string order, like a JSON object map

  std::string out = "{\"nodes\":{";
  for (size_t i = 0; i < keyed.size(); ++i) {
    if (i) out += ",";
    out += "\"" + keyed[i].first + "\":{\"targets\":[";
    const assignment& a = reg.assignment_at[keyed[i].second];
    for (size_t w = 0; w < a.target.size(); ++w) {
      if (w) out += ",";
      out += std::to_string(a.target[w]);
    }
    out += "],\"value\":" + format_double(reg.value_at[keyed[i].second], 17) + "}";
  }
  out += "},\"tasks\":" + std::to_string(ev.graph().task_count()) +
         ",\"workers\":" + std::to_string(int(reg.assignment_at.empty()
                                                  ? 0
                                                  : reg.assignment_at[0].target.size())) +
         "}";
  return out;
}

certificate_schedule parse_certificate(const std::string& text) {
  json j = parse_text(text, "certificate");
  require_keys(j, {"claimed_rounds", "rounds"}, "certificate");
  const json& claimed = j.at("claimed_rounds");
  if (!claimed.is_number_integer() || claimed.get<int64_t>() < 0)
    throw validation_error("certificate: \"claimed_rounds\" must be a non-negative integer");
  const json& jrounds = j.at("rounds");
  if (!jrounds.is_array())
    throw validation_error("certificate: \"rounds\" must be an array of rounds");

  certificate_schedule cert;
  cert.claimed_rounds = claimed.get<int64_t>();
  cert.rounds.reserve(jrounds.size());
  size_t workers = 0;
  for (size_t r = 0; r < jrounds.size(); ++r) {
    std::string what = "certificate round " + std::to_string(r + 1);
    if (!jrounds[r].is_array())
      throw validation_error(what + ": must be an array of targets");
    if (r == 0) workers = jrounds[r].size();
    std::vector<int> targets = get_targets(jrounds[r], int(workers), what.c_str());
    cert.rounds.push_back(assignment{std::move(targets)});
  }
  return cert;
}

certificate_schedule load_certificate(const std::string& path) {
  return parse_certificate(read_file(path));
}

std::string certificate_to_json(const certificate_schedule& cert) {
  std::string out = "{\"claimed_rounds\":" + std::to_string(cert.claimed_rounds) + ",\"rounds\":[";
  for (size_t r = 0; r < cert.rounds.size(); ++r) {
    if (r) out += ",";
    out += "[";
    for (size_t i = 0; i < cert.rounds[r].target.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(cert.rounds[r].target[i]);
    }
    out += "]";
  }
  out += "]}";
  return out;
}

std::string sim_report_to_json(const sim_report& report) {
  char seed_buf[32];
  std::snprintf(seed_buf, sizeof seed_buf, "%" PRIu64, report.seed);
  return "{\"max\":" + format_double(report.max, 17) +
         ",\"mean\":" + format_double(report.mean, 17) +
         ",\"min\":" + format_double(report.min, 17) + ",\"seed\":" + seed_buf +
         ",\"std_error\":" + format_double(report.std_error, 17) +
         ",\"trials\":" + std::to_string(report.trials) + "}";
}

} // namespace ropas
