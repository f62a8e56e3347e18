#include "subprocess.hpp"

#include "ropas/gadgets.hpp"
#include "ropas/json_io.hpp"

#include <doctest.h>

#include <string>

using namespace ropas;
using testing::run_cli;
using testing::temp_path;
using testing::write_text;

namespace {

// two coin-flip workers, two isolated tasks: the canonical tiny input
const std::string& two_task_path() {
  static const std::string path = [] {
    std::string p = temp_path("two_task.json");
    write_text(p, instance_to_json(two_task_instance({0.5, 0.5})));
    return p;
  }();
  return path;
}

const std::string& diamond_path() {
  static const std::string path = [] {
    instance inst;
    inst.g = dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    inst.worker_count = 1;
    inst.success = {{0.5, 0.5, 0.5, 0.5}};
    std::string p = temp_path("diamond.json");
    write_text(p, instance_to_json(inst));
    return p;
  }();
  return path;
}

} // namespace

TEST_CASE("solve: summary line and exit code") {
  testing::cmd_result r = run_cli("solve --instance " + two_task_path());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"arcs\":5,\"assignments\":6,\"nodes\":4,\"value\":2.22222222222}\n");
  CHECK(r.err.empty());
}

TEST_CASE("solve --out: the written regimen evaluates back to the optimum") {
  std::string out = temp_path("reg.json");
  testing::cmd_result r = run_cli("solve --instance " + two_task_path() + " --out " + out);
  REQUIRE(r.exit_code == 0);
  instance inst = load_instance(two_task_path());
  regimen reg = load_regimen(out, inst);
  CHECK(evaluate(inst, reg, task_set(2)) == doctest::Approx(20.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("solve: thread count cannot change the output file") {
  std::string one = temp_path("reg_t1.json");
  std::string four = temp_path("reg_t4.json");
  REQUIRE(run_cli("solve --instance " + diamond_path() + " --threads 1 --out " + one).exit_code == 0);
  REQUIRE(run_cli("solve --instance " + diamond_path() + " --threads 4 --out " + four).exit_code == 0);
  CHECK(testing::read_text(one) == testing::read_text(four));
}

TEST_CASE("eval --regimen reports the stored strategy's value") {
  std::string out = temp_path("reg_eval.json");
  REQUIRE(run_cli("solve --instance " + two_task_path() + " --out " + out).exit_code == 0);
  testing::cmd_result r =
      run_cli("eval --instance " + two_task_path() + " --regimen " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"value\":2.22222222222}\n");
}

TEST_CASE("eval demands exactly one of --regimen and --certificate") {
  testing::cmd_result neither = run_cli("eval --instance " + two_task_path());
  CHECK(neither.exit_code == 2);
  std::string reg = temp_path("reg_both.json");
  REQUIRE(run_cli("solve --instance " + two_task_path() + " --out " + reg).exit_code == 0);
  testing::cmd_result both = run_cli("eval --instance " + two_task_path() + " --regimen " +
                                     reg + " --certificate " + reg);
  CHECK(both.exit_code == 2);
}

TEST_CASE("width prints the antichain number") {
  testing::cmd_result r = run_cli("width --instance " + diamond_path());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"width\":2}\n");
}

TEST_CASE("simulate: seeded runs repeat byte for byte") {
  std::string cmd = "simulate --instance " + two_task_path() +
                    " --policy greedy_marginal --trials 500 --seed 77";
  testing::cmd_result a = run_cli(cmd);
  testing::cmd_result b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"mean\":") != std::string::npos);
  CHECK(a.out.find("\"seed\":77") != std::string::npos);

  std::string reg = temp_path("reg_sim.json");
  REQUIRE(run_cli("solve --instance " + two_task_path() + " --out " + reg).exit_code == 0);
  testing::cmd_result c = run_cli("simulate --instance " + two_task_path() + " --regimen " +
                                  reg + " --trials 500 --seed 77");
  CHECK(c.exit_code == 0);
  CHECK(c.out.find("\"trials\":500") != std::string::npos);
}

TEST_CASE("simulate: --seed is mandatory, policies must exist") {
  testing::cmd_result no_seed = run_cli("simulate --instance " + two_task_path() +
                                        " --policy greedy_marginal --trials 10");
  CHECK(no_seed.exit_code == 2);
  testing::cmd_result bad = run_cli("simulate --instance " + two_task_path() +
                                    " --policy nope --trials 10 --seed 1");
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("greedy_marginal") != std::string::npos);  // names the options
}

TEST_CASE("gadget two-worker: instance plus certificate, replayed through eval") {
  std::string inst_path = temp_path("tw.json");
  std::string cert_path = temp_path("tw_cert.json");
  testing::cmd_result r = run_cli("gadget two-worker --k 1 --out-instance " + inst_path +
                                  " --out-certificate " + cert_path);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"arcs\":45,\"rounds\":12,\"tasks\":23}\n");

  testing::cmd_result replay =
      run_cli("eval --instance " + inst_path + " --certificate " + cert_path);
  CHECK(replay.exit_code == 0);
  CHECK(replay.out == "{\"ok\":true,\"rounds\":12}\n");
}

TEST_CASE("gadget inapprox: the four-round certificate") {
  std::string inst_path = temp_path("ia.json");
  std::string cert_path = temp_path("ia_cert.json");
  testing::cmd_result r = run_cli("gadget inapprox --k 1 --out-instance " + inst_path +
                                  " --out-certificate " + cert_path);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"arcs\":18,\"rounds\":4,\"tasks\":16}\n");
  testing::cmd_result replay =
      run_cli("eval --instance " + inst_path + " --certificate " + cert_path);
  CHECK(replay.out == "{\"ok\":true,\"rounds\":4}\n");
}

TEST_CASE("gadget: explicit subsets, no-instances have null rounds") {
  std::string inst_path = temp_path("tw_no.json");
  // two-element subsets double the group-to-gate arcs: 18+18+12+6
  testing::cmd_result r = run_cli("gadget two-worker --k 1 --subsets '1,2;2,3;1,3'"
                                  " --out-instance " + inst_path);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"arcs\":54,\"rounds\":null,\"tasks\":23}\n");

  // asking for a certificate it cannot produce is an error
  std::string cert_path = temp_path("tw_no_cert.json");
  testing::cmd_result want_cert =
      run_cli("gadget two-worker --k 1 --subsets '1,2;2,3;1,3' --out-instance " + inst_path +
              " --out-certificate " + cert_path);
  CHECK(want_cert.exit_code == 2);
}

TEST_CASE("gadget: an explicit witness skips the search") {
  std::string inst_path = temp_path("tw_w.json");
  std::string cert_path = temp_path("tw_w_cert.json");
  testing::cmd_result r = run_cli("gadget two-worker --k 1 --witness '0,2' --out-instance " +
                                  inst_path + " --out-certificate " + cert_path);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"arcs\":45,\"rounds\":12,\"tasks\":23}\n");
}

TEST_CASE("dot renders the evolution graph") {
  testing::cmd_result r = run_cli("dot --instance " + two_task_path());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("digraph") != std::string::npos);
  CHECK(r.out.find("\"00\"") != std::string::npos);
  CHECK(r.out.find("\"11\"") != std::string::npos);
}

TEST_CASE("exit codes: io, validation, capacity") {
  CHECK(run_cli("solve --instance /nonexistent.json").exit_code == 1);

  std::string bad = temp_path("bad.json");
  write_text(bad, "{\"arcs\":");
  CHECK(run_cli("solve --instance " + bad).exit_code == 2);

  testing::cmd_result capped =
      run_cli("solve --instance " + two_task_path() + " --node-limit 2");
  CHECK(capped.exit_code == 3);
  CHECK(capped.err.find("node") != std::string::npos);

  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("--help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("solve --help").exit_code == 0);
}
