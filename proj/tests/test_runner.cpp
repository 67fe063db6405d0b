#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gpttomo/runner.hpp"

using namespace gpttomo;
using nlohmann::json;

namespace {

json strip_timestamp(json j) {
  j.erase("generated_at");
  return j;
}

}  // namespace

TEST_CASE("decompose reports the dimension signature") {
  Command cmd;
  cmd.verb = "decompose";
  cmd.theory = "two-rebit";
  const RunResult r = run(cmd);
  CHECK(r.exit_code == 0);
  CHECK(r.output["schema"] == "gpt-tomo/1");
  CHECK(r.output["dims"]["total"] == 10);
  CHECK(r.output["dims"]["ab_tensor"] == 9);
  CHECK(r.output["dims"]["h_state"] == 1);
  CHECK(r.output["tomographically_local"] == false);
}

TEST_CASE("classify emits the documented flags") {
  Command cmd;
  cmd.verb = "classify";
  cmd.theory = "two-rebit";
  cmd.state_name = "omega-plus";
  const RunResult r = run(cmd);
  CHECK(r.exit_code == 0);
  CHECK(r.output["separable"] == false);
  CHECK(r.output["has_tl"] == false);
  CHECK(r.output["has_tnl"] == true);
}

TEST_CASE("classify accepts inline state json") {
  Command cmd;
  cmd.verb = "classify";
  cmd.theory = "two-rebit";
  cmd.state_json = "[1,0,0,0,0,0,0,0,0,0]";
  const RunResult r = run(cmd);
  CHECK(r.exit_code == 0);
  CHECK(r.output["separable"] == true);
}

TEST_CASE("unknown selectors exit with a usage error") {
  Command cmd;
  cmd.verb = "classify";
  cmd.theory = "no-such-theory";
  CHECK(run(cmd).exit_code == 1);

  cmd.theory = "two-rebit";
  cmd.state_name = "no-such-state";
  CHECK(run(cmd).exit_code == 1);

  Command bad_demo;
  bad_demo.verb = "demo";
  bad_demo.demo_name = "no-such-demo";
  CHECK(run(bad_demo).exit_code == 1);
}

TEST_CASE("demo verdicts map to exit codes") {
  Command cmd;
  cmd.verb = "demo";
  cmd.demo_name = "locc-decode";
  cmd.bit = 1;
  const RunResult r = run(cmd);
  CHECK(r.exit_code == 0);
  CHECK(r.output["verdict"] == "pass");
  CHECK(r.output["decoded"] == 1);

  Command bct;
  bct.verb = "demo";
  bct.demo_name = "secret-share";
  bct.theory = "bct";
  const RunResult r2 = run(bct);
  CHECK(r2.exit_code == 2);
  CHECK(r2.output["verdict"] == "fail");
  CHECK(r2.output["conditions"]["remote_implementation"] == false);
}

TEST_CASE("steering and teleport demos refuse states with local-span entanglement") {
  for (const char* demo : {"steering", "teleport"}) {
    Command cmd;
    cmd.verb = "demo";
    cmd.demo_name = demo;
    cmd.state_name = "phi-plus";
    CHECK(run(cmd).exit_code == 1);
  }
}

TEST_CASE("identical command and seed give identical output") {
  Command cmd;
  cmd.verb = "demo";
  cmd.demo_name = "bell";
  cmd.seed = 1234;
  const json a = strip_timestamp(run(cmd).output);
  const json b = strip_timestamp(run(cmd).output);
  CHECK(a.dump() == b.dump());

  cmd.seed = 4321;
  const json c = strip_timestamp(run(cmd).output);
  CHECK(a.dump() != c.dump());
}

TEST_CASE("validate catches nothing on shipped composites") {
  for (const char* theory : {"classical:2", "bct", "two-rebit", "qubit-pair"}) {
    Command cmd;
    cmd.verb = "validate";
    cmd.theory = theory;
    const RunResult r = run(cmd);
    CHECK(r.exit_code == 0);
    CHECK(r.output["all_pass"] == true);
  }
}

TEST_CASE("report verb emits per-law entries") {
  Command cmd;
  cmd.verb = "report";
  cmd.theory = "bct";
  const RunResult r = run(cmd);
  CHECK(r.exit_code == 0);
  CHECK(r.output["all_pass"] == true);
  bool found = false;
  for (const auto& law : r.output["laws"])
    if (law["name"] == "unit_annihilates_pi_tnl") found = law["pass"].get<bool>();
  CHECK(found);
}

TEST_CASE("every verb output is schema-versioned") {
  for (const char* verb : {"validate", "decompose", "classify", "report"}) {
    Command cmd;
    cmd.verb = verb;
    cmd.theory = "two-rebit";
    const RunResult r = run(cmd);
    CHECK(r.output["schema"] == "gpt-tomo/1");
    CHECK(r.output.contains("generated_at"));
  }
}
