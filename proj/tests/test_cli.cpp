#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "coarselab/run.hpp"

using namespace coarselab;

namespace {

const std::string kSourceDir = COARSELAB_SOURCE_DIR;
const std::string kCliPath = COARSELAB_CLI_PATH;

json load_config(const std::string& name) {
  std::ifstream in(kSourceDir + "/configs/" + name);
  REQUIRE(in);
  return json::parse(in);
}

struct CliResult {
  int exit_code = -1;
  std::string stdout_text;
};

CliResult run_cli(const std::string& args) {
  CliResult result;
  const std::string cmd = kCliPath + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  while (std::size_t got = fread(buffer, 1, sizeof buffer, pipe))
    result.stdout_text.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

json with_params(json config, json params) {
  config["params"] = std::move(params);
  return config;
}

}  // namespace

TEST_CASE("run_command dist matches the library") {
  auto config = with_params(load_config("z_pow3.json"),
                            json{{"x", json::parse("[[0,1]]")}, {"y", json::parse("[[1]]")},
                                 {"max_r", 6}});
  // y given as bare integer shorthand
  config["params"]["y"] = 6;
  auto outcome = run_command("dist", config);
  CHECK(outcome.exit_code == 0);
  CHECK(outcome.report["payload"]["distance"] == 3);
  CHECK(outcome.report["payload"]["exceeds_bound"] == false);
}

TEST_CASE("run_command rejects unknown config fields") {
  json config = load_config("z_unit.json");
  config["surprise"] = 1;
  CHECK_THROWS_AS((void)run_command("dist", config), Error);
}

TEST_CASE("config echo makes reports reproducible") {
  auto config = with_params(load_config("cube3.json"),
                            json{{"r", 1}, {"candidates", json{{"kind", "singletons"}}}});
  auto first = run_command("min-colors", config);
  auto second = run_command("min-colors", first.report["config"]);
  CHECK(first.report["payload"].dump() == second.report["payload"].dump());
}

TEST_CASE("verify-embed round-trips a certificate produced by embed") {
  auto config = with_params(load_config("z_pow3.json"), json{{"target_len", 4}});
  auto embed = run_command("embed", config);
  REQUIRE(embed.exit_code == 0);
  auto cert = embed.report["payload"]["certificate"];
  auto verify_cfg = with_params(load_config("z_pow3.json"),
                                json{{"certificate", cert}, {"support_bound", 4}});
  auto verify = run_command("verify-embed", verify_cfg);
  CHECK(verify.exit_code == 0);
  CHECK(verify.report["payload"]["verdict"] == "verified");
}

TEST_CASE("cover-verify accepts greedy witnesses and flags broken ones") {
  auto config = with_params(load_config("z_unit.json"),
                            json{{"r", 2},
                                 {"candidates", json{{"kind", "bricks"}, {"side", 5}, {"stride", 5}}}});
  auto greedy = run_command("cover-greedy", config);
  REQUIRE(greedy.exit_code == 0);
  json witness = greedy.report["payload"]["witness"];

  auto verify_cfg = with_params(load_config("z_unit.json"), json{{"witness", witness}});
  auto ok = run_command("cover-verify", verify_cfg);
  CHECK(ok.exit_code == 0);
  CHECK(ok.report["payload"]["valid"] == true);

  witness["r"] = 12;  // same sets, far larger separation scale
  auto broken_cfg = with_params(load_config("z_unit.json"), json{{"witness", witness}});
  auto broken = run_command("cover-verify", broken_cfg);
  CHECK(broken.exit_code == 1);
  CHECK(broken.report["payload"]["valid"] == false);
  CHECK(broken.report["payload"]["violation"]["kind"] == "separation");
}

TEST_CASE("embed reports scan exhaustion as a verdict failure") {
  json config = load_config("z_unit.json");
  config["generators"] = json{{"kind", "list"}, {"values", json::array({1, 1, 1, 1})}};
  config = with_params(std::move(config), json{{"target_len", 2}});
  auto outcome = run_command("embed", config);
  CHECK(outcome.exit_code == 1);
  CHECK(outcome.report["payload"]["error"]["code"] == "scan-exhausted");
}

TEST_CASE("cli binary: exit codes distinguish verdicts from usage errors") {
  const std::string cfg = kSourceDir + "/configs/z_pow3.json";
  CHECK(run_cli("dist --config " + cfg + " --x [[0,1]] --y [[0,6]]").exit_code == 0);
  CHECK(run_cli("fs-check --config " + cfg + " --b [1,2,3] --no-signed").exit_code == 1);
  CHECK(run_cli("dist --config " + cfg + " --x bogus").exit_code == 2);
  CHECK(run_cli("dist --config /nonexistent.json --x [[0,1]] --y [[0,2]]").exit_code == 2);
  CHECK(run_cli("nonsense --config " + cfg).exit_code == 2);
}

TEST_CASE("cli binary: payloads are byte-identical across runs") {
  const std::string cfg = kSourceDir + "/configs/z2_basis4.json";
  const std::string args =
      "classify --config " + cfg + " --function '{\"kind\":\"support_size\"}' --r-list 1,2";
  auto one = run_cli(args);
  auto two = run_cli(args);
  REQUIRE(one.exit_code == 0);
  auto p1 = json::parse(one.stdout_text)["payload"].dump();
  auto p2 = json::parse(two.stdout_text)["payload"].dump();
  CHECK(p1 == p2);
}

TEST_CASE("cli binary: csv twin of dim-profile") {
  const std::string cfg = kSourceDir + "/configs/z_unit.json";
  const std::string tmp = "/tmp/coarselab_test_profile.csv";
  auto res = run_cli("dim-profile --config " + cfg +
                     " --r-list 1,2 --candidates {\"kind\":\"bricks\",\"factor\":5} --csv " + tmp);
  REQUIRE(res.exit_code == 0);
  std::ifstream in(tmp);
  REQUIRE(in);
  std::string header;
  std::getline(in, header);
  CHECK(header == "r,D,greedy,exact,exact_flag");
  std::string row;
  std::getline(in, row);
  CHECK(row.substr(0, 2) == "1,");
  std::remove(tmp.c_str());
}
