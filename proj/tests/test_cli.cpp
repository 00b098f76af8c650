#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using macroflow::cli::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"macroflow"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("macroflow_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

const std::vector<std::string> kSmall = {"--set", "engine.n_traders_per_type=4",
                                         "--set", "engine.n_events=6",
                                         "--set", "allocation.n_draws=800"};

Result small_run(const fs::path& out, std::initializer_list<std::string> extra = {}) {
  std::vector<std::string> args{"run", "--out", out.string(), "--workers", "2"};
  args.insert(args.end(), kSmall.begin(), kSmall.end());
  args.insert(args.end(), extra.begin(), extra.end());
  std::vector<std::string> owned{"macroflow"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : owned) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
  return {code, o.str(), e.str()};
}

const char* kOutputs[] = {"config.txt",          "panel.csv",          "events.csv",
                          "alloc_by_period.csv", "final_wealth_hist.csv", "mean_wealth_path.csv",
                          "order_by_liquidity.csv", "summary.txt"};

}  // namespace

TEST_CASE("print-defaults shows the archetype table") {
  const Result r = cli({"print-defaults"});
  CHECK(r.code == 0);
  CHECK(r.out.find("agents.retail.risk_aversion = 3") != std::string::npos);
  CHECK(r.out.find("agents.retail.max_risk = 0.25") != std::string::npos);
  CHECK(r.out.find("agents.hedge_fund.max_risk = 1") != std::string::npos);
  CHECK(r.out.find("engine.seed = 42") != std::string::npos);
}

TEST_CASE("validate-config reports bad keys and values") {
  Result r = cli({"validate-config", "--set", "allocation.grid_step=0"});
  CHECK(r.code == 1);
  CHECK(r.err.find("allocation.grid_step") != std::string::npos);

  r = cli({"validate-config", "--config", "/nonexistent/config.txt"});
  CHECK(r.code == 1);

  r = cli({"validate-config", "--set", "market.unknown=1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("market.unknown") != std::string::npos);

  r = cli({"validate-config", "--seed", "5", "--set", "engine.seed=9"});
  CHECK(r.code == 0);
  CHECK(r.out.find("engine.seed = 5") != std::string::npos);
}

TEST_CASE("config file, overrides and flags stack in order") {
  const fs::path dir = scratch("precedence");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "c.txt");
    f << "engine.seed = 11\nmarket.rf = 0.02\nengine.replications = 3\n";
  }
  const Result r = cli({"validate-config", "--config", (dir / "c.txt").string(), "--set",
                        "market.rf=0.03", "--set", "engine.seed=12", "--seed", "13"});
  CHECK(r.code == 0);
  CHECK(r.out.find("engine.seed = 13") != std::string::npos);
  CHECK(r.out.find("market.rf = 0.03") != std::string::npos);
  CHECK(r.out.find("engine.replications = 3") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("argument errors exit with 1") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"run", "--seed", "abc"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("run writes every output and is reproducible") {
  const fs::path a = scratch("run_a"), b = scratch("run_b");
  const Result ra = small_run(a, {"--jsonl"});
  REQUIRE(ra.code == 0);
  CHECK(ra.out.find("mean_x_star") != std::string::npos);
  const Result rb = small_run(b, {"--jsonl"});
  REQUIRE(rb.code == 0);
  for (const char* f : kOutputs) {
    CHECK_MESSAGE(fs::exists(a / f), f);
    CHECK_MESSAGE(slurp(a / f) == slurp(b / f), f);
  }
  CHECK(slurp(a / "panel.jsonl") == slurp(b / "panel.jsonl"));
  // 4 types x 4 traders x 6 events plus provenance and header.
  const std::string panel = slurp(a / "panel.csv");
  CHECK(std::count(panel.begin(), panel.end(), '\n') == 96 + 2);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("summarize reproduces the inline tables") {
  const fs::path run_dir = scratch("sum_run"), sum_dir = scratch("sum_out");
  REQUIRE(small_run(run_dir, {"--liq-bins", "3", "--wealth-bins", "6"}).code == 0);
  const Result r = cli({"summarize", (run_dir / "panel.csv").string(), "--out", sum_dir.string()});
  REQUIRE(r.code == 0);
  for (const char* f : {"alloc_by_period.csv", "final_wealth_hist.csv", "mean_wealth_path.csv",
                        "order_by_liquidity.csv", "summary.txt"}) {
    CHECK_MESSAGE(slurp(run_dir / f) == slurp(sum_dir / f), f);
  }
  CHECK(cli({"summarize", (run_dir / "missing.csv").string()}).code == 2);
  fs::remove_all(run_dir);
  fs::remove_all(sum_dir);
}

TEST_CASE("unusable output directory is a runtime error") {
  const fs::path dir = scratch("blocked");
  fs::create_directories(dir);
  std::ofstream(dir / "file") << "x";
  const Result r = small_run(dir / "file" / "sub");
  CHECK(r.code == 2);
  CHECK(r.err.find("output directory") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("output directory falls back to the environment") {
  const fs::path dir = scratch("env");
  ::setenv("MACROFLOW_OUT", dir.string().c_str(), 1);
  std::vector<std::string> args{"macroflow", "run", "--workers", "1"};
  args.insert(args.end(), kSmall.begin(), kSmall.end());
  std::vector<const char*> argv;
  for (const std::string& s : args) argv.push_back(s.c_str());
  std::ostringstream o, e;
  CHECK(run_cli(static_cast<int>(argv.size()), argv.data(), o, e) == 0);
  ::unsetenv("MACROFLOW_OUT");
  CHECK(fs::exists(dir / "panel.csv"));
  fs::remove_all(dir);
}

TEST_CASE("bench reports throughput") {
  const Result r = cli({"bench", "--tasks", "8", "--workers", "2", "--set", "allocation.n_draws=500"});
  CHECK(r.code == 0);
  CHECK(r.out.find("M draws/s") != std::string::npos);
  CHECK(cli({"bench", "--tasks", "0"}).code == 1);
}
