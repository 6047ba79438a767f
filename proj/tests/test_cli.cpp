#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ltlrl/rl/run_config.hpp"

namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "ltlrl_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

/* Runs the built binary through the shell with stdout/stderr captured. */
CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_file = temp_dir() / ("stdout_" + std::to_string(counter));
  const fs::path err_file = temp_dir() / ("stderr_" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string("\"") + LTLRL_CLI_PATH + "\" " + args + " > " +
                          out_file.string() + " 2> " + err_file.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

/* Data rows of a CSV: lines that are neither comments nor the header. */
int data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    ++rows;
  }
  return rows;
}

const std::string kSourceDir = LTLRL_SOURCE_DIR;

std::string tiny_chain_config(const std::string& extra_dual = "") {
  return std::string(R"json({
  "environment": {"kind": "chain", "n_states": 4, "p_slip": 0.1, "episode_len": 64},
  "ppo": {"gamma": 0.95, "epochs": 3, "minibatch": 64, "horizon": 128, "n_envs": 2,
          "lr_init": 0.01, "lr_final": 0.002},
  "dual": {"enabled": true, "alpha": 0.05, "cap": 50.0, "cost_limit": 0.2)json") +
         extra_dual + R"json(},
  "total_steps": 1024,
  "seeds": [1, 2]
})json";
}

}  // namespace

TEST_CASE("compile prints decomposition, monitor table, and automaton size") {
  const auto r = run_cli("compile '!blue U green'");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "stage 0: reach green, avoid blue"));
  CHECK(contains(r.out, "monitor: 3 states"));
  CHECK(contains(r.out, "stage_0"));
  CHECK(contains(r.out, "[violation]"));
  CHECK(contains(r.out, "buchi: 2 states"));
}

TEST_CASE("compile rejects formulas outside the fragment, naming the subformula") {
  const auto r = run_cli("compile 'F p & F q'");
  CHECK(r.code == 2);
  CHECK(contains(r.err, "unsupported fragment"));
  CHECK(contains(r.err, "F q"));
}

TEST_CASE("compile writes a one-state HOA automaton for a pure safety formula") {
  const fs::path hoa = temp_dir() / "safety.hoa";
  const auto r = run_cli("compile 'G !collision' --hoa " + hoa.string());
  CHECK(r.code == 0);
  const std::string text = slurp(hoa);
  CHECK(contains(text, "HOA: v1"));
  CHECK(contains(text, "States: 1"));
  CHECK(contains(text, "--END--"));
}

TEST_CASE("compile handles spec files and rejects ambiguous input") {
  const auto r =
      run_cli("compile --spec " + kSourceDir + "/specs/zones_order.json");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "order: !blue U green"));
  CHECK(contains(r.out, "goal: F yellow"));

  CHECK(run_cli("compile").code == 2);
  CHECK(run_cli("compile 'F a' --spec " + kSourceDir + "/specs/zones_order.json")
            .code == 2);
}

TEST_CASE("monitor replays a trace with one cost row per letter") {
  const auto spec = kSourceDir + "/specs/zones_order.json";
  const auto trace = kSourceDir + "/traces/order_violation.txt";
  const fs::path csv = temp_dir() / "replay.csv";
  const auto r = run_cli("monitor --spec " + spec + " --trace " + trace +
                         " --csv " + csv.string() + " --no-timestamp");
  CHECK(r.code == 0);
  const std::string rows = slurp(csv);
  CHECK(data_rows(rows) == 3);
  CHECK(contains(rows, "violation"));
  CHECK(contains(r.out, "order: discounted cost 1"));
  CHECK(contains(r.out, "final state reject"));

  SUBCASE("clean trace satisfies both specs") {
    const auto ok = run_cli("monitor --spec " + spec + " --trace " + kSourceDir +
                            "/traces/order_ok.txt --no-timestamp");
    CHECK(ok.code == 0);
    CHECK(data_rows(ok.out) >= 3);  // stdout carries rows plus the summary
    CHECK(contains(ok.out, "order: discounted cost 0"));
  }
}

TEST_CASE("monitor rejects an empty trace file") {
  const fs::path empty = temp_dir() / "empty_trace.txt";
  write_file(empty, "");
  const auto r = run_cli("monitor --spec " + kSourceDir +
                         "/specs/zones_order.json --trace " + empty.string());
  CHECK(r.code == 2);
  CHECK(contains(r.err, "no letters"));
}

TEST_CASE("monitor reports unknown propositions with the trace line") {
  const fs::path bad = temp_dir() / "bad_trace.txt";
  write_file(bad, "green\npurple\n");
  const auto r = run_cli("monitor --spec " + kSourceDir +
                         "/specs/zones_order.json --trace " + bad.string());
  CHECK(r.code == 2);
  CHECK(contains(r.err, "unknown proposition 'purple'"));
}

TEST_CASE("train writes per-seed outputs and reruns byte-identically") {
  const fs::path cfg = temp_dir() / "train_cfg.json";
  write_file(cfg, tiny_chain_config());
  const fs::path out1 = temp_dir() / "train_out1";
  const fs::path out2 = temp_dir() / "train_out2";

  const auto r1 = run_cli("train --config " + cfg.string() + " --out " +
                          out1.string() + " --no-timestamp");
  REQUIRE(r1.code == 0);
  for (const char* seed : {"seed_1", "seed_2"}) {
    CHECK(fs::exists(out1 / seed / "metrics.csv"));
    CHECK(fs::exists(out1 / seed / "checkpoint.txt"));
  }
  CHECK(fs::exists(out1 / "effective_config.json"));
  const std::string summary = slurp(out1 / "summary.csv");
  CHECK(data_rows(summary) == 1);
  CHECK(contains(summary, "feasible"));

  const auto r2 = run_cli("train --config " + cfg.string() + " --out " +
                          out2.string() + " --no-timestamp");
  REQUIRE(r2.code == 0);
  CHECK(slurp(out1 / "seed_1" / "metrics.csv") == slurp(out2 / "seed_1" / "metrics.csv"));
  CHECK(slurp(out1 / "seed_2" / "checkpoint.txt") ==
        slurp(out2 / "seed_2" / "checkpoint.txt"));
  CHECK(slurp(out1 / "summary.csv") == slurp(out2 / "summary.csv"));

  SUBCASE("rerunning from the dumped effective config reproduces the outputs") {
    const fs::path out3 = temp_dir() / "train_out3";
    const auto r3 = run_cli("train --config " +
                            (out1 / "effective_config.json").string() + " --out " +
                            out3.string() + " --no-timestamp");
    REQUIRE(r3.code == 0);
    CHECK(slurp(out1 / "seed_1" / "metrics.csv") ==
          slurp(out3 / "seed_1" / "metrics.csv"));
    CHECK(slurp(out1 / "summary.csv") == slurp(out3 / "summary.csv"));
  }

  SUBCASE("--seed overrides the config's seed list") {
    const fs::path out4 = temp_dir() / "train_out4";
    const auto r4 = run_cli("train --config " + cfg.string() + " --out " +
                            out4.string() + " --no-timestamp --seed 5");
    REQUIRE(r4.code == 0);
    CHECK(fs::exists(out4 / "seed_5" / "metrics.csv"));
    CHECK(!fs::exists(out4 / "seed_1"));
  }

  SUBCASE("timestamp comment appears unless suppressed") {
    const std::string no_ts = slurp(out1 / "seed_1" / "metrics.csv");
    CHECK(no_ts.rfind("iter,", 0) == 0);

    const fs::path out5 = temp_dir() / "train_out5";
    const auto r5 = run_cli("train --config " + cfg.string() + " --out " +
                            out5.string() + " --seed 1");
    REQUIRE(r5.code == 0);
    CHECK(slurp(out5 / "seed_1" / "metrics.csv").rfind("# written ", 0) == 0);
  }
}

TEST_CASE("train reports malformed configs with the field path") {
  const fs::path cfg = temp_dir() / "bad_cfg.json";
  write_file(cfg, R"json({
  "environment": {"kind": "chain", "n_states": 4},
  "ppo": {"gamma": 1.5},
  "dual": {"enabled": true, "cost_limit": 0.2},
  "total_steps": 1024
})json");
  const auto r = run_cli("train --config " + cfg.string() + " --out " +
                         (temp_dir() / "unused").string());
  CHECK(r.code == 2);
  CHECK(contains(r.err, "ppo.gamma"));
}

TEST_CASE("train exits with the numeric-failure code when the update blows up") {
  const fs::path spec_dir = temp_dir();
  const fs::path cfg = temp_dir() / "nan_cfg.json";
  write_file(cfg, R"json({
  "environment": {
    "kind": "zones",
    "max_steps": 60,
    "fixed_zones": [
      {"prop": "blue", "x": 1.2, "y": 0.0},
      {"prop": "green", "x": 0.0, "y": 1.5},
      {"prop": "yellow", "x": 2.2, "y": 0.0}
    ]
  },
  "spec_file": ")json" + kSourceDir + R"json(/specs/zones_order.json",
  "ppo": {"horizon": 128, "n_envs": 2, "epochs": 3, "minibatch": 64,
          "hidden": [16, 16], "lr_init": 1e15, "lr_final": 1e15},
  "dual": {"enabled": true},
  "total_steps": 256,
  "seeds": [1]
})json");
  const auto r = run_cli("train --config " + cfg.string() + " --out " +
                         (temp_dir() / "nan_out").string() + " --no-timestamp");
  CHECK(r.code == 3);
  CHECK(contains(r.err, "numeric failure"));
}

TEST_CASE("train sweeps a parameter grid with one summary row per cell") {
  const fs::path cfg = temp_dir() / "sweep_cfg.json";
  write_file(cfg, R"json({
  "environment": {"kind": "chain", "n_states": 4, "p_slip": 0.1, "episode_len": 64},
  "ppo": {"gamma": 0.95, "epochs": 2, "minibatch": 64, "horizon": 128, "n_envs": 2,
          "lr_init": 0.01, "lr_final": 0.002},
  "dual": {"enabled": true, "alpha": 0.05, "cap": 50.0, "cost_limit": 0.2},
  "total_steps": 512,
  "seeds": [1]
})json");
  const fs::path out = temp_dir() / "sweep_out";
  const auto r = run_cli("train --config " + cfg.string() + " --out " + out.string() +
                         " --no-timestamp --sweep 'cost_limit=0.1,0.2 dual_lr=0.02,0.05'");
  REQUIRE(r.code == 0);
  const std::string summary = slurp(out / "summary.csv");
  CHECK(data_rows(summary) == 4);
  CHECK(summary.rfind("cost_limit,dual_lr,", 0) == 0);
  CHECK(fs::exists(out / "cost_limit_0.1_dual_lr_0.02" / "seed_1" / "metrics.csv"));
  CHECK(fs::exists(out / "cost_limit_0.2_dual_lr_0.05" / "summary.csv") == false);

  SUBCASE("unknown sweep keys are rejected") {
    const auto bad = run_cli("train --config " + cfg.string() + " --out " +
                             (temp_dir() / "sweep_bad").string() +
                             " --sweep 'gamma=0.9,0.95'");
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "unknown sweep key 'gamma'"));
  }
}

TEST_CASE("eval writes one row per episode and repeats deterministically") {
  const fs::path cfg = temp_dir() / "eval_cfg.json";
  write_file(cfg, tiny_chain_config());
  const fs::path out = temp_dir() / "eval_train";
  REQUIRE(run_cli("train --config " + cfg.string() + " --out " + out.string() +
                  " --no-timestamp --seed 1")
              .code == 0);
  const std::string ckpt = (out / "seed_1" / "checkpoint.txt").string();

  const fs::path csv1 = temp_dir() / "eval1.csv";
  const fs::path csv2 = temp_dir() / "eval2.csv";
  const auto r1 = run_cli("eval --config " + cfg.string() + " --checkpoint " + ckpt +
                          " --episodes 7 --csv " + csv1.string() + " --no-timestamp");
  REQUIRE(r1.code == 0);
  CHECK(data_rows(slurp(csv1)) == 7);
  CHECK(contains(r1.out, "episodes: 7"));
  CHECK(contains(r1.out, "violation rate cost:"));

  const auto r2 = run_cli("eval --config " + cfg.string() + " --checkpoint " + ckpt +
                          " --episodes 7 --csv " + csv2.string() + " --no-timestamp");
  REQUIRE(r2.code == 0);
  CHECK(slurp(csv1) == slurp(csv2));

  SUBCASE("checkpoint and config environments must agree") {
    const fs::path zcfg = temp_dir() / "eval_zones_cfg.json";
    write_file(zcfg, R"json({
  "environment": {
    "kind": "zones",
    "fixed_zones": [
      {"prop": "blue", "x": 1.2, "y": 0.0},
      {"prop": "green", "x": 0.0, "y": 1.5},
      {"prop": "yellow", "x": 2.2, "y": 0.0}
    ]
  },
  "spec_file": ")json" + kSourceDir + R"json(/specs/zones_order.json",
  "total_steps": 256
})json");
    const auto bad = run_cli("eval --config " + zcfg.string() + " --checkpoint " + ckpt);
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "zones"));
    CHECK(contains(bad.err, "chain"));
  }
}

TEST_CASE("diag emits the residual trace for a shipped instance") {
  const fs::path csv = temp_dir() / "diag.csv";
  const auto r = run_cli("diag --instance chain3 --iters 50 --out " + csv.string() +
                         " --no-timestamp");
  REQUIRE(r.code == 0);
  const std::string text = slurp(csv);
  CHECK(data_rows(text) == 50);
  CHECK(contains(text, "t,gnorm,hnorm,lambda,j_r,j_c"));
  CHECK(contains(text, "# instance chain3"));

  SUBCASE("reruns are byte-identical") {
    const fs::path csv2 = temp_dir() / "diag2.csv";
    REQUIRE(run_cli("diag --instance chain3 --iters 50 --out " + csv2.string() +
                    " --no-timestamp")
                .code == 0);
    CHECK(text == slurp(csv2));
  }

  SUBCASE("unknown instances list the available names") {
    const auto bad = run_cli("diag --instance bogus");
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "chain3, chain5, riskpair"));
  }
}

TEST_CASE("usage errors exit with the config-error code") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("train").code == 2);         // missing --config
  CHECK(run_cli("train --bogus x").code == 2);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("shipped run configs parse cleanly") {
  for (const char* name :
       {"zones_ppoltl.json", "zones_ppo.json", "chain_budget.json",
        "chain_dual_fast.json", "chain_sweep.json"}) {
    CAPTURE(name);
    CHECK_NOTHROW(ltlrl::rl::RunConfig::load(kSourceDir + "/configs/" + name));
  }
}
