#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ltlrl/autom/hoa.hpp"
#include "ltlrl/autom/monitor_automaton.hpp"
#include "ltlrl/autom/nba.hpp"
#include "ltlrl/autom/reach_avoid.hpp"
#include "ltlrl/diag/exact.hpp"
#include "ltlrl/errors.hpp"
#include "ltlrl/logic/parser.hpp"
#include "ltlrl/logic/semantics.hpp"
#include "ltlrl/mon/monitor_set.hpp"
#include "ltlrl/mon/spec.hpp"
#include "ltlrl/rl/checkpoint.hpp"
#include "ltlrl/rl/run_config.hpp"
#include "ltlrl/rl/trainer.hpp"
#include "ltlrl/util/csv.hpp"

namespace fs = std::filesystem;

using ltlrl::ConfigError;
using ltlrl::Error;
using ltlrl::util::csv_num;
using ltlrl::util::CsvWriter;

namespace {

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

/* Sample mean and standard deviation (n - 1 in the denominator, 0 for a
 * single sample). */
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return r;
}

double parse_number(const std::string& text, const std::string& where) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v))
    throw ConfigError(where + ": '" + text + "' is not a number");
  return v;
}

// ---------------------------------------------------------------------------
// compile

struct CompileOpts {
  std::string formula;
  std::string spec_file;
  std::string hoa;
};

void print_compiled(const std::string& label, const ltlrl::logic::Formula& f,
                    const ltlrl::logic::Alphabet& ab, std::string* hoa_sink) {
  std::cout << label << ": " << f.str() << "\n";

  const auto seq = ltlrl::autom::reach_avoid_decompose(f, ab.size());
  if (seq.stages.empty()) {
    std::cout << "  stages: none\n";
  } else {
    for (std::size_t k = 0; k < seq.stages.size(); ++k)
      std::cout << "  stage " << k << ": reach " << seq.stages[k].reach.str()
                << ", avoid " << seq.stages[k].avoid.str() << "\n";
  }
  std::cout << "  safety: " << (seq.global_safety ? seq.global_safety->str() : "none")
            << "\n";

  const auto m = ltlrl::autom::MonitorAutomaton::compile(seq, ab.names());
  std::cout << "  monitor: " << m.num_states() << " states, initial "
            << m.state_name(m.initial_state()) << "\n";
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    if (m.is_sink(s)) {
      std::cout << "    " << m.state_name(s) << ": sink\n";
      continue;
    }
    std::cout << "    " << m.state_name(s) << ":\n";
    for (const auto& e : m.edges_from(s)) {
      std::cout << "      " << e.guard.str() << " -> " << m.state_name(e.dst);
      if (e.event != ltlrl::autom::MonitorEvent::None)
        std::cout << "  [" << ltlrl::autom::to_string(e.event) << "]";
      std::cout << "\n";
    }
  }

  const auto nba = ltlrl::autom::ltl_to_nba(ltlrl::logic::to_nnf(f), ab.names());
  std::size_t n_edges = 0;
  for (const auto& out : nba.edges) n_edges += out.size();
  std::size_t n_acc = 0;
  for (char a : nba.accepting) n_acc += a ? 1 : 0;
  std::cout << "  buchi: " << nba.num_states() << " states, " << n_edges
            << " edges, " << n_acc << " accepting\n";

  if (hoa_sink) *hoa_sink += ltlrl::autom::export_hoa(nba, label + ": " + f.str());
}

int cmd_compile(const CompileOpts& o) {
  if (o.formula.empty() == o.spec_file.empty())
    throw ConfigError("compile takes exactly one of a formula argument or --spec");

  std::string hoa_text;
  std::string* sink = o.hoa.empty() ? nullptr : &hoa_text;

  if (!o.formula.empty()) {
    const auto ab = ltlrl::logic::infer_alphabet(o.formula);
    const auto f = ltlrl::logic::parse(o.formula, ab);
    print_compiled("formula", f, ab, sink);
  } else {
    const auto set = ltlrl::mon::load_spec_set(o.spec_file);
    bool first = true;
    for (const auto& s : set.specs) {
      if (!first) std::cout << "\n";
      first = false;
      print_compiled(s.id, s.formula, set.alphabet, sink);
    }
  }

  if (sink) {
    write_text_file(o.hoa, hoa_text);
    std::cout << "wrote " << o.hoa << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// monitor

struct MonitorOpts {
  std::string spec_file;
  std::string trace_file;
  std::string csv;
  std::string summary = "discounted";
  double gamma = 0.98;
  bool no_timestamp = false;
};

int cmd_monitor(const MonitorOpts& o) {
  const auto set = ltlrl::mon::load_spec_set(o.spec_file);

  std::ifstream in(o.trace_file);
  if (!in) throw Error("cannot open trace file: " + o.trace_file);
  const auto letters = ltlrl::mon::parse_trace(in, set.alphabet);
  if (letters.empty()) throw ConfigError("trace file has no letters: " + o.trace_file);

  const ltlrl::mon::SummaryMode mode = [&] {
    if (o.summary == "discounted") return ltlrl::mon::SummaryMode::Discounted;
    if (o.summary == "mean_per_step") return ltlrl::mon::SummaryMode::MeanPerStep;
    throw ConfigError("--summary must be 'discounted' or 'mean_per_step', got '" +
                      o.summary + "'");
  }();
  if (!(o.gamma > 0.0 && o.gamma < 1.0))
    throw ConfigError("--gamma must lie in (0, 1)");

  std::vector<std::string> cols{"step", "letter"};
  for (const auto& s : set.specs) {
    cols.push_back("cost_" + s.id);
    cols.push_back("event_" + s.id);
    cols.push_back("state_" + s.id);
  }
  cols.push_back("aggregate");

  std::ofstream file;
  if (!o.csv.empty()) {
    file.open(o.csv);
    if (!file) throw Error("cannot write file: " + o.csv);
  }
  std::ostream& rows_out = o.csv.empty() ? std::cout : file;

  ltlrl::mon::MonitorSet ms(set);
  std::vector<ltlrl::mon::CostVector> trace;
  CsvWriter w(rows_out, cols, !o.no_timestamp);
  for (std::size_t t = 0; t < letters.size(); ++t) {
    const auto cv = ms.observe(letters[t]);
    std::vector<std::string> cells{std::to_string(t),
                                   ltlrl::logic::to_string(set.alphabet, letters[t])};
    for (std::size_t k = 0; k < set.specs.size(); ++k) {
      cells.push_back(csv_num(cv.raw[k]));
      cells.push_back(ltlrl::autom::to_string(cv.events[k]));
      cells.push_back(ms.automaton(k).state_name(ms.cursor(k)));
    }
    cells.push_back(csv_num(cv.aggregate));
    w.row(cells);
    trace.push_back(cv);
  }
  if (!o.csv.empty()) std::cout << "wrote " << o.csv << "\n";

  const auto sum = ltlrl::mon::episode_cost_summary(trace, o.gamma, mode);
  std::cout << "letters: " << letters.size() << "\n";
  for (std::size_t k = 0; k < set.specs.size(); ++k) {
    const auto& s = set.specs[k];
    std::cout << s.id << ": " << o.summary << " cost " << csv_num(sum.per_spec[k])
              << ", budget " << csv_num(s.budget) << ", final state "
              << ms.automaton(k).state_name(ms.cursor(k)) << "\n";
  }
  std::cout << "aggregate: " << csv_num(sum.aggregate) << " (budget "
            << csv_num(set.aggregated_budget()) << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train

struct TrainOpts {
  std::string config;
  std::string out = "runs";
  std::vector<std::uint64_t> seeds;
  std::string sweep;
  bool no_timestamp = false;
};

/* Budget per cost channel, indexed like TrainResult::cost_ids.  Specs without
 * a budget to check (zero weight and no cost-limit override) get a negative
 * sentinel and are skipped by the feasibility flag. */
std::vector<double> channel_budgets(const ltlrl::rl::RunConfig& cfg,
                                    const std::vector<std::string>& cost_ids) {
  std::vector<double> budgets(cost_ids.size(), -1.0);
  if (cfg.kind == ltlrl::rl::EnvKind::Chain) {
    if (cfg.dual.cost_limit >= 0.0 && !budgets.empty()) budgets[0] = cfg.dual.cost_limit;
    return budgets;
  }
  const auto set = ltlrl::mon::load_spec_set(cfg.spec_file);
  for (std::size_t k = 0; k < set.specs.size() && k < budgets.size(); ++k) {
    if (set.specs[k].weight <= 0.0) continue;
    budgets[k] = cfg.dual.cost_limit >= 0.0 ? cfg.dual.cost_limit : set.specs[k].budget;
  }
  return budgets;
}

/* Final-iteration statistics across the seeds of one config. */
struct GroupResult {
  std::vector<std::string> cost_ids, lambda_ids;
  std::vector<double> reward, hit_wall;           // one entry per seed
  std::vector<std::vector<double>> cost, lambda;  // [channel][seed]
  bool feasible = true;
};

GroupResult run_group(const ltlrl::rl::RunConfig& cfg, const fs::path& dir,
                      bool timestamp) {
  fs::create_directories(dir);
  write_text_file(dir / "effective_config.json", cfg.to_json());

  GroupResult g;
  for (std::uint64_t seed : cfg.seeds) {
    const auto res = ltlrl::rl::train(cfg, seed);
    if (g.cost_ids.empty()) {
      g.cost_ids = res.cost_ids;
      g.lambda_ids = res.lambda_ids;
      g.cost.resize(res.cost_ids.size());
      g.lambda.resize(res.lambda_ids.size());
    }

    const fs::path seed_dir = dir / ("seed_" + std::to_string(seed));
    fs::create_directories(seed_dir);
    std::ofstream metrics(seed_dir / "metrics.csv");
    if (!metrics) throw Error("cannot write file: " + (seed_dir / "metrics.csv").string());
    ltlrl::rl::write_metrics_csv(metrics, res, timestamp);
    res.checkpoint.save((seed_dir / "checkpoint.txt").string());

    const auto& last = res.history.back();
    g.reward.push_back(last.ep_return);
    g.hit_wall.push_back(last.hit_wall_rate);
    for (std::size_t k = 0; k < last.cost.size(); ++k) g.cost[k].push_back(last.cost[k]);
    for (std::size_t k = 0; k < last.lambda.size(); ++k)
      g.lambda[k].push_back(last.lambda[k]);

    std::cout << "seed " << seed << ": " << last.env_steps << " steps, return "
              << csv_num(last.ep_return);
    for (std::size_t k = 0; k < last.cost.size(); ++k)
      std::cout << ", cost_" << res.cost_ids[k] << " " << csv_num(last.cost[k]);
    for (std::size_t k = 0; k < last.lambda.size(); ++k)
      std::cout << ", lambda_" << res.lambda_ids[k] << " " << csv_num(last.lambda[k]);
    std::cout << "\n";
  }

  const auto budgets = channel_budgets(cfg, g.cost_ids);
  for (std::size_t k = 0; k < budgets.size(); ++k) {
    if (budgets[k] < 0.0) continue;
    if (mean_std(g.cost[k]).mean > budgets[k]) g.feasible = false;
  }
  return g;
}

std::vector<std::string> summary_columns(const std::vector<std::string>& axis_keys,
                                         const GroupResult& g) {
  std::vector<std::string> cols = axis_keys;
  cols.push_back("n_seeds");
  cols.push_back("reward_mean");
  cols.push_back("reward_std");
  for (const auto& id : g.cost_ids) {
    cols.push_back("cost_" + id + "_mean");
    cols.push_back("cost_" + id + "_std");
  }
  cols.push_back("hit_wall_mean");
  cols.push_back("hit_wall_std");
  for (const auto& id : g.lambda_ids) {
    cols.push_back("lambda_" + id + "_mean");
    cols.push_back("lambda_" + id + "_std");
  }
  cols.push_back("feasible");
  return cols;
}

std::vector<std::string> summary_row(const std::vector<std::string>& axis_cells,
                                     const GroupResult& g) {
  std::vector<std::string> cells = axis_cells;
  cells.push_back(std::to_string(g.reward.size()));
  const auto rw = mean_std(g.reward);
  cells.push_back(csv_num(rw.mean));
  cells.push_back(csv_num(rw.std));
  for (const auto& c : g.cost) {
    const auto ms = mean_std(c);
    cells.push_back(csv_num(ms.mean));
    cells.push_back(csv_num(ms.std));
  }
  const auto hw = mean_std(g.hit_wall);
  cells.push_back(csv_num(hw.mean));
  cells.push_back(csv_num(hw.std));
  for (const auto& l : g.lambda) {
    const auto ms = mean_std(l);
    cells.push_back(csv_num(ms.mean));
    cells.push_back(csv_num(ms.std));
  }
  cells.push_back(g.feasible ? "1" : "0");
  return cells;
}

struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

/* "cost_limit=0.03,0.05 dual_lr=0.01,0.02" -> axes in the order given. */
std::vector<SweepAxis> parse_sweep(const std::string& text) {
  std::vector<SweepAxis> axes;
  std::istringstream iss(text);
  std::string term;
  while (iss >> term) {
    const auto eq = term.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == term.size())
      throw ConfigError("sweep term '" + term + "' is not key=v1,v2,...");
    SweepAxis axis;
    axis.key = term.substr(0, eq);
    if (axis.key != "cost_limit" && axis.key != "dual_lr")
      throw ConfigError("unknown sweep key '" + axis.key +
                        "' (supported: cost_limit, dual_lr)");
    for (const auto& a : axes)
      if (a.key == axis.key) throw ConfigError("sweep key '" + axis.key + "' repeats");
    std::stringstream vals(term.substr(eq + 1));
    std::string item;
    while (std::getline(vals, item, ','))
      axis.values.push_back(parse_number(item, "sweep key '" + axis.key + "'"));
    if (axis.values.empty())
      throw ConfigError("sweep key '" + axis.key + "' lists no values");
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw ConfigError("--sweep lists no key=values terms");
  return axes;
}

void apply_override(ltlrl::rl::RunConfig& cfg, const std::string& key, double value) {
  if (key == "cost_limit") {
    if (value < 0.0) throw ConfigError("sweep cost_limit must be >= 0");
    cfg.dual.cost_limit = value;
  } else {  // dual_lr
    if (value < 0.0) throw ConfigError("sweep dual_lr must be >= 0");
    cfg.dual.alpha = value;
  }
}

int cmd_train(const TrainOpts& o) {
  auto cfg = ltlrl::rl::RunConfig::load(o.config);
  if (!o.seeds.empty()) cfg.seeds = o.seeds;
  const bool timestamp = !o.no_timestamp;

  const fs::path out(o.out);
  fs::create_directories(out);

  if (o.sweep.empty()) {
    const auto g = run_group(cfg, out, timestamp);
    std::ofstream sf(out / "summary.csv");
    if (!sf) throw Error("cannot write file: " + (out / "summary.csv").string());
    CsvWriter w(sf, summary_columns({}, g), timestamp);
    w.row(summary_row({}, g));
    std::cout << "wrote " << (out / "summary.csv").string() << "\n";
    return 0;
  }

  const auto axes = parse_sweep(o.sweep);
  write_text_file(out / "effective_config.json", cfg.to_json());

  // Row-major walk of the grid, first axis outermost.
  std::vector<std::size_t> idx(axes.size(), 0);
  std::ofstream sf;
  std::unique_ptr<CsvWriter> w;
  std::vector<std::string> axis_keys;
  for (const auto& a : axes) axis_keys.push_back(a.key);

  for (;;) {
    auto cell_cfg = cfg;
    std::vector<std::string> axis_cells;
    std::string cell_name;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const double v = axes[i].values[idx[i]];
      apply_override(cell_cfg, axes[i].key, v);
      axis_cells.push_back(csv_num(v));
      if (!cell_name.empty()) cell_name += "_";
      cell_name += axes[i].key + "_" + csv_num(v);
    }
    std::cout << "cell " << cell_name << "\n";
    const auto g = run_group(cell_cfg, out / cell_name, timestamp);
    if (!w) {
      sf.open(out / "summary.csv");
      if (!sf) throw Error("cannot write file: " + (out / "summary.csv").string());
      w = std::make_unique<CsvWriter>(sf, summary_columns(axis_keys, g), timestamp);
    }
    w->row(summary_row(axis_cells, g));

    std::size_t i = axes.size();
    while (i > 0) {
      --i;
      if (++idx[i] < axes[i].values.size()) break;
      idx[i] = 0;
      if (i == 0) {
        std::cout << "wrote " << (out / "summary.csv").string() << "\n";
        return 0;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// eval

struct EvalOpts {
  std::string config;
  std::string checkpoint;
  std::string csv;
  int episodes = 20;
  std::uint64_t seed = 1;
  bool no_timestamp = false;
};

int cmd_eval(const EvalOpts& o) {
  if (o.episodes <= 0) throw ConfigError("--episodes must be positive");
  const auto cfg = ltlrl::rl::RunConfig::load(o.config);
  const auto ckpt = ltlrl::rl::Checkpoint::load(o.checkpoint);
  const auto rep = ltlrl::rl::evaluate(cfg, ckpt, o.episodes, o.seed);

  if (!o.csv.empty()) {
    std::vector<std::string> cols{"episode", "ret", "len", "hit_wall", "goals_met"};
    for (const auto& id : rep.spec_ids) cols.push_back("violations_" + id);
    std::ofstream file(o.csv);
    if (!file) throw Error("cannot write file: " + o.csv);
    CsvWriter w(file, cols, !o.no_timestamp);
    for (std::size_t i = 0; i < rep.episodes.size(); ++i) {
      const auto& ep = rep.episodes[i];
      std::vector<std::string> cells{std::to_string(i), csv_num(ep.ret),
                                     std::to_string(ep.len), ep.hit_wall ? "1" : "0",
                                     ep.goals_met ? "1" : "0"};
      for (int v : ep.violations) cells.push_back(std::to_string(v));
      w.row(cells);
    }
    std::cout << "wrote " << o.csv << "\n";
  }

  double ret = 0.0, len = 0.0, wall = 0.0, goals = 0.0;
  for (const auto& ep : rep.episodes) {
    ret += ep.ret;
    len += static_cast<double>(ep.len);
    wall += ep.hit_wall ? 1.0 : 0.0;
    goals += ep.goals_met ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(rep.episodes.size());
  std::cout << "episodes: " << rep.episodes.size() << "\n"
            << "mean return: " << csv_num(ret / n) << "\n"
            << "mean length: " << csv_num(len / n) << "\n"
            << "goal rate: " << csv_num(goals / n) << "\n"
            << "hit wall rate: " << csv_num(wall / n) << "\n";
  for (std::size_t k = 0; k < rep.spec_ids.size(); ++k)
    std::cout << "violation rate " << rep.spec_ids[k] << ": "
              << csv_num(rep.violation_rate[k]) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// diag

struct DiagOpts {
  std::string instance = "chain3";
  std::string out;
  int iters = 5000;
  std::uint64_t seed = 1;
  double lambda0 = 0.0;
  double lambda_cap = 100.0;
  double ball = 1e3;
  bool no_timestamp = false;
};

int cmd_diag(const DiagOpts& o) {
  if (o.iters <= 0) throw ConfigError("--iters must be positive");
  const auto instances = ltlrl::diag::shipped_instances();
  const ltlrl::diag::NamedInstance* inst = nullptr;
  for (const auto& i : instances)
    if (i.name == o.instance) inst = &i;
  if (!inst) {
    std::string names;
    for (const auto& i : instances) names += (names.empty() ? "" : ", ") + i.name;
    throw ConfigError("unknown instance '" + o.instance + "' (available: " + names + ")");
  }

  const double alpha = ltlrl::diag::admissible_primal_step(inst->m, o.lambda0, o.seed);
  const double beta = ltlrl::diag::study_dual_step(o.iters);
  const Eigen::MatrixXd theta0 = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(inst->m.n_states),
      static_cast<Eigen::Index>(inst->m.n_actions));
  const auto trace = ltlrl::diag::run_primal_dual_exact(
      inst->m, theta0, o.lambda0, alpha, beta, o.iters, o.ball, o.lambda_cap,
      inst->budget);

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw Error("cannot write file: " + o.out);
  }
  std::ostream& os = o.out.empty() ? std::cout : file;

  CsvWriter w(os, {"t", "gnorm", "hnorm", "lambda", "j_r", "j_c"}, !o.no_timestamp);
  w.comment("instance " + inst->name + ", budget " + csv_num(inst->budget) +
            ", alpha " + csv_num(alpha) + ", beta " + csv_num(beta));
  for (const auto& s : trace)
    w.row({std::to_string(s.t), csv_num(s.g_norm), csv_num(s.h_norm),
           csv_num(s.lambda), csv_num(s.j_r), csv_num(s.j_c)});
  if (!o.out.empty()) std::cout << "wrote " << o.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTL-constrained reinforcement learning toolkit"};
  app.require_subcommand(1);

  CompileOpts co;
  auto* compile = app.add_subcommand(
      "compile", "Decompose a formula into reach-avoid stages and automata");
  compile->add_option("formula", co.formula, "LTL formula text");
  compile->add_option("--spec", co.spec_file, "spec file; compiles every formula in it");
  compile->add_option("--hoa", co.hoa, "write the Buchi automaton(s) in HOA v1 here");

  MonitorOpts mo;
  auto* monitor = app.add_subcommand("monitor", "Replay a trace against a spec file");
  monitor->add_option("--spec", mo.spec_file, "spec file")->required();
  monitor->add_option("--trace", mo.trace_file, "trace file, one letter per line")
      ->required();
  monitor->add_option("--csv", mo.csv, "write per-step cost rows here (default stdout)");
  monitor->add_option("--gamma", mo.gamma, "discount for the episode summary");
  monitor->add_option("--summary", mo.summary, "'discounted' or 'mean_per_step'");
  monitor->add_flag("--no-timestamp", mo.no_timestamp, "omit the timestamp comment");

  TrainOpts to;
  auto* train = app.add_subcommand("train", "Run PPO-Lagrangian from a run config");
  train->add_option("--config", to.config, "run config (JSON)")->required();
  train->add_option("--out", to.out, "output directory (default 'runs')");
  train->add_option("--seed", to.seeds, "override the config's seed list");
  train->add_option("--sweep", to.sweep,
                    "grid like \"cost_limit=0.03,0.05 dual_lr=0.01,0.02\"");
  train->add_flag("--no-timestamp", to.no_timestamp, "omit timestamp comments");

  EvalOpts eo;
  auto* eval = app.add_subcommand("eval", "Deterministic rollouts of a checkpoint");
  eval->add_option("--config", eo.config, "run config (JSON)")->required();
  eval->add_option("--checkpoint", eo.checkpoint, "checkpoint file")->required();
  eval->add_option("--episodes", eo.episodes, "number of episodes (default 20)");
  eval->add_option("--seed", eo.seed, "evaluation seed");
  eval->add_option("--csv", eo.csv, "write one row per episode here");
  eval->add_flag("--no-timestamp", eo.no_timestamp, "omit the timestamp comment");

  DiagOpts dgo;
  auto* diag = app.add_subcommand(
      "diag", "Exact primal-dual residual study on a shipped tabular instance");
  diag->add_option("--instance", dgo.instance,
                   "instance name (default 'chain3'; see error message for the list)");
  diag->add_option("--iters", dgo.iters, "primal-dual iterations (default 5000)");
  diag->add_option("--seed", dgo.seed, "seed for the smoothness probes");
  diag->add_option("--lambda0", dgo.lambda0, "initial multiplier");
  diag->add_option("--lambda-cap", dgo.lambda_cap, "multiplier projection cap");
  diag->add_option("--ball", dgo.ball, "logit projection ball radius");
  diag->add_option("--out", dgo.out, "write the CSV here (default stdout)");
  diag->add_flag("--no-timestamp", dgo.no_timestamp, "omit the timestamp comment");

  compile->callback([&] { cmd_compile(co); });
  monitor->callback([&] { cmd_monitor(mo); });
  train->callback([&] { cmd_train(to); });
  eval->callback([&] { cmd_eval(eo); });
  diag->callback([&] { cmd_diag(dgo); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ltlrl::NanGradient& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const ltlrl::NonPositiveRatio& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const ltlrl::SingularSystem& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
