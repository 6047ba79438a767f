#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltlrl/env/zones.hpp"
#include "ltlrl/mon/monitor_set.hpp"

namespace ltlrl::rl {

enum class EnvKind { Zones, Chain };

/* Fixed-layout disc referenced by proposition name; resolved against the
 * spec file's alphabet when the environment is built. */
struct NamedZone {
  std::string prop;
  double x = 0.0, y = 0.0;
  double radius = 0.6;
};

struct ChainEnvConfig {
  std::size_t n_states = 5;
  double p_slip = 0.1;
  std::size_t episode_len = 64;  // episodes truncate here, values bootstrap
};

struct PpoConfig {
  double gamma = 0.98;
  double gae_lambda = 0.95;
  double clip = 0.2;
  int epochs = 4;
  int minibatch = 64;
  int horizon = 1024;     // steps collected per worker per iteration
  int n_envs = 8;
  double lr_init = 1e-4;  // decayed linearly to lr_final over the run
  double lr_final = 1e-6;
  double entropy_coef = 0.0;  // default 0.001 for Zones, 0 for the chain
  double value_coef = 0.5;
  std::vector<std::size_t> hidden{64, 64};
  double max_grad_norm = 0.5;
  double param_ball = 1e3;     // policy-parameter norm ball
  bool project_params = false;  // project after every step when set
  double log_std_init = -0.5;
};

struct DualConfig {
  bool enabled = true;
  double alpha = 0.01;       // multiplier step size
  double cap = 100.0;
  double init = 0.0;
  double cost_limit = -1.0;  // >= 0 overrides every constrained spec's budget
  mon::SummaryMode summary = mon::SummaryMode::Discounted;
};

/* Everything a training run needs.  Parsing rejects unknown keys at every
 * level and reports field paths; to_json materializes all defaults so a
 * dumped config reproduces the run exactly. */
struct RunConfig {
  EnvKind kind = EnvKind::Zones;
  env::ZonesConfig zones;             // used when kind == Zones
  std::vector<NamedZone> fixed_zones; // names resolved at environment build
  ChainEnvConfig chain;               // used when kind == Chain
  std::string spec_file;              // required for Zones, absolute after parse
  PpoConfig ppo;
  DualConfig dual;
  long long total_steps = 200000;
  std::vector<std::uint64_t> seeds{1};
  bool exact_diagnostics = false;     // chain only: closed-form metrics per iteration

  static RunConfig parse(const std::string& text, const std::string& base_dir = "");
  static RunConfig load(const std::string& path);
  std::string to_json() const;
};

}  // namespace ltlrl::rl
