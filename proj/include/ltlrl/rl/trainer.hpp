#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ltlrl/rl/checkpoint.hpp"
#include "ltlrl/rl/run_config.hpp"

namespace ltlrl::rl {

/* One row of the training log, produced once per PPO iteration.  Episode
 * statistics average over the episodes that finished during the iteration;
 * when none did, the previous row's values carry over. */
struct IterationMetrics {
  long long iter = 0;
  long long env_steps = 0;  // cumulative environment steps collected
  double lr = 0.0;
  double ep_return = 0.0;
  double ep_len = 0.0;
  double hit_wall_rate = 0.0;
  double goal_rate = 0.0;       // episodes ending with every reach obligation met
  double subtask_events = 0.0;  // monitor progress events per episode
  double ratio_dev = 0.0;  // max |rho - 1| recomputed before the update, sanity check
  double policy_grad_norm = 0.0;  // mean pre-clip norm over minibatches
  std::vector<double> cost;       // per spec, episodic summary in raw units
  std::vector<double> lambda;     // per constrained spec, after this iteration's update
  double exact_jr = 0.0, exact_jc = 0.0;  // chain runs with exact_diagnostics
  double g_norm = 0.0, h_norm = 0.0;
};

struct TrainResult {
  std::vector<std::string> cost_ids;    // column ids behind IterationMetrics::cost
  std::vector<std::string> lambda_ids;  // column ids behind IterationMetrics::lambda
  bool exact_columns = false;
  std::vector<IterationMetrics> history;
  Checkpoint checkpoint;
};

/* Runs PPO with one Lagrange multiplier per constrained spec.  Fully
 * deterministic in (cfg, seed): every random stream is derived from the seed
 * with its own purpose tag. */
TrainResult train(const RunConfig& cfg, std::uint64_t seed);

/* One metrics row per iteration; the column set is the fixed prefix plus
 * cost_<id>, lambda_<id>, and the exact-diagnostic columns when enabled. */
void write_metrics_csv(std::ostream& out, const TrainResult& result, bool timestamp);

/* Deterministic evaluation: the policy plays its mean (continuous) or mode
 * (tabular) action. */
struct EvalEpisode {
  double ret = 0.0;
  std::size_t len = 0;
  bool hit_wall = false;
  bool goals_met = false;
  std::vector<int> violations;  // per spec: violation events during the episode
};

struct EvalReport {
  std::vector<std::string> spec_ids;
  std::vector<EvalEpisode> episodes;
  std::vector<double> violation_rate;  // per spec: share of episodes with a violation
};

EvalReport evaluate(const RunConfig& cfg, const Checkpoint& ckpt, int episodes,
                    std::uint64_t seed);

}  // namespace ltlrl::rl
