#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ltlrl::rl {

/* Trainer state frozen to disk as text. Floats are written as C hexfloats so
 * loading restores them bit for bit; RNG engines serialize through their
 * stream operators. */
struct Checkpoint {
  std::string env_kind;                // "zones" or "chain"
  std::size_t obs_dim = 0;             // chain: number of states
  std::size_t act_dim = 0;             // chain: number of actions
  std::vector<std::size_t> hidden;     // empty for tabular parameterizations
  Eigen::VectorXd policy;
  Eigen::VectorXd critic_r;
  std::vector<Eigen::VectorXd> critic_c;
  std::vector<double> lambda;          // one per constrained spec
  std::vector<std::pair<std::string, std::string>> rng;  // stream name -> engine state
  long long env_steps = 0;
  long long iteration = 0;

  void save(const std::string& path) const;
  static Checkpoint load(const std::string& path);
};

}  // namespace ltlrl::rl
