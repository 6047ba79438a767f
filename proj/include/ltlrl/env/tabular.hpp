#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

namespace ltlrl::env {

/* A finite CMDP (states, actions, transitions, reward, one cost signal,
 * initial distribution, discount), small enough for exact linear-algebra
 * evaluation. P[a] is the n_states x n_states matrix for action a; r and c
 * are n_states x n_actions tables. */
struct TabularCMDP {
  std::size_t n_states = 0;
  std::size_t n_actions = 0;
  std::vector<Eigen::MatrixXd> P;
  Eigen::MatrixXd r, c;
  Eigen::VectorXd mu;
  double gamma = 0.99;

  // Throws ConfigError when shapes disagree, rows or mu do not sum to one
  // within 1e-12, entries are negative where forbidden, or gamma is outside
  // (0, 1).
  void validate() const;

  std::size_t sample_initial(std::mt19937_64& rng) const;
  std::size_t sample_next(std::size_t s, std::size_t a, std::mt19937_64& rng) const;
};

/* A line of n states walked from the left end. RIGHT advances with
 * probability 1 - p_slip (else stays), STAY stays put. The rightmost state
 * pays reward 1 at cost 1 per step; its neighbor pays reward 0.5 at no
 * cost. With a tight budget the best policy parks on that safe neighbor. */
TabularCMDP chain_cmdp(std::size_t n, double p_slip, double gamma);

inline constexpr std::size_t kChainStay = 0;
inline constexpr std::size_t kChainRight = 1;

}  // namespace ltlrl::env
