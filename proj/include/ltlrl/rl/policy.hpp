#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <random>
#include <vector>

#include "ltlrl/rl/net.hpp"

namespace ltlrl::rl {

/* Diagonal-Gaussian policy for continuous actions: a network maps the
 * observation to the action mean, and the log standard deviations are
 * state-independent parameters stored after the network weights in the flat
 * vector.  Log-stds are clamped to [-5, 2] after every optimizer step. */
class GaussianPolicy {
 public:
  static constexpr double kLogStdMin = -5.0;
  static constexpr double kLogStdMax = 2.0;

  GaussianPolicy(std::size_t obs_dim, const std::vector<std::size_t>& hidden,
                 std::size_t act_dim, double log_std_init = -0.5);
  void init(std::mt19937_64& rng);

  std::size_t obs_dim() const { return shape_.dims.front(); }
  std::size_t act_dim() const { return act_dim_; }
  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

  void post_step(double ball_radius);  // clamp log-std, then project if radius > 0

  Eigen::VectorXd sample(const Eigen::VectorXd& obs, std::mt19937_64& rng,
                         double* logp = nullptr) const;
  Eigen::VectorXd mean_action(const Eigen::VectorXd& obs) const;

  /* obs is obs_dim x B, act is act_dim x B; returns one log-probability per
   * column. */
  Eigen::VectorXd log_prob(const Eigen::MatrixXd& obs, const Eigen::MatrixXd& act) const;

  /* Entropy of a diagonal Gaussian is state-independent; the argument keeps
   * the signature uniform with the tabular policy. */
  double entropy(const Eigen::MatrixXd& obs) const;

  /* Accumulates the gradient of sum_t w(t) logp(t) + w_entropy * entropy. */
  void accumulate_grad(const Eigen::MatrixXd& obs, const Eigen::MatrixXd& act,
                       const Eigen::VectorXd& w, double w_entropy,
                       Eigen::Ref<Eigen::VectorXd> grad) const;

 private:
  MlpShape shape_;
  std::size_t act_dim_;
  Eigen::VectorXd params_;  // [network | log_std]

  Eigen::Ref<const Eigen::VectorXd> net_params() const;
  Eigen::Ref<const Eigen::VectorXd> log_std() const;
};

/* Softmax policy over per-state action logits, the parameterization the
 * exact-gradient diagnostics analyze.  Parameters are the logits flattened
 * row by row: entry s * n_actions + a. */
class TabularPolicy {
 public:
  TabularPolicy(std::size_t n_states, std::size_t n_actions);

  std::size_t n_states() const { return s_; }
  std::size_t n_actions() const { return a_; }
  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

  void post_step(double ball_radius);

  int sample(int state, std::mt19937_64& rng, double* logp = nullptr) const;
  int mode_action(int state) const;

  Eigen::VectorXd log_prob(const std::vector<int>& states,
                           const std::vector<int>& actions) const;
  double entropy(const std::vector<int>& states) const;
  void accumulate_grad(const std::vector<int>& states, const std::vector<int>& actions,
                       const Eigen::VectorXd& w, double w_entropy,
                       Eigen::Ref<Eigen::VectorXd> grad) const;

  Eigen::MatrixXd logits_matrix() const;  // n_states x n_actions copy

 private:
  std::size_t s_, a_;
  Eigen::VectorXd params_;

  Eigen::VectorXd probs(int state) const;
};

/* Value head over vector observations; same backbone family as the policy
 * but its own parameters. */
class MlpCritic {
 public:
  MlpCritic(std::size_t obs_dim, const std::vector<std::size_t>& hidden);
  void init(std::mt19937_64& rng);

  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

  double value(const Eigen::VectorXd& obs) const;
  Eigen::VectorXd values(const Eigen::MatrixXd& obs) const;

  /* Accumulates the gradient of sum_t w(t) V(obs_t). */
  void accumulate_grad(const Eigen::MatrixXd& obs, const Eigen::VectorXd& w,
                       Eigen::Ref<Eigen::VectorXd> grad) const;

 private:
  MlpShape shape_;
  Eigen::VectorXd params_;
};

/* Value table over discrete states. */
class TabularCritic {
 public:
  explicit TabularCritic(std::size_t n_states);

  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

  double value(int state) const;
  Eigen::VectorXd values(const std::vector<int>& states) const;
  void accumulate_grad(const std::vector<int>& states, const Eigen::VectorXd& w,
                       Eigen::Ref<Eigen::VectorXd> grad) const;

 private:
  Eigen::VectorXd params_;
};

}  // namespace ltlrl::rl
