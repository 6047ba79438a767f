#include "ltlrl/diag/exact.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ltlrl/errors.hpp"

namespace ltlrl::diag {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/* Policy-averaged transition matrix and per-state reward/cost. */
struct Averaged {
  MatrixXd p;      // n_states x n_states
  VectorXd r, c;   // n_states
};

Averaged average_under(const env::TabularCMDP& m, const MatrixXd& pi) {
  const auto n = static_cast<Eigen::Index>(m.n_states);
  Averaged out{MatrixXd::Zero(n, n), VectorXd::Zero(n), VectorXd::Zero(n)};
  for (std::size_t a = 0; a < m.n_actions; ++a) {
    out.p += pi.col(static_cast<Eigen::Index>(a)).asDiagonal() * m.P[a];
    out.r += pi.col(static_cast<Eigen::Index>(a)).cwiseProduct(m.r.col(static_cast<Eigen::Index>(a)));
    out.c += pi.col(static_cast<Eigen::Index>(a)).cwiseProduct(m.c.col(static_cast<Eigen::Index>(a)));
  }
  return out;
}

VectorXd solve_values(const MatrixXd& system, const VectorXd& rhs) {
  Eigen::FullPivLU<MatrixXd> lu(system);
  if (!lu.isInvertible()) throw SingularSystem("value system is singular");
  return lu.solve(rhs);
}

/* Shared worker: evaluation plus, optionally, the exact Lagrangian gradient.
 * Splitting the solves from the gradient assembly keeps the public entry
 * points cheap to express without re-solving the linear systems. */
ExactEval eval_internal(const env::TabularCMDP& m, const MatrixXd& pi,
                        double lambda, MatrixXd* grad_out) {
  m.validate();
  const auto n = static_cast<Eigen::Index>(m.n_states);
  const auto k = static_cast<Eigen::Index>(m.n_actions);
  if (pi.rows() != n || pi.cols() != k)
    throw LengthMismatch("policy matrix shape does not match the CMDP");
  for (Eigen::Index s = 0; s < n; ++s) {
    if (pi.row(s).minCoeff() < -1e-12 || std::abs(pi.row(s).sum() - 1.0) > 1e-9)
      throw ConfigError("policy row " + std::to_string(s) + " is not a distribution");
  }

  Averaged avg = average_under(m, pi);
  MatrixXd system = MatrixXd::Identity(n, n) - m.gamma * avg.p;

  ExactEval out;
  out.v_r = solve_values(system, avg.r);
  out.v_c = solve_values(system, avg.c);
  out.j_r = (1.0 - m.gamma) * m.mu.dot(out.v_r);
  out.j_c = (1.0 - m.gamma) * m.mu.dot(out.v_c);

  // State occupancy from the transposed system; expanding by the policy
  // gives the state-action measure, which sums to 1 by construction.
  VectorXd d_state = solve_values(system.transpose(), (1.0 - m.gamma) * m.mu);
  out.occupancy = d_state.asDiagonal() * pi;

  if (grad_out) {
    // Unnormalized Q-values; with the normalized state occupancy in front,
    // entry (s,b) of the gradient is d(s) pi(b|s) (A_r(s,b) - lambda A_c(s,b)).
    MatrixXd q_mix(n, k);
    for (std::size_t a = 0; a < m.n_actions; ++a) {
      const auto ai = static_cast<Eigen::Index>(a);
      q_mix.col(ai) = (m.r.col(ai) + m.gamma * m.P[a] * out.v_r) -
                      lambda * (m.c.col(ai) + m.gamma * m.P[a] * out.v_c);
    }
    VectorXd v_mix = (pi.array() * q_mix.array()).rowwise().sum();
    *grad_out = d_state.asDiagonal() * (pi.array() * (q_mix.colwise() - v_mix).array()).matrix();
  }
  return out;
}

}  // namespace

MatrixXd softmax_rows(const MatrixXd& logits) {
  MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index s = 0; s < logits.rows(); ++s) {
    Eigen::RowVectorXd shifted = logits.row(s).array() - logits.row(s).maxCoeff();
    Eigen::RowVectorXd e = shifted.array().exp();
    out.row(s) = e / e.sum();
  }
  return out;
}

ExactEval exact_eval_stochastic(const env::TabularCMDP& m, const MatrixXd& pi) {
  return eval_internal(m, pi, 0.0, nullptr);
}

ExactEval exact_policy_eval(const env::TabularCMDP& m, const MatrixXd& logits) {
  return eval_internal(m, softmax_rows(logits), 0.0, nullptr);
}

MatrixXd exact_lagrangian_grad(const env::TabularCMDP& m, const MatrixXd& logits,
                               double lambda) {
  MatrixXd grad;
  eval_internal(m, softmax_rows(logits), lambda, &grad);
  return grad;
}

namespace {

/* Euclidean-ball projection over the flattened logits. */
void project_ball(MatrixXd& theta, double radius) {
  double norm = theta.norm();
  if (norm > radius) theta *= radius / norm;
}

}  // namespace

GradMaps grad_maps(const env::TabularCMDP& m, const MatrixXd& logits, double lambda,
                   double alpha, double beta, double ball_radius, double lambda_cap,
                   double budget) {
  if (alpha <= 0.0 || beta <= 0.0) throw ConfigError("grad_maps: step sizes must be positive");
  MatrixXd grad;
  ExactEval eval = eval_internal(m, softmax_rows(logits), lambda, &grad);

  MatrixXd stepped = logits + alpha * grad;
  project_ball(stepped, ball_radius);
  double lam_stepped = std::clamp(lambda + beta * (eval.j_c - budget), 0.0, lambda_cap);

  return GradMaps{(stepped - logits).norm() / alpha, std::abs(lam_stepped - lambda) / beta};
}

std::vector<GradMapSample> run_primal_dual_exact(const env::TabularCMDP& m,
                                                 MatrixXd theta, double lambda,
                                                 double alpha, double beta, int iters,
                                                 double ball_radius, double lambda_cap,
                                                 double budget) {
  if (alpha <= 0.0 || beta <= 0.0)
    throw ConfigError("primal-dual: step sizes must be positive");
  if (iters <= 0) throw ConfigError("primal-dual: iteration count must be positive");
  project_ball(theta, ball_radius);
  lambda = std::clamp(lambda, 0.0, lambda_cap);

  std::vector<GradMapSample> trace;
  trace.reserve(static_cast<std::size_t>(iters));
  double g_sum = 0.0, h_sum = 0.0;

  for (int t = 0; t < iters; ++t) {
    MatrixXd grad;
    ExactEval eval = eval_internal(m, softmax_rows(theta), lambda, &grad);

    MatrixXd stepped = theta + alpha * grad;
    project_ball(stepped, ball_radius);
    double lam_stepped = std::clamp(lambda + beta * (eval.j_c - budget), 0.0, lambda_cap);

    GradMapSample s;
    s.t = t;
    s.g_norm = (stepped - theta).norm() / alpha;
    s.h_norm = std::abs(lam_stepped - lambda) / beta;
    g_sum += s.g_norm;
    h_sum += s.h_norm;
    s.g_ergodic = g_sum / (t + 1);
    s.h_ergodic = h_sum / (t + 1);
    s.lambda = lambda;
    s.j_r = eval.j_r;
    s.j_c = eval.j_c;
    trace.push_back(s);

    // The projected points are exactly the next iterates.
    theta = std::move(stepped);
    lambda = lam_stepped;
  }
  return trace;
}

double estimate_smoothness(const env::TabularCMDP& m, double lambda,
                           std::uint64_t seed, int probes) {
  if (probes <= 0) throw ConfigError("smoothness probe count must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> spread(-2.0, 2.0);
  const auto n = static_cast<Eigen::Index>(m.n_states);
  const auto k = static_cast<Eigen::Index>(m.n_actions);
  const double h = 1e-4;

  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    MatrixXd theta(n, k), dir(n, k);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < k; ++j) {
        theta(i, j) = spread(rng);
        dir(i, j) = unit(rng);
      }
    dir /= dir.norm();
    MatrixXd hi = exact_lagrangian_grad(m, theta + h * dir, lambda);
    MatrixXd lo = exact_lagrangian_grad(m, theta - h * dir, lambda);
    worst = std::max(worst, (hi - lo).norm() / (2.0 * h));
  }
  return 2.0 * worst;
}

double admissible_primal_step(const env::TabularCMDP& m, double lambda,
                              std::uint64_t seed) {
  return 1.0 / (4.0 * estimate_smoothness(m, std::max(lambda, 1.0), seed));
}

double study_dual_step(int iters) {
  if (iters <= 0) throw ConfigError("dual step needs a positive iteration count");
  return 0.02 / std::sqrt(static_cast<double>(iters));
}

OracleResult cmdp_oracle(const env::TabularCMDP& m, double budget, int grid) {
  m.validate();
  if (m.n_states * m.n_actions > 12)
    throw ConfigError("oracle limited to 12 state-action pairs, got " +
                      std::to_string(m.n_states * m.n_actions));
  if (grid < 2) throw ConfigError("oracle mixing grid must have at least 2 points");

  const auto n = static_cast<Eigen::Index>(m.n_states);
  const auto k = static_cast<Eigen::Index>(m.n_actions);

  auto one_hot = [&](const std::vector<std::size_t>& choice) {
    MatrixXd pi = MatrixXd::Zero(n, k);
    for (Eigen::Index s = 0; s < n; ++s)
      pi(s, static_cast<Eigen::Index>(choice[static_cast<std::size_t>(s)])) = 1.0;
    return pi;
  };

  bool have_feasible = false, have_infeasible = false;
  OracleResult best;          // best feasible found anywhere
  MatrixXd best_infeasible;   // highest-reward deterministic budget violator
  double best_infeasible_jr = 0.0;

  std::vector<std::size_t> choice(m.n_states, 0);
  for (;;) {
    MatrixXd pi = one_hot(choice);
    ExactEval eval = exact_eval_stochastic(m, pi);
    if (eval.j_c <= budget) {
      if (!have_feasible || eval.j_r > best.j_r) {
        best = OracleResult{eval.j_r, eval.j_c, pi, false};
        have_feasible = true;
      }
    } else if (!have_infeasible || eval.j_r > best_infeasible_jr) {
      best_infeasible = pi;
      best_infeasible_jr = eval.j_r;
      have_infeasible = true;
    }

    // Odometer over action choices.
    std::size_t s = 0;
    while (s < m.n_states && ++choice[s] == m.n_actions) choice[s++] = 0;
    if (s == m.n_states) break;
  }

  if (!have_feasible)
    throw NoFeasiblePolicy("every deterministic policy exceeds budget " +
                           std::to_string(budget));
  if (!have_infeasible) return best;  // budget never binds

  // State-wise interpolation between the fixed deterministic pair; the cost
  // curve is smooth but not linear in the weight, so scan the whole grid and
  // keep the best point that still meets the budget.
  const MatrixXd feasible_end = best.policy;
  for (int g = 1; g < grid; ++g) {
    double w = static_cast<double>(g) / grid;
    MatrixXd pi = (1.0 - w) * feasible_end + w * best_infeasible;
    ExactEval eval = exact_eval_stochastic(m, pi);
    if (eval.j_c <= budget && eval.j_r > best.j_r)
      best = OracleResult{eval.j_r, eval.j_c, std::move(pi), true};
  }
  return best;
}

std::vector<NamedInstance> shipped_instances() {
  std::vector<NamedInstance> out;
  out.push_back({"chain3", env::chain_cmdp(3, 0.1, 0.9), 0.05});
  out.push_back({"chain5", env::chain_cmdp(5, 0.1, 0.98), 0.05});

  // Two states, calm and hot.  The risky action pays only in the hot state,
  // where every step also costs; the safe action pays a trickle and drains
  // back to calm.
  env::TabularCMDP m;
  m.n_states = 2;
  m.n_actions = 2;
  m.P.assign(2, MatrixXd::Zero(2, 2));
  m.P[0] << 1.0, 0.0,   // safe: calm stays calm
            1.0, 0.0;   //       hot cools down
  m.P[1] << 0.1, 0.9,   // risky: calm usually heats up
            0.1, 0.9;   //        hot usually stays hot
  m.r = MatrixXd::Zero(2, 2);
  m.r << 0.2, 0.0,
         1.0, 1.0;
  m.c = MatrixXd::Zero(2, 2);
  m.c << 0.0, 0.0,
         1.0, 1.0;
  m.mu = VectorXd::Zero(2);
  m.mu << 1.0, 0.0;
  m.gamma = 0.95;
  out.push_back({"riskpair", std::move(m), 0.4});
  return out;
}

}  // namespace ltlrl::diag
