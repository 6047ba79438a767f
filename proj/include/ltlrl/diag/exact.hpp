#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "ltlrl/env/tabular.hpp"

namespace ltlrl::diag {

/* Closed-form instrumentation for tabular constrained MDPs.  Everything here
 * is exact up to the linear solver: values come from (I - gamma P_pi) V = r_pi,
 * occupancies from the transposed system, and policy gradients from the
 * softmax policy-gradient identity.  Policies are given as a logits matrix
 * theta (n_states x n_actions); pi = row-wise softmax(theta). */

/* Row-wise softmax with the usual max-shift for stability. */
Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits);

struct ExactEval {
  Eigen::VectorXd v_r;        // reward value per state
  Eigen::VectorXd v_c;        // cost value per state
  double j_r = 0.0;           // (1-gamma) * mu' v_r
  double j_c = 0.0;           // (1-gamma) * mu' v_c
  Eigen::MatrixXd occupancy;  // discounted state-action visitation, sums to 1
};

/* Evaluates an explicit stochastic policy (rows of pi sum to 1). */
ExactEval exact_eval_stochastic(const env::TabularCMDP& m, const Eigen::MatrixXd& pi);

/* Evaluates the softmax policy induced by a logits matrix. */
ExactEval exact_policy_eval(const env::TabularCMDP& m, const Eigen::MatrixXd& logits);

/* Gradient of L(theta, lambda) = J_R(theta) - lambda * J_C(theta) with
 * respect to the logits, in the same n_states x n_actions layout.  Entry
 * (s, b) equals d(s) * pi(b|s) * (Adv_r(s,b) - lambda * Adv_c(s,b)) where d
 * is the discounted state occupancy. */
Eigen::MatrixXd exact_lagrangian_grad(const env::TabularCMDP& m,
                                      const Eigen::MatrixXd& logits, double lambda);

/* Projected-step residuals measuring first-order stationarity.  The primal
 * map takes an ascent step of size alpha and projects onto the Euclidean
 * ball of the given radius; the dual map takes a step of size beta on the
 * constraint residual J_C - budget and projects onto [0, lambda_cap].  Both
 * are scaled back by the step size, so a fixed point has zero norm. */
struct GradMaps {
  double g_norm = 0.0;  // primal residual norm
  double h_norm = 0.0;  // dual residual magnitude
};

GradMaps grad_maps(const env::TabularCMDP& m, const Eigen::MatrixXd& logits,
                   double lambda, double alpha, double beta, double ball_radius,
                   double lambda_cap, double budget);

/* One record per primal-dual iteration, with running ergodic means of the
 * residual norms alongside the raw values. */
struct GradMapSample {
  int t = 0;
  double g_norm = 0.0;
  double h_norm = 0.0;
  double g_ergodic = 0.0;
  double h_ergodic = 0.0;
  double lambda = 0.0;
  double j_r = 0.0;
  double j_c = 0.0;
};

/* Runs the exact projected primal-dual iteration
 *   theta <- proj_ball(theta + alpha * grad L),  lambda <- clip(lambda + beta (J_C - d))
 * for `iters` steps and records the residual trace.  Callers are responsible
 * for an admissible step size; admissible_primal_step below provides one. */
std::vector<GradMapSample> run_primal_dual_exact(const env::TabularCMDP& m,
                                                 Eigen::MatrixXd theta, double lambda,
                                                 double alpha, double beta, int iters,
                                                 double ball_radius, double lambda_cap,
                                                 double budget);

/* Empirical smoothness bound for grad L at the given multiplier: the largest
 * finite-difference curvature seen over random probe points and directions,
 * doubled as a safety margin.  Deterministic in the seed. */
double estimate_smoothness(const env::TabularCMDP& m, double lambda,
                           std::uint64_t seed, int probes = 100);

/* 1 / (4 * estimate_smoothness), the step size the stationarity analysis
 * assumes.  Probes at the larger of lambda and 1 so the bound stays valid
 * while the multiplier is small. */
double admissible_primal_step(const env::TabularCMDP& m, double lambda,
                              std::uint64_t seed);

/* Dual step used by the shipped stationarity studies: 0.02 / sqrt(iters).
 * Small enough that multiplier drift stays below the primal residual floor,
 * which keeps the ergodic residual mean monotone after burn-in. */
double study_dual_step(int iters);

/* Best feasible policy found by exhaustive search: evaluates every
 * deterministic policy exactly, then refines by mixing the best feasible and
 * best infeasible deterministic policies state-wise on a weight grid.  Only
 * intended for tiny instances; throws ConfigError above 12 state-action
 * pairs and NoFeasiblePolicy when no deterministic policy meets the budget.
 * The reported value is a lower bound on the true constrained optimum. */
struct OracleResult {
  double j_r = 0.0;
  double j_c = 0.0;
  Eigen::MatrixXd policy;  // stochastic, n_states x n_actions
  bool mixed = false;      // true when a mixture beat every deterministic policy
};

OracleResult cmdp_oracle(const env::TabularCMDP& m, double budget, int grid = 1000);

/* Named study instances for the stationarity checks: two slippery chains and
 * a two-state risk/return trade-off, each with its budget. */
struct NamedInstance {
  std::string name;
  env::TabularCMDP m;
  double budget = 0.0;
};

std::vector<NamedInstance> shipped_instances();

}  // namespace ltlrl::diag
