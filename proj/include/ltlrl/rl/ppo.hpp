#pragma once

#include <vector>

namespace ltlrl::rl {

/* Mixed advantage signal, before normalization:
 *   A_mix_t = A_r_t - sum_k lambda_k A_c_t^(k). */
std::vector<double> mix_advantages(const std::vector<double>& adv_r,
                                   const std::vector<std::vector<double>>& adv_c,
                                   const std::vector<double>& lambda);

/* In-place shift/scale to mean zero, unit standard deviation (1e-8 floor on
 * the divisor). */
void normalize_advantages(std::vector<double>& adv);

/* mix_advantages followed by normalize_advantages, the form consumed by the
 * surrogate objective. */
std::vector<double> mixed_advantage(const std::vector<double>& adv_r,
                                    const std::vector<std::vector<double>>& adv_c,
                                    const std::vector<double>& lambda);

/* Clipped surrogate objective (to be maximized):
 *   mean_t min(rho_t A_t, clip(rho_t, 1 - eps, 1 + eps) A_t).
 * Throws NonPositiveRatio when any ratio is not strictly positive. */
double ppo_loss(const std::vector<double>& ratios, const std::vector<double>& adv,
                double clip_eps);

/* Derivative of one sample's clipped term with respect to its ratio: the
 * advantage inside the active unclipped region, zero once the clip has cut
 * the sample off. */
double ppo_grad_factor(double ratio, double adv, double clip_eps);

/* Projected dual ascent on the constraint residual:
 *   clip(lambda + alpha (cost_estimate - budget), 0, cap). */
double dual_update(double lambda, double alpha, double cost_estimate, double budget,
                   double cap);

}  // namespace ltlrl::rl
