#include "ltlrl/rl/ppo.hpp"

#include <algorithm>
#include <cmath>

#include "ltlrl/errors.hpp"

namespace ltlrl::rl {

std::vector<double> mix_advantages(const std::vector<double>& adv_r,
                                   const std::vector<std::vector<double>>& adv_c,
                                   const std::vector<double>& lambda) {
  if (adv_c.size() != lambda.size())
    throw LengthMismatch("one multiplier per cost advantage stream required");
  for (const auto& stream : adv_c)
    if (stream.size() != adv_r.size())
      throw LengthMismatch("cost advantages misaligned with reward advantages");

  std::vector<double> out = adv_r;
  for (std::size_t k = 0; k < adv_c.size(); ++k)
    for (std::size_t t = 0; t < out.size(); ++t) out[t] -= lambda[k] * adv_c[k][t];
  return out;
}

void normalize_advantages(std::vector<double>& adv) {
  if (adv.empty()) return;
  double mean = 0.0;
  for (double a : adv) mean += a;
  mean /= static_cast<double>(adv.size());
  double var = 0.0;
  for (double a : adv) var += (a - mean) * (a - mean);
  var /= static_cast<double>(adv.size());
  double scale = 1.0 / (std::sqrt(var) + 1e-8);
  for (double& a : adv) a = (a - mean) * scale;
}

std::vector<double> mixed_advantage(const std::vector<double>& adv_r,
                                    const std::vector<std::vector<double>>& adv_c,
                                    const std::vector<double>& lambda) {
  std::vector<double> out = mix_advantages(adv_r, adv_c, lambda);
  normalize_advantages(out);
  return out;
}

double ppo_loss(const std::vector<double>& ratios, const std::vector<double>& adv,
                double clip_eps) {
  if (ratios.size() != adv.size()) throw LengthMismatch("ratios misaligned with advantages");
  if (ratios.empty()) throw LengthMismatch("empty surrogate batch");
  double sum = 0.0;
  for (std::size_t t = 0; t < ratios.size(); ++t) {
    if (!(ratios[t] > 0.0))
      throw NonPositiveRatio("probability ratio " + std::to_string(ratios[t]) +
                             " at sample " + std::to_string(t));
    double clipped = std::clamp(ratios[t], 1.0 - clip_eps, 1.0 + clip_eps);
    sum += std::min(ratios[t] * adv[t], clipped * adv[t]);
  }
  return sum / static_cast<double>(ratios.size());
}

double ppo_grad_factor(double ratio, double adv, double clip_eps) {
  if ((adv > 0.0 && ratio > 1.0 + clip_eps) || (adv < 0.0 && ratio < 1.0 - clip_eps))
    return 0.0;
  return adv;
}

double dual_update(double lambda, double alpha, double cost_estimate, double budget,
                   double cap) {
  return std::clamp(lambda + alpha * (cost_estimate - budget), 0.0, cap);
}

}  // namespace ltlrl::rl
