#include "ltlrl/rl/policy.hpp"

#include <cmath>

#include "ltlrl/errors.hpp"

namespace ltlrl::rl {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {
constexpr double kLogTwoPi = 1.8378770664093453;  // log(2 pi)
}

GaussianPolicy::GaussianPolicy(std::size_t obs_dim,
                               const std::vector<std::size_t>& hidden,
                               std::size_t act_dim, double log_std_init)
    : shape_([&] {
        std::vector<std::size_t> dims{obs_dim};
        dims.insert(dims.end(), hidden.begin(), hidden.end());
        dims.push_back(act_dim);
        return MlpShape(dims);
      }()),
      act_dim_(act_dim),
      params_(VectorXd::Zero(static_cast<Eigen::Index>(shape_.param_count() + act_dim))) {
  if (act_dim == 0) throw ConfigError("policy needs at least one action dimension");
  params_.tail(static_cast<Eigen::Index>(act_dim_)).setConstant(log_std_init);
}

void GaussianPolicy::init(std::mt19937_64& rng) {
  shape_.init(params_.head(static_cast<Eigen::Index>(shape_.param_count())), rng, 0.01);
}

Eigen::Ref<const VectorXd> GaussianPolicy::net_params() const {
  return params_.head(static_cast<Eigen::Index>(shape_.param_count()));
}

Eigen::Ref<const VectorXd> GaussianPolicy::log_std() const {
  return params_.tail(static_cast<Eigen::Index>(act_dim_));
}

void GaussianPolicy::post_step(double ball_radius) {
  auto tail = params_.tail(static_cast<Eigen::Index>(act_dim_));
  tail = tail.cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
  if (ball_radius > 0.0) project_ball(params_, ball_radius);
}

VectorXd GaussianPolicy::sample(const VectorXd& obs, std::mt19937_64& rng,
                                double* logp) const {
  MatrixXd mean = shape_.forward(net_params(), obs);
  VectorXd sigma = log_std().array().exp();
  std::normal_distribution<double> unit(0.0, 1.0);
  VectorXd z(static_cast<Eigen::Index>(act_dim_));
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = unit(rng);
  if (logp) {
    *logp = -0.5 * z.squaredNorm() - log_std().sum() -
            0.5 * static_cast<double>(act_dim_) * kLogTwoPi;
  }
  return mean.col(0) + sigma.cwiseProduct(z);
}

VectorXd GaussianPolicy::mean_action(const VectorXd& obs) const {
  return shape_.forward(net_params(), obs).col(0);
}

VectorXd GaussianPolicy::log_prob(const MatrixXd& obs, const MatrixXd& act) const {
  if (obs.cols() != act.cols()) throw LengthMismatch("observation/action batch mismatch");
  MatrixXd mean = shape_.forward(net_params(), obs);
  VectorXd inv_sigma = (-log_std()).array().exp();
  MatrixXd z = (act - mean).array().colwise() * inv_sigma.array();
  double base = -log_std().sum() - 0.5 * static_cast<double>(act_dim_) * kLogTwoPi;
  return (-0.5 * z.colwise().squaredNorm().transpose().array() + base).matrix();
}

double GaussianPolicy::entropy(const MatrixXd&) const {
  // Sum over dims of log sigma + (1 + log 2 pi) / 2.
  return log_std().sum() +
         0.5 * static_cast<double>(act_dim_) * (1.0 + kLogTwoPi);
}

void GaussianPolicy::accumulate_grad(const MatrixXd& obs, const MatrixXd& act,
                                     const VectorXd& w, double w_entropy,
                                     Eigen::Ref<VectorXd> grad) const {
  if (obs.cols() != act.cols() || w.size() != obs.cols())
    throw LengthMismatch("gradient batch arrays disagree");
  MlpShape::Cache cache;
  MatrixXd mean = shape_.forward(net_params(), obs, &cache);
  VectorXd inv_sigma = (-log_std()).array().exp();
  MatrixXd z = (act - mean).array().colwise() * inv_sigma.array();

  // d logp / d mean_j = z_j / sigma_j, weighted per sample.
  MatrixXd d_mean = (z.array().colwise() * inv_sigma.array()).rowwise() *
                    w.transpose().array();
  shape_.backward(net_params(), cache, d_mean,
                  grad.head(static_cast<Eigen::Index>(shape_.param_count())));

  // d logp / d log_sigma_j = z_j^2 - 1; the entropy adds w_entropy per dim.
  auto d_log_std = grad.tail(static_cast<Eigen::Index>(act_dim_));
  d_log_std += (z.array().square().matrix() * w -
                w.sum() * VectorXd::Ones(static_cast<Eigen::Index>(act_dim_)));
  d_log_std.array() += w_entropy;
}

TabularPolicy::TabularPolicy(std::size_t n_states, std::size_t n_actions)
    : s_(n_states), a_(n_actions),
      params_(VectorXd::Zero(static_cast<Eigen::Index>(n_states * n_actions))) {
  if (s_ == 0 || a_ == 0) throw ConfigError("tabular policy needs states and actions");
}

void TabularPolicy::post_step(double ball_radius) {
  if (ball_radius > 0.0) project_ball(params_, ball_radius);
}

VectorXd TabularPolicy::probs(int state) const {
  auto row = params_.segment(static_cast<Eigen::Index>(state) * static_cast<Eigen::Index>(a_),
                             static_cast<Eigen::Index>(a_));
  VectorXd e = (row.array() - row.maxCoeff()).exp();
  return e / e.sum();
}

int TabularPolicy::sample(int state, std::mt19937_64& rng, double* logp) const {
  VectorXd p = probs(state);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double roll = u(rng), acc = 0.0;
  int pick = static_cast<int>(a_) - 1;
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    acc += p(a);
    if (roll < acc) {
      pick = static_cast<int>(a);
      break;
    }
  }
  if (logp) *logp = std::log(p(pick));
  return pick;
}

int TabularPolicy::mode_action(int state) const {
  Eigen::Index best = 0;
  probs(state).maxCoeff(&best);
  return static_cast<int>(best);
}

VectorXd TabularPolicy::log_prob(const std::vector<int>& states,
                                 const std::vector<int>& actions) const {
  if (states.size() != actions.size()) throw LengthMismatch("state/action batch mismatch");
  VectorXd out(static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = std::log(probs(states[i])(actions[i]));
  return out;
}

double TabularPolicy::entropy(const std::vector<int>& states) const {
  double sum = 0.0;
  for (int s : states) {
    VectorXd p = probs(s);
    sum -= (p.array() * p.array().log()).sum();
  }
  return states.empty() ? 0.0 : sum / static_cast<double>(states.size());
}

void TabularPolicy::accumulate_grad(const std::vector<int>& states,
                                    const std::vector<int>& actions,
                                    const VectorXd& w, double w_entropy,
                                    Eigen::Ref<VectorXd> grad) const {
  if (states.size() != actions.size() ||
      static_cast<std::size_t>(w.size()) != states.size())
    throw LengthMismatch("gradient batch arrays disagree");
  const double ent_scale =
      states.empty() ? 0.0 : w_entropy / static_cast<double>(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    VectorXd p = probs(states[i]);
    auto row = grad.segment(
        static_cast<Eigen::Index>(states[i]) * static_cast<Eigen::Index>(a_),
        static_cast<Eigen::Index>(a_));
    // d logp(a|s) / d logit_b = [b == a] - p_b.
    row -= w(static_cast<Eigen::Index>(i)) * p;
    row(actions[i]) += w(static_cast<Eigen::Index>(i));
    if (ent_scale != 0.0) {
      // d H(s) / d logit_b = -p_b (log p_b + H).
      double h = -(p.array() * p.array().log()).sum();
      row -= ent_scale * (p.array() * (p.array().log() + h)).matrix();
    }
  }
}

MatrixXd TabularPolicy::logits_matrix() const {
  MatrixXd out(static_cast<Eigen::Index>(s_), static_cast<Eigen::Index>(a_));
  for (std::size_t s = 0; s < s_; ++s)
    for (std::size_t a = 0; a < a_; ++a)
      out(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(a)) =
          params_(static_cast<Eigen::Index>(s * a_ + a));
  return out;
}

MlpCritic::MlpCritic(std::size_t obs_dim, const std::vector<std::size_t>& hidden)
    : shape_([&] {
        std::vector<std::size_t> dims{obs_dim};
        dims.insert(dims.end(), hidden.begin(), hidden.end());
        dims.push_back(1);
        return MlpShape(dims);
      }()),
      params_(VectorXd::Zero(static_cast<Eigen::Index>(shape_.param_count()))) {}

void MlpCritic::init(std::mt19937_64& rng) { shape_.init(params_, rng); }

double MlpCritic::value(const VectorXd& obs) const {
  return shape_.forward(params_, obs)(0, 0);
}

VectorXd MlpCritic::values(const MatrixXd& obs) const {
  return shape_.forward(params_, obs).row(0).transpose();
}

void MlpCritic::accumulate_grad(const MatrixXd& obs, const VectorXd& w,
                                Eigen::Ref<VectorXd> grad) const {
  if (w.size() != obs.cols()) throw LengthMismatch("gradient batch arrays disagree");
  MlpShape::Cache cache;
  shape_.forward(params_, obs, &cache);
  shape_.backward(params_, cache, w.transpose(), grad);
}

TabularCritic::TabularCritic(std::size_t n_states)
    : params_(VectorXd::Zero(static_cast<Eigen::Index>(n_states))) {
  if (n_states == 0) throw ConfigError("tabular critic needs at least one state");
}

double TabularCritic::value(int state) const { return params_(state); }

VectorXd TabularCritic::values(const std::vector<int>& states) const {
  VectorXd out(static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = params_(states[i]);
  return out;
}

void TabularCritic::accumulate_grad(const std::vector<int>& states, const VectorXd& w,
                                    Eigen::Ref<VectorXd> grad) const {
  if (static_cast<std::size_t>(w.size()) != states.size())
    throw LengthMismatch("gradient batch arrays disagree");
  for (std::size_t i = 0; i < states.size(); ++i)
    grad(states[i]) += w(static_cast<Eigen::Index>(i));
}

}  // namespace ltlrl::rl
