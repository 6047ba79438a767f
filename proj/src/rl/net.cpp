#include "ltlrl/rl/net.hpp"

#include <cmath>

#include "ltlrl/errors.hpp"

namespace ltlrl::rl {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MlpShape::MlpShape(std::vector<std::size_t> d) : dims(std::move(d)) {
  if (dims.size() < 2) throw ConfigError("network needs an input and an output layer");
  for (std::size_t w : dims)
    if (w == 0) throw ConfigError("network layer width must be positive");
}

std::size_t MlpShape::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) n += dims[l + 1] * (dims[l] + 1);
  return n;
}

void MlpShape::init(Eigen::Ref<VectorXd> theta, std::mt19937_64& rng,
                    double output_scale) const {
  if (static_cast<std::size_t>(theta.size()) != param_count())
    throw LengthMismatch("parameter vector does not match the network shape");
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const std::size_t fan_in = dims[l], fan_out = dims[l + 1];
    double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    if (l + 2 == dims.size()) bound *= output_scale;
    std::uniform_real_distribution<double> u(-bound, bound);
    for (std::size_t i = 0; i < fan_out * fan_in; ++i) theta(static_cast<Eigen::Index>(off + i)) = u(rng);
    off += fan_out * fan_in;
    for (std::size_t i = 0; i < fan_out; ++i) theta(static_cast<Eigen::Index>(off + i)) = 0.0;
    off += fan_out;
  }
}

MatrixXd MlpShape::forward(const Eigen::Ref<const VectorXd>& theta,
                           const MatrixXd& x, Cache* cache) const {
  if (static_cast<std::size_t>(theta.size()) != param_count())
    throw LengthMismatch("parameter vector does not match the network shape");
  if (static_cast<std::size_t>(x.rows()) != dims.front())
    throw LengthMismatch("input rows do not match the network input width");

  if (cache) {
    cache->input = x;
    cache->hidden.clear();
  }
  MatrixXd act = x;
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const auto in = static_cast<Eigen::Index>(dims[l]);
    const auto out = static_cast<Eigen::Index>(dims[l + 1]);
    Eigen::Map<const MatrixXd> w(theta.data() + off, out, in);
    Eigen::Map<const VectorXd> b(theta.data() + off + out * in, out);
    off += static_cast<std::size_t>(out * (in + 1));

    MatrixXd z = (w * act).colwise() + b;
    if (l + 2 < dims.size()) {
      act = z.array().tanh();
      if (cache) cache->hidden.push_back(act);
    } else {
      act = std::move(z);
    }
  }
  return act;
}

void MlpShape::backward(const Eigen::Ref<const VectorXd>& theta, const Cache& cache,
                        const MatrixXd& d_out, Eigen::Ref<VectorXd> grad) const {
  if (grad.size() != theta.size())
    throw LengthMismatch("gradient vector does not match the parameter vector");
  if (cache.hidden.size() + 2 != dims.size())
    throw LengthMismatch("cache does not match the network shape");

  // Offsets of each layer inside the flat vector.
  std::vector<std::size_t> offsets(dims.size() - 1);
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    offsets[l] = off;
    off += dims[l + 1] * (dims[l] + 1);
  }

  MatrixXd dz = d_out;
  for (std::size_t l = dims.size() - 2;; --l) {
    const auto in = static_cast<Eigen::Index>(dims[l]);
    const auto out = static_cast<Eigen::Index>(dims[l + 1]);
    Eigen::Map<const MatrixXd> w(theta.data() + offsets[l], out, in);
    Eigen::Map<MatrixXd> dw(grad.data() + offsets[l], out, in);
    Eigen::Map<VectorXd> db(grad.data() + offsets[l] + out * in, out);

    const MatrixXd& below = l == 0 ? cache.input : cache.hidden[l - 1];
    dw.noalias() += dz * below.transpose();
    db += dz.rowwise().sum();
    if (l == 0) break;
    // Through the tanh of the layer below: act' = 1 - act^2.
    MatrixXd da = w.transpose() * dz;
    dz = da.array() * (1.0 - cache.hidden[l - 1].array().square());
  }
}

Adam::Adam(std::size_t n, double beta1, double beta2, double eps)
    : m_(VectorXd::Zero(static_cast<Eigen::Index>(n))),
      v_(VectorXd::Zero(static_cast<Eigen::Index>(n))),
      beta1_(beta1),
      beta2_(beta2),
      eps_(eps) {}

void Adam::step(Eigen::Ref<VectorXd> params, const VectorXd& grad, double lr) {
  if (params.size() != m_.size() || grad.size() != m_.size())
    throw LengthMismatch("optimizer state does not match the parameter group");
  ++t_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseProduct(grad);
  double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  params += lr * (m_ / bc1).cwiseQuotient(((v_ / bc2).cwiseSqrt().array() + eps_).matrix());
}

double clip_grad_norm(Eigen::Ref<VectorXd> grad, double max_norm) {
  double norm = grad.norm();
  if (norm > max_norm && norm > 0.0) grad *= max_norm / norm;
  return norm;
}

void project_ball(Eigen::Ref<VectorXd> params, double radius) {
  double norm = params.norm();
  if (norm > radius) params *= radius / norm;
}

bool all_finite(const VectorXd& v) { return v.allFinite(); }

}  // namespace ltlrl::rl
