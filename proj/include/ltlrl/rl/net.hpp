#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <random>
#include <vector>

namespace ltlrl::rl {

/* Fully connected network with tanh hidden activations and a linear output
 * layer.  The shape object is stateless; parameters are owned by the caller
 * as one flat vector, so optimizers, norm clipping, projection, and
 * checkpoints treat every network the same way.  Flat layout per layer: the
 * weight matrix in column-major order, then the bias. */
struct MlpShape {
  std::vector<std::size_t> dims;  // input, hidden..., output

  explicit MlpShape(std::vector<std::size_t> dims);
  std::size_t param_count() const;

  /* Fan-balanced uniform init with zero biases.  The output layer is scaled
   * by output_scale; policy heads pass a small value so initial actions stay
   * near zero. */
  void init(Eigen::Ref<Eigen::VectorXd> theta, std::mt19937_64& rng,
            double output_scale = 1.0) const;

  struct Cache {
    Eigen::MatrixXd input;
    std::vector<Eigen::MatrixXd> hidden;  // post-tanh activations per layer
  };

  /* x is input x batch; returns output x batch. */
  Eigen::MatrixXd forward(const Eigen::Ref<const Eigen::VectorXd>& theta,
                          const Eigen::MatrixXd& x, Cache* cache = nullptr) const;

  /* Accumulates d(objective)/d(theta) into grad, given d(objective)/d(output)
   * for the batch that produced the cache. */
  void backward(const Eigen::Ref<const Eigen::VectorXd>& theta, const Cache& cache,
                const Eigen::MatrixXd& d_out, Eigen::Ref<Eigen::VectorXd> grad) const;
};

/* First/second-moment adaptive optimizer over one flat parameter group,
 * stepping in the ascent direction. */
class Adam {
 public:
  explicit Adam(std::size_t n, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8);
  void step(Eigen::Ref<Eigen::VectorXd> params, const Eigen::VectorXd& grad,
            double lr);

 private:
  Eigen::VectorXd m_, v_;
  double beta1_, beta2_, eps_;
  long t_ = 0;
};

/* Scales grad down to max_norm when it exceeds it; returns the pre-clip norm. */
double clip_grad_norm(Eigen::Ref<Eigen::VectorXd> grad, double max_norm);

/* Euclidean-ball projection of a flat parameter vector. */
void project_ball(Eigen::Ref<Eigen::VectorXd> params, double radius);

bool all_finite(const Eigen::VectorXd& v);

}  // namespace ltlrl::rl
