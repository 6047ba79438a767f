#include "ltlrl/env/tabular.hpp"

#include <cmath>

#include "ltlrl/errors.hpp"

namespace ltlrl::env {

void TabularCMDP::validate() const {
  if (n_states == 0 || n_actions == 0) throw ConfigError("CMDP needs states and actions");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (P.size() != n_actions) throw ConfigError("P needs one matrix per action");
  for (std::size_t a = 0; a < n_actions; ++a) {
    if (P[a].rows() != Eigen::Index(n_states) || P[a].cols() != Eigen::Index(n_states))
      throw ConfigError("P matrix has the wrong shape");
    for (Eigen::Index s = 0; s < P[a].rows(); ++s) {
      if (P[a].row(s).minCoeff() < 0.0) throw ConfigError("negative transition probability");
      if (std::abs(P[a].row(s).sum() - 1.0) > 1e-12)
        throw ConfigError("transition row does not sum to one");
    }
  }
  auto table_ok = [&](const Eigen::MatrixXd& t) {
    return t.rows() == Eigen::Index(n_states) && t.cols() == Eigen::Index(n_actions);
  };
  if (!table_ok(r) || !table_ok(c)) throw ConfigError("reward or cost table has the wrong shape");
  if (c.minCoeff() < 0.0) throw ConfigError("costs must be nonnegative");
  if (mu.size() != Eigen::Index(n_states) || mu.minCoeff() < 0.0 ||
      std::abs(mu.sum() - 1.0) > 1e-12)
    throw ConfigError("mu must be a distribution over states");
}

std::size_t TabularCMDP::sample_initial(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = u(rng), acc = 0.0;
  for (std::size_t s = 0; s + 1 < n_states; ++s) {
    acc += mu[Eigen::Index(s)];
    if (x < acc) return s;
  }
  return n_states - 1;
}

std::size_t TabularCMDP::sample_next(std::size_t s, std::size_t a, std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = u(rng), acc = 0.0;
  for (std::size_t t = 0; t + 1 < n_states; ++t) {
    acc += P[a](Eigen::Index(s), Eigen::Index(t));
    if (x < acc) return t;
  }
  return n_states - 1;
}

TabularCMDP chain_cmdp(std::size_t n, double p_slip, double gamma) {
  if (n < 3) throw ConfigError("chain needs at least 3 states");
  if (!(p_slip >= 0.0 && p_slip < 0.5)) throw ConfigError("p_slip must lie in [0, 0.5)");

  TabularCMDP m;
  m.n_states = n;
  m.n_actions = 2;
  m.gamma = gamma;
  m.P.assign(2, Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n)));
  for (std::size_t s = 0; s < n; ++s) {
    m.P[kChainStay](Eigen::Index(s), Eigen::Index(s)) = 1.0;
    if (s + 1 < n) {
      m.P[kChainRight](Eigen::Index(s), Eigen::Index(s + 1)) = 1.0 - p_slip;
      m.P[kChainRight](Eigen::Index(s), Eigen::Index(s)) = p_slip;
    } else {
      m.P[kChainRight](Eigen::Index(s), Eigen::Index(s)) = 1.0;
    }
  }
  m.r = Eigen::MatrixXd::Zero(Eigen::Index(n), 2);
  m.c = Eigen::MatrixXd::Zero(Eigen::Index(n), 2);
  m.r.row(Eigen::Index(n - 1)).setConstant(1.0);
  m.c.row(Eigen::Index(n - 1)).setConstant(1.0);
  m.r.row(Eigen::Index(n - 2)).setConstant(0.5);
  m.mu = Eigen::VectorXd::Zero(Eigen::Index(n));
  m.mu[0] = 1.0;
  m.validate();
  return m;
}

}  // namespace ltlrl::env
