#include "ltlrl/rl/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ltlrl/diag/exact.hpp"
#include "ltlrl/env/tabular.hpp"
#include "ltlrl/env/zones.hpp"
#include "ltlrl/errors.hpp"
#include "ltlrl/rl/gae.hpp"
#include "ltlrl/rl/net.hpp"
#include "ltlrl/rl/policy.hpp"
#include "ltlrl/rl/ppo.hpp"
#include "ltlrl/util/csv.hpp"
#include "ltlrl/util/seed.hpp"

namespace ltlrl::rl {

namespace {

using autom::MonitorEvent;

/* What one environment step hands the trainer, uniform across worlds. */
struct WorldStep {
  double reward = 0.0;
  mon::CostVector cost;
  bool done = false;
  bool truncated = false;
  bool hit_wall = false;
  bool goals = false;  // meaningful on the step that ends the episode
};

/* Running accumulator for the episode in flight in one environment. */
struct EpisodeLog {
  double ret = 0.0;
  std::size_t len = 0;
  bool wall = false;
  int events = 0;
  std::vector<mon::CostVector> rows;

  void clear() {
    ret = 0.0;
    len = 0;
    wall = false;
    events = 0;
    rows.clear();
  }
};

/* Sums over the episodes that finished during one iteration. */
struct EpisodeStats {
  int n = 0;
  double ret = 0.0, len = 0.0, wall = 0.0, goal = 0.0, events = 0.0;
  std::vector<double> cost;
};

/* Square arena with monitored discs: continuous observations and actions,
 * Gaussian policy, MLP critics, one cost channel per constrained spec. */
class ZonesWorld {
 public:
  using Policy = GaussianPolicy;
  using Critic = MlpCritic;
  using Obs = Eigen::VectorXd;
  using Act = Eigen::VectorXd;
  using ObsBatch = Eigen::MatrixXd;
  using ActBatch = Eigen::MatrixXd;

  ZonesWorld(const RunConfig& cfg, std::uint64_t seed)
      : cfg_(cfg), specs_(mon::load_spec_set(cfg.spec_file)) {
    env::ZonesConfig zc = cfg.zones;
    for (const auto& nz : cfg.fixed_zones) {
      auto idx = specs_.alphabet.find(nz.prop);
      if (!idx)
        throw ConfigError("fixed zone proposition \"" + nz.prop +
                          "\" is not in the spec alphabet");
      zc.fixed_zones.push_back(env::Zone{*idx, nz.x, nz.y, nz.radius});
    }
    envs_.reserve(cfg.ppo.n_envs);
    for (int e = 0; e < cfg.ppo.n_envs; ++e) {
      zc.seed = util::derive_seed(seed, "env", static_cast<std::uint64_t>(e));
      envs_.emplace_back(zc, specs_);
    }
    if (cfg.dual.enabled)
      for (std::size_t k = 0; k < specs_.specs.size(); ++k)
        if (specs_.specs[k].weight > 0.0) {
          constrained_.push_back(k);
          budgets_.push_back(cfg.dual.cost_limit >= 0.0 ? cfg.dual.cost_limit
                                                        : specs_.specs[k].budget);
        }
  }

  const char* kind_name() const { return "zones"; }
  std::size_t obs_dim() const { return envs_.front().observation_size(); }
  std::size_t act_dim() const { return 2; }
  std::vector<std::size_t> net_hidden() const { return cfg_.ppo.hidden; }

  std::vector<std::string> cost_ids() const {
    std::vector<std::string> out;
    for (const auto& s : specs_.specs) out.push_back(s.id);
    return out;
  }
  const std::vector<std::size_t>& constrained() const { return constrained_; }
  const std::vector<double>& budgets() const { return budgets_; }

  Obs reset(std::size_t e) { return to_vec(envs_[e].reset()); }

  Obs step(std::size_t e, const Act& a, WorldStep& out) {
    env::StepResult r = envs_[e].step(a(0), a(1));
    out.reward = r.reward;
    out.done = r.done;
    out.truncated = r.info.at("truncated") == "1";
    out.hit_wall = r.info.at("hit_wall") == "1";
    out.goals = r.done && envs_[e].monitor().all_goals_met();
    out.cost = std::move(r.cost);
    return to_vec(r.obs);
  }

  std::vector<double> episode_cost(const std::vector<mon::CostVector>& rows, double gamma,
                                   mon::SummaryMode mode) const {
    return mon::episode_cost_summary(rows, gamma, mode).per_spec;
  }

  void exact_metrics(const Policy&, const std::vector<double>&, IterationMetrics&) const {}

  static ObsBatch make_obs(std::size_t dim, std::size_t n) { return ObsBatch(dim, n); }
  static ActBatch make_act(std::size_t dim, std::size_t n) { return ActBatch(dim, n); }
  static void put_obs(ObsBatch& b, std::size_t i, const Obs& o) { b.col(i) = o; }
  static void put_act(ActBatch& b, std::size_t i, const Act& a) { b.col(i) = a; }
  static ObsBatch gather_obs(const ObsBatch& b, const std::vector<int>& idx) {
    ObsBatch out(b.rows(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) out.col(j) = b.col(idx[j]);
    return out;
  }
  static ActBatch gather_act(const ActBatch& b, const std::vector<int>& idx) {
    return gather_obs(b, idx);
  }

 private:
  static Obs to_vec(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }

  RunConfig cfg_;
  mon::SpecSet specs_;
  std::vector<env::ZonesEnv> envs_;
  std::vector<std::size_t> constrained_;
  std::vector<double> budgets_;
};

/* Slippery chain: discrete states and actions, softmax policy, value tables,
 * a single cost channel.  Episodes truncate at a fixed length, so every
 * episode end bootstraps. */
class ChainWorld {
 public:
  using Policy = TabularPolicy;
  using Critic = TabularCritic;
  using Obs = int;
  using Act = int;
  using ObsBatch = std::vector<int>;
  using ActBatch = std::vector<int>;

  ChainWorld(const RunConfig& cfg, std::uint64_t seed)
      : cfg_(cfg), m_(env::chain_cmdp(cfg.chain.n_states, cfg.chain.p_slip, cfg.ppo.gamma)) {
    for (int e = 0; e < cfg.ppo.n_envs; ++e)
      rngs_.emplace_back(util::derive_seed(seed, "env", static_cast<std::uint64_t>(e)));
    states_.assign(cfg.ppo.n_envs, 0);
    steps_.assign(cfg.ppo.n_envs, 0);
    if (cfg.dual.enabled) {
      constrained_.push_back(0);
      budgets_.push_back(cfg.dual.cost_limit);
    }
  }

  const char* kind_name() const { return "chain"; }
  std::size_t obs_dim() const { return m_.n_states; }
  std::size_t act_dim() const { return m_.n_actions; }
  std::vector<std::size_t> net_hidden() const { return {}; }

  std::vector<std::string> cost_ids() const { return {"cost"}; }
  const std::vector<std::size_t>& constrained() const { return constrained_; }
  const std::vector<double>& budgets() const { return budgets_; }

  Obs reset(std::size_t e) {
    steps_[e] = 0;
    states_[e] = static_cast<int>(m_.sample_initial(rngs_[e]));
    return states_[e];
  }

  Obs step(std::size_t e, Act a, WorldStep& out) {
    int s = states_[e];
    double c = m_.c(s, a);
    out.reward = m_.r(s, a);
    out.cost.raw.assign(1, c);
    out.cost.events.clear();
    out.cost.aggregate = c;
    out.hit_wall = false;
    int next = static_cast<int>(m_.sample_next(s, a, rngs_[e]));
    steps_[e] += 1;
    out.truncated = steps_[e] >= cfg_.chain.episode_len;
    out.done = out.truncated;
    out.goals = next >= static_cast<int>(m_.n_states) - 2;
    states_[e] = next;
    return next;
  }

  /* Discounted summaries are scaled by (1 - gamma) into the same units the
   * exact evaluator and the oracle report, so chain budgets read identically
   * everywhere. */
  std::vector<double> episode_cost(const std::vector<mon::CostVector>& rows, double gamma,
                                   mon::SummaryMode mode) const {
    auto summary = mon::episode_cost_summary(rows, gamma, mode);
    if (mode == mon::SummaryMode::Discounted)
      for (auto& v : summary.per_spec) v *= 1.0 - gamma;
    return summary.per_spec;
  }

  void exact_metrics(const Policy& pol, const std::vector<double>& lam,
                     IterationMetrics& m) const {
    Eigen::MatrixXd logits = pol.logits_matrix();
    double l0 = lam.empty() ? 0.0 : lam[0];
    double budget = budgets_.empty() ? 0.0 : budgets_[0];
    diag::ExactEval ev = diag::exact_policy_eval(m_, logits);
    diag::GradMaps maps =
        diag::grad_maps(m_, logits, l0, 0.01, 0.01, cfg_.ppo.param_ball, cfg_.dual.cap, budget);
    m.exact_jr = ev.j_r;
    m.exact_jc = ev.j_c;
    m.g_norm = maps.g_norm;
    m.h_norm = maps.h_norm;
  }

  static ObsBatch make_obs(std::size_t, std::size_t n) { return ObsBatch(n, 0); }
  static ActBatch make_act(std::size_t, std::size_t n) { return ActBatch(n, 0); }
  static void put_obs(ObsBatch& b, std::size_t i, Obs o) { b[i] = o; }
  static void put_act(ActBatch& b, std::size_t i, Act a) { b[i] = a; }
  static ObsBatch gather_obs(const ObsBatch& b, const std::vector<int>& idx) {
    ObsBatch out(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) out[j] = b[idx[j]];
    return out;
  }
  static ActBatch gather_act(const ActBatch& b, const std::vector<int>& idx) {
    return gather_obs(b, idx);
  }

 private:
  RunConfig cfg_;
  env::TabularCMDP m_;
  std::vector<std::mt19937_64> rngs_;
  std::vector<int> states_;
  std::vector<std::size_t> steps_;
  std::vector<std::size_t> constrained_;
  std::vector<double> budgets_;
};

std::string grad_dump(const char* which, long long iter, int epoch, std::size_t mb,
                      double param_norm, double w_max) {
  std::ostringstream oss;
  oss << which << " gradient became non-finite at iteration " << iter << ", epoch " << epoch
      << ", minibatch " << mb << " (|params| = " << param_norm << ", max |w| = " << w_max
      << ")";
  return oss.str();
}

template <class World>
TrainResult train_core(const RunConfig& cfg, std::uint64_t seed, World world,
                       typename World::Policy policy,
                       std::vector<typename World::Critic> critics) {
  const PpoConfig& pc = cfg.ppo;
  const std::size_t n_envs = static_cast<std::size_t>(pc.n_envs);
  const std::size_t horizon = static_cast<std::size_t>(pc.horizon);
  const std::size_t N = n_envs * horizon;
  const auto& constrained = world.constrained();
  const std::size_t K = constrained.size();
  const std::size_t n_channels = 1 + K;  // reward critic plus one per constraint

  const long long iters =
      (cfg.total_steps + static_cast<long long>(N) - 1) / static_cast<long long>(N);

  std::mt19937_64 act_rng(util::derive_seed(seed, "act"));
  std::mt19937_64 shuffle_rng(util::derive_seed(seed, "shuffle"));

  Adam policy_adam(static_cast<std::size_t>(policy.params().size()));
  std::vector<Adam> critic_adams;
  for (const auto& c : critics)
    critic_adams.emplace_back(static_cast<std::size_t>(c.params().size()));

  std::vector<double> lam(K, cfg.dual.init);

  std::vector<typename World::Obs> cur(n_envs);
  std::vector<EpisodeLog> ep(n_envs);
  for (std::size_t e = 0; e < n_envs; ++e) cur[e] = world.reset(e);

  auto full_obs = World::make_obs(world.obs_dim(), N);
  auto full_act = World::make_act(world.act_dim(), N);
  std::vector<double> rewards(N), logp_old(N);
  std::vector<std::uint8_t> done(N);
  std::vector<std::vector<double>> cost_flat(K, std::vector<double>(N));

  TrainResult res;
  res.cost_ids = world.cost_ids();
  for (std::size_t k : constrained) res.lambda_ids.push_back(res.cost_ids[k]);
  res.exact_columns = cfg.exact_diagnostics;
  const std::size_t n_cost = res.cost_ids.size();

  IterationMetrics last;  // carries episode statistics across quiet iterations
  last.cost.assign(n_cost, 0.0);

  for (long long it = 0; it < iters; ++it) {
    double progress = iters > 1 ? static_cast<double>(it) / static_cast<double>(iters - 1) : 0.0;
    double lr = pc.lr_init + (pc.lr_final - pc.lr_init) * progress;

    // --- collect one batch ---------------------------------------------
    EpisodeStats stats;
    stats.cost.assign(n_cost, 0.0);
    std::vector<std::pair<std::size_t, typename World::Obs>> truncs;

    for (std::size_t e = 0; e < n_envs; ++e) {
      for (std::size_t t = 0; t < horizon; ++t) {
        std::size_t i = e * horizon + t;
        World::put_obs(full_obs, i, cur[e]);
        double lp = 0.0;
        auto a = policy.sample(cur[e], act_rng, &lp);
        World::put_act(full_act, i, a);
        logp_old[i] = lp;

        WorldStep ws;
        auto next = world.step(e, a, ws);
        rewards[i] = ws.reward;
        for (std::size_t k = 0; k < K; ++k) cost_flat[k][i] = ws.cost.raw[constrained[k]];
        done[i] = ws.done ? 1 : 0;

        ep[e].ret += ws.reward;
        ep[e].len += 1;
        ep[e].wall = ep[e].wall || ws.hit_wall;
        for (MonitorEvent ev : ws.cost.events)
          if (ev == MonitorEvent::SubtaskComplete || ev == MonitorEvent::Satisfied)
            ep[e].events += 1;
        ep[e].rows.push_back(std::move(ws.cost));

        if (ws.done) {
          if (ws.truncated) truncs.emplace_back(i, next);
          auto per = world.episode_cost(ep[e].rows, pc.gamma, cfg.dual.summary);
          stats.n += 1;
          stats.ret += ep[e].ret;
          stats.len += static_cast<double>(ep[e].len);
          stats.wall += ep[e].wall ? 1.0 : 0.0;
          stats.goal += ws.goals ? 1.0 : 0.0;
          stats.events += ep[e].events;
          for (std::size_t c = 0; c < n_cost; ++c) stats.cost[c] += per[c];
          ep[e].clear();
          cur[e] = world.reset(e);
        } else {
          cur[e] = next;
        }
      }
    }

    // --- values, bootstraps, advantages ---------------------------------
    std::vector<Eigen::VectorXd> vals(n_channels);
    for (std::size_t ch = 0; ch < n_channels; ++ch) vals[ch] = critics[ch].values(full_obs);

    std::vector<std::vector<double>> boot(n_channels, std::vector<double>(n_envs, 0.0));
    for (std::size_t e = 0; e < n_envs; ++e)
      if (!done[e * horizon + horizon - 1])
        for (std::size_t ch = 0; ch < n_channels; ++ch) boot[ch][e] = critics[ch].value(cur[e]);

    std::vector<double> x_r = rewards;
    std::vector<std::vector<double>> x_c = cost_flat;
    for (const auto& [i, obs] : truncs) {
      x_r[i] += pc.gamma * critics[0].value(obs);
      for (std::size_t k = 0; k < K; ++k) x_c[k][i] += pc.gamma * critics[1 + k].value(obs);
    }

    auto stream_adv = [&](const std::vector<double>& x, const Eigen::VectorXd& v,
                          const std::vector<double>& bo) {
      std::vector<double> adv(N);
      std::vector<double> xs(horizon), vs(horizon + 1);
      std::vector<std::uint8_t> ds(horizon);
      for (std::size_t e = 0; e < n_envs; ++e) {
        for (std::size_t t = 0; t < horizon; ++t) {
          std::size_t i = e * horizon + t;
          xs[t] = x[i];
          vs[t] = v(static_cast<Eigen::Index>(i));
          ds[t] = done[i];
        }
        vs[horizon] = bo[e];
        auto a = gae(xs, vs, ds, pc.gamma, pc.gae_lambda);
        for (std::size_t t = 0; t < horizon; ++t) adv[e * horizon + t] = a[t];
      }
      return adv;
    };

    std::vector<double> adv_r = stream_adv(x_r, vals[0], boot[0]);
    std::vector<std::vector<double>> adv_c(K);
    for (std::size_t k = 0; k < K; ++k) adv_c[k] = stream_adv(x_c[k], vals[1 + k], boot[1 + k]);

    std::vector<std::vector<double>> rets(n_channels, std::vector<double>(N));
    for (std::size_t i = 0; i < N; ++i) {
      rets[0][i] = adv_r[i] + vals[0](static_cast<Eigen::Index>(i));
      for (std::size_t k = 0; k < K; ++k)
        rets[1 + k][i] = adv_c[k][i] + vals[1 + k](static_cast<Eigen::Index>(i));
    }

    std::vector<double> adv_mix = mixed_advantage(adv_r, adv_c, lam);

    // Old-policy snapshot check: before any update the recomputed densities
    // must reproduce the stored ones, so every ratio sits at one.
    double ratio_dev = 0.0;
    {
      Eigen::VectorXd lp0 = policy.log_prob(full_obs, full_act);
      for (std::size_t i = 0; i < N; ++i)
        ratio_dev = std::max(
            ratio_dev, std::abs(std::exp(lp0(static_cast<Eigen::Index>(i)) - logp_old[i]) - 1.0));
    }

    // --- PPO epochs ------------------------------------------------------
    std::vector<int> idx(N);
    std::iota(idx.begin(), idx.end(), 0);
    Eigen::VectorXd pgrad(policy.params().size());
    std::vector<Eigen::VectorXd> cgrads;
    for (const auto& c : critics) cgrads.emplace_back(c.params().size());

    double grad_norm_sum = 0.0;
    std::size_t mb_count = 0;
    for (int epoch = 0; epoch < pc.epochs; ++epoch) {
      std::shuffle(idx.begin(), idx.end(), shuffle_rng);
      for (std::size_t start = 0; start < N; start += static_cast<std::size_t>(pc.minibatch)) {
        std::size_t stop = std::min(start + static_cast<std::size_t>(pc.minibatch), N);
        std::vector<int> mb(idx.begin() + static_cast<std::ptrdiff_t>(start),
                            idx.begin() + static_cast<std::ptrdiff_t>(stop));
        auto ob = World::gather_obs(full_obs, mb);
        auto ab = World::gather_act(full_act, mb);
        Eigen::VectorXd lp = policy.log_prob(ob, ab);
        const std::size_t B = mb.size();

        Eigen::VectorXd w(B);
        double w_max = 0.0;
        for (std::size_t j = 0; j < B; ++j) {
          double rho = std::exp(lp(static_cast<Eigen::Index>(j)) - logp_old[mb[j]]);
          if (!std::isfinite(rho))
            throw NanGradient(grad_dump("ratio", it, epoch, start / pc.minibatch,
                                        policy.params().norm(), rho));
          if (!(rho > 0.0))
            throw NonPositiveRatio("probability ratio " + std::to_string(rho) +
                                   " at iteration " + std::to_string(it));
          w(static_cast<Eigen::Index>(j)) =
              ppo_grad_factor(rho, adv_mix[mb[j]], pc.clip) * rho / static_cast<double>(B);
          w_max = std::max(w_max, std::abs(w(static_cast<Eigen::Index>(j))));
        }

        pgrad.setZero();
        policy.accumulate_grad(ob, ab, w, pc.entropy_coef, pgrad);
        if (!all_finite(pgrad))
          throw NanGradient(grad_dump("policy", it, epoch, start / pc.minibatch,
                                      policy.params().norm(), w_max));
        grad_norm_sum += clip_grad_norm(pgrad, pc.max_grad_norm);
        mb_count += 1;
        policy_adam.step(policy.params(), pgrad, lr);
        policy.post_step(pc.project_params ? pc.param_ball : 0.0);

        for (std::size_t ch = 0; ch < n_channels; ++ch) {
          Eigen::VectorXd v = critics[ch].values(ob);
          Eigen::VectorXd wv(B);
          for (std::size_t j = 0; j < B; ++j)
            wv(static_cast<Eigen::Index>(j)) =
                -pc.value_coef * (v(static_cast<Eigen::Index>(j)) - rets[ch][mb[j]]) /
                static_cast<double>(B);
          cgrads[ch].setZero();
          critics[ch].accumulate_grad(ob, wv, cgrads[ch]);
          if (!all_finite(cgrads[ch]))
            throw NanGradient(grad_dump("critic", it, epoch, start / pc.minibatch,
                                        critics[ch].params().norm(), wv.cwiseAbs().maxCoeff()));
          clip_grad_norm(cgrads[ch], pc.max_grad_norm);
          critic_adams[ch].step(critics[ch].params(), cgrads[ch], lr);
        }
      }
    }

    // --- dual ascent, once per batch ------------------------------------
    if (stats.n > 0)
      for (std::size_t k = 0; k < K; ++k) {
        double jhat = stats.cost[constrained[k]] / stats.n;
        lam[k] = dual_update(lam[k], cfg.dual.alpha, jhat, world.budgets()[k], cfg.dual.cap);
      }

    // --- metrics ---------------------------------------------------------
    if (stats.n > 0) {
      last.ep_return = stats.ret / stats.n;
      last.ep_len = stats.len / stats.n;
      last.hit_wall_rate = stats.wall / stats.n;
      last.goal_rate = stats.goal / stats.n;
      last.subtask_events = stats.events / stats.n;
      for (std::size_t c = 0; c < n_cost; ++c) last.cost[c] = stats.cost[c] / stats.n;
    }
    IterationMetrics m = last;
    m.iter = it;
    m.env_steps = (it + 1) * static_cast<long long>(N);
    m.lr = lr;
    m.ratio_dev = ratio_dev;
    m.policy_grad_norm = mb_count > 0 ? grad_norm_sum / static_cast<double>(mb_count) : 0.0;
    m.lambda = lam;
    if (cfg.exact_diagnostics) world.exact_metrics(policy, lam, m);
    res.history.push_back(std::move(m));
  }

  // --- checkpoint --------------------------------------------------------
  Checkpoint& ck = res.checkpoint;
  ck.env_kind = world.kind_name();
  ck.obs_dim = world.obs_dim();
  ck.act_dim = world.act_dim();
  ck.hidden = world.net_hidden();
  ck.policy = policy.params();
  ck.critic_r = critics[0].params();
  for (std::size_t k = 0; k < K; ++k) ck.critic_c.push_back(critics[1 + k].params());
  ck.lambda = lam;
  {
    std::ostringstream oss;
    oss << act_rng;
    ck.rng.emplace_back("act", oss.str());
  }
  {
    std::ostringstream oss;
    oss << shuffle_rng;
    ck.rng.emplace_back("shuffle", oss.str());
  }
  ck.env_steps = iters * static_cast<long long>(N);
  ck.iteration = iters;
  return res;
}

template <class World, class Policy>
EvalReport eval_core(World world, const Policy& policy, int episodes) {
  EvalReport rep;
  rep.spec_ids = world.cost_ids();
  const std::size_t n_specs = rep.spec_ids.size();
  rep.violation_rate.assign(n_specs, 0.0);
  for (int n = 0; n < episodes; ++n) {
    auto obs = world.reset(0);
    EvalEpisode epi;
    epi.violations.assign(n_specs, 0);
    bool running = true;
    while (running) {
      typename World::Act a;
      if constexpr (std::is_same_v<Policy, GaussianPolicy>)
        a = policy.mean_action(obs);
      else
        a = policy.mode_action(obs);
      WorldStep ws;
      obs = world.step(0, a, ws);
      epi.ret += ws.reward;
      epi.len += 1;
      epi.hit_wall = epi.hit_wall || ws.hit_wall;
      if (!ws.cost.events.empty()) {
        for (std::size_t k = 0; k < n_specs; ++k)
          if (ws.cost.events[k] == MonitorEvent::Violation) epi.violations[k] += 1;
      } else {
        for (std::size_t k = 0; k < n_specs; ++k)
          if (ws.cost.raw[k] > 0.0) epi.violations[k] += 1;
      }
      if (ws.done) {
        epi.goals_met = ws.goals;
        running = false;
      }
    }
    for (std::size_t k = 0; k < n_specs; ++k)
      if (epi.violations[k] > 0) rep.violation_rate[k] += 1.0;
    rep.episodes.push_back(std::move(epi));
  }
  if (episodes > 0)
    for (auto& v : rep.violation_rate) v /= static_cast<double>(episodes);
  return rep;
}

}  // namespace

TrainResult train(const RunConfig& cfg, std::uint64_t seed) {
  if (cfg.kind == EnvKind::Zones) {
    ZonesWorld world(cfg, seed);
    GaussianPolicy policy(world.obs_dim(), cfg.ppo.hidden, world.act_dim(),
                          cfg.ppo.log_std_init);
    {
      std::mt19937_64 rng(util::derive_seed(seed, "policy"));
      policy.init(rng);
    }
    std::vector<MlpCritic> critics;
    critics.emplace_back(world.obs_dim(), cfg.ppo.hidden);
    {
      std::mt19937_64 rng(util::derive_seed(seed, "critic_r"));
      critics[0].init(rng);
    }
    for (std::size_t k = 0; k < world.constrained().size(); ++k) {
      critics.emplace_back(world.obs_dim(), cfg.ppo.hidden);
      std::mt19937_64 rng(util::derive_seed(seed, "critic_c", k));
      critics.back().init(rng);
    }
    return train_core(cfg, seed, std::move(world), std::move(policy), std::move(critics));
  }

  ChainWorld world(cfg, seed);
  TabularPolicy policy(world.obs_dim(), world.act_dim());
  std::vector<TabularCritic> critics;
  critics.emplace_back(world.obs_dim());
  for (std::size_t k = 0; k < world.constrained().size(); ++k)
    critics.emplace_back(world.obs_dim());
  return train_core(cfg, seed, std::move(world), std::move(policy), std::move(critics));
}

void write_metrics_csv(std::ostream& out, const TrainResult& result, bool timestamp) {
  std::vector<std::string> cols{"iter",          "env_steps", "lr",
                                "ep_return",     "ep_len",    "hit_wall_rate",
                                "goal_rate",     "subtask_events", "ratio_dev",
                                "policy_grad_norm"};
  for (const auto& id : result.cost_ids) cols.push_back("cost_" + id);
  for (const auto& id : result.lambda_ids) cols.push_back("lambda_" + id);
  if (result.exact_columns)
    for (const char* c : {"exact_jr", "exact_jc", "gnorm", "hnorm"}) cols.emplace_back(c);

  util::CsvWriter w(out, cols, timestamp);
  for (const auto& m : result.history) {
    std::vector<std::string> cells{std::to_string(m.iter),
                                   std::to_string(m.env_steps),
                                   util::csv_num(m.lr),
                                   util::csv_num(m.ep_return),
                                   util::csv_num(m.ep_len),
                                   util::csv_num(m.hit_wall_rate),
                                   util::csv_num(m.goal_rate),
                                   util::csv_num(m.subtask_events),
                                   util::csv_num(m.ratio_dev),
                                   util::csv_num(m.policy_grad_norm)};
    for (double c : m.cost) cells.push_back(util::csv_num(c));
    for (double l : m.lambda) cells.push_back(util::csv_num(l));
    if (result.exact_columns) {
      cells.push_back(util::csv_num(m.exact_jr));
      cells.push_back(util::csv_num(m.exact_jc));
      cells.push_back(util::csv_num(m.g_norm));
      cells.push_back(util::csv_num(m.h_norm));
    }
    w.row(cells);
  }
}

EvalReport evaluate(const RunConfig& cfg, const Checkpoint& ckpt, int episodes,
                    std::uint64_t seed) {
  if (episodes < 1) throw ConfigError("evaluation needs at least one episode");
  const char* want = cfg.kind == EnvKind::Zones ? "zones" : "chain";
  if (ckpt.env_kind != want)
    throw ConfigError("checkpoint was trained on \"" + ckpt.env_kind +
                      "\" but the config describes \"" + want + "\"");

  if (cfg.kind == EnvKind::Zones) {
    ZonesWorld world(cfg, seed);
    if (ckpt.obs_dim != world.obs_dim() || ckpt.act_dim != world.act_dim())
      throw ConfigError("checkpoint dimensions (" + std::to_string(ckpt.obs_dim) + ", " +
                        std::to_string(ckpt.act_dim) +
                        ") do not match the configured environment (" +
                        std::to_string(world.obs_dim()) + ", " +
                        std::to_string(world.act_dim()) + ")");
    GaussianPolicy policy(ckpt.obs_dim, ckpt.hidden, ckpt.act_dim);
    if (policy.params().size() != ckpt.policy.size())
      throw ConfigError("checkpoint policy has " + std::to_string(ckpt.policy.size()) +
                        " parameters, expected " + std::to_string(policy.params().size()));
    policy.params() = ckpt.policy;
    return eval_core(std::move(world), policy, episodes);
  }

  ChainWorld world(cfg, seed);
  if (ckpt.obs_dim != world.obs_dim() || ckpt.act_dim != world.act_dim())
    throw ConfigError("checkpoint dimensions (" + std::to_string(ckpt.obs_dim) + ", " +
                      std::to_string(ckpt.act_dim) +
                      ") do not match the configured environment (" +
                      std::to_string(world.obs_dim()) + ", " +
                      std::to_string(world.act_dim()) + ")");
  TabularPolicy policy(ckpt.obs_dim, ckpt.act_dim);
  if (policy.params().size() != ckpt.policy.size())
    throw ConfigError("checkpoint policy has " + std::to_string(ckpt.policy.size()) +
                      " parameters, expected " + std::to_string(policy.params().size()));
  policy.params() = ckpt.policy;
  return eval_core(std::move(world), policy, episodes);
}

}  // namespace ltlrl::rl
