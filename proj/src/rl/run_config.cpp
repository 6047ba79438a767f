#include "ltlrl/rl/run_config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ltlrl/errors.hpp"

namespace ltlrl::rl {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!known.count(key)) throw ConfigError("unknown key \"" + key + "\" in " + where);
}

const json* maybe(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double want_num(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + " must be a number");
  return v.get<double>();
}

long long want_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path + " must be an integer");
  return v.get<long long>();
}

bool want_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path + " must be a boolean");
  return v.get<bool>();
}

std::string want_str(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path + " must be a string");
  return v.get<std::string>();
}

double num_in(const json& obj, const char* key, double fallback, double lo, double hi,
              const std::string& where) {
  const json* v = maybe(obj, key);
  if (!v) return fallback;
  double x = want_num(*v, where + "." + key);
  if (!(x >= lo && x <= hi))
    throw ConfigError(where + "." + key + " must be in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  return x;
}

double num_pos(const json& obj, const char* key, double fallback, const std::string& where) {
  const json* v = maybe(obj, key);
  if (!v) return fallback;
  double x = want_num(*v, where + "." + key);
  if (!(x > 0.0)) throw ConfigError(where + "." + key + " must be positive");
  return x;
}

double num_any(const json& obj, const char* key, double fallback, const std::string& where) {
  const json* v = maybe(obj, key);
  return v ? want_num(*v, where + "." + key) : fallback;
}

long long int_min(const json& obj, const char* key, long long fallback, long long lo,
                  const std::string& where) {
  const json* v = maybe(obj, key);
  if (!v) return fallback;
  long long x = want_int(*v, where + "." + key);
  if (x < lo)
    throw ConfigError(where + "." + key + " must be at least " + std::to_string(lo));
  return x;
}

bool bool_or(const json& obj, const char* key, bool fallback, const std::string& where) {
  const json* v = maybe(obj, key);
  return v ? want_bool(*v, where + "." + key) : fallback;
}

void parse_zones(const json& o, RunConfig& cfg) {
  const std::string w = "environment";
  reject_unknown(o,
                 {"kind", "half_width", "dt", "damping", "action_scale", "speed_cap", "colors",
                  "discs_per_color", "zone_radius", "max_place_tries", "fixed_zones",
                  "max_steps", "step_penalty", "reach_reward", "wall_penalty",
                  "terminate_on_violation", "terminate_on_all_goals"},
                 w);
  env::ZonesConfig& z = cfg.zones;
  z.half_width = num_pos(o, "half_width", z.half_width, w);
  z.dt = num_pos(o, "dt", z.dt, w);
  z.damping = num_in(o, "damping", z.damping, 0.0, 1.0, w);
  z.action_scale = num_pos(o, "action_scale", z.action_scale, w);
  z.speed_cap = num_pos(o, "speed_cap", z.speed_cap, w);
  if (const json* v = maybe(o, "colors")) {
    if (!v->is_array() || v->empty())
      throw ConfigError(w + ".colors must be a nonempty array");
    z.colors.clear();
    for (const auto& c : *v) z.colors.push_back(want_str(c, w + ".colors[]"));
  }
  z.discs_per_color =
      static_cast<std::size_t>(int_min(o, "discs_per_color", z.discs_per_color, 1, w));
  z.zone_radius = num_pos(o, "zone_radius", z.zone_radius, w);
  z.max_place_tries =
      static_cast<std::size_t>(int_min(o, "max_place_tries", z.max_place_tries, 1, w));
  z.max_steps = static_cast<std::size_t>(int_min(o, "max_steps", z.max_steps, 1, w));
  z.step_penalty = num_any(o, "step_penalty", z.step_penalty, w);
  z.reach_reward = num_any(o, "reach_reward", z.reach_reward, w);
  z.wall_penalty = num_any(o, "wall_penalty", z.wall_penalty, w);
  z.terminate_on_violation = bool_or(o, "terminate_on_violation", z.terminate_on_violation, w);
  z.terminate_on_all_goals = bool_or(o, "terminate_on_all_goals", z.terminate_on_all_goals, w);

  if (const json* v = maybe(o, "fixed_zones")) {
    if (!v->is_array()) throw ConfigError(w + ".fixed_zones must be an array");
    for (const auto& fz : *v) {
      if (!fz.is_object()) throw ConfigError(w + ".fixed_zones entries must be objects");
      reject_unknown(fz, {"prop", "x", "y", "radius"}, w + ".fixed_zones entry");
      NamedZone nz;
      const json* p = maybe(fz, "prop");
      if (!p) throw ConfigError(w + ".fixed_zones entries need a \"prop\"");
      nz.prop = want_str(*p, w + ".fixed_zones[].prop");
      nz.x = num_any(fz, "x", 0.0, w + ".fixed_zones[]");
      nz.y = num_any(fz, "y", 0.0, w + ".fixed_zones[]");
      nz.radius = num_pos(fz, "radius", z.zone_radius, w + ".fixed_zones[]");
      cfg.fixed_zones.push_back(std::move(nz));
    }
  }
}

void parse_chain(const json& o, RunConfig& cfg) {
  const std::string w = "environment";
  reject_unknown(o, {"kind", "n_states", "p_slip", "episode_len"}, w);
  ChainEnvConfig& c = cfg.chain;
  c.n_states = static_cast<std::size_t>(int_min(o, "n_states", c.n_states, 2, w));
  c.p_slip = num_in(o, "p_slip", c.p_slip, 0.0, 0.999, w);
  c.episode_len = static_cast<std::size_t>(int_min(o, "episode_len", c.episode_len, 1, w));
}

void parse_ppo(const json& o, PpoConfig& p, bool zones) {
  const std::string w = "ppo";
  reject_unknown(o,
                 {"gamma", "gae_lambda", "clip", "epochs", "minibatch", "horizon", "n_envs",
                  "lr_init", "lr_final", "entropy_coef", "value_coef", "hidden",
                  "max_grad_norm", "param_ball", "project_params", "log_std_init"},
                 w);
  p.gamma = num_in(o, "gamma", p.gamma, 1e-6, 1.0 - 1e-12, w);
  p.gae_lambda = num_in(o, "gae_lambda", p.gae_lambda, 0.0, 1.0, w);
  p.clip = num_pos(o, "clip", p.clip, w);
  p.epochs = static_cast<int>(int_min(o, "epochs", p.epochs, 1, w));
  p.minibatch = static_cast<int>(int_min(o, "minibatch", p.minibatch, 1, w));
  p.horizon = static_cast<int>(int_min(o, "horizon", p.horizon, 1, w));
  p.n_envs = static_cast<int>(int_min(o, "n_envs", p.n_envs, 1, w));
  p.lr_init = num_pos(o, "lr_init", p.lr_init, w);
  p.lr_final = num_in(o, "lr_final", p.lr_final, 0.0, p.lr_init, w);
  p.entropy_coef = num_in(o, "entropy_coef", zones ? 0.001 : 0.0, 0.0, 1.0, w);
  p.value_coef = num_pos(o, "value_coef", p.value_coef, w);
  if (const json* v = maybe(o, "hidden")) {
    if (!v->is_array() || v->empty())
      throw ConfigError(w + ".hidden must be a nonempty array of layer widths");
    p.hidden.clear();
    for (const auto& h : *v) {
      long long width = want_int(h, w + ".hidden[]");
      if (width < 1) throw ConfigError(w + ".hidden widths must be positive");
      p.hidden.push_back(static_cast<std::size_t>(width));
    }
  }
  p.max_grad_norm = num_pos(o, "max_grad_norm", p.max_grad_norm, w);
  p.param_ball = num_pos(o, "param_ball", p.param_ball, w);
  p.project_params = bool_or(o, "project_params", p.project_params, w);
  p.log_std_init = num_in(o, "log_std_init", p.log_std_init, -5.0, 2.0, w);
}

void parse_dual(const json& o, DualConfig& d) {
  const std::string w = "dual";
  reject_unknown(o, {"enabled", "alpha", "cap", "init", "cost_limit", "summary"}, w);
  d.enabled = bool_or(o, "enabled", d.enabled, w);
  d.alpha = num_in(o, "alpha", d.alpha, 0.0, 1e9, w);
  d.cap = num_pos(o, "cap", d.cap, w);
  d.init = num_in(o, "init", d.init, 0.0, d.cap, w);
  if (const json* v = maybe(o, "cost_limit")) {
    double x = want_num(*v, w + ".cost_limit");
    d.cost_limit = x < 0.0 ? -1.0 : x;  // any negative means "use per-spec budgets"
  }
  if (const json* v = maybe(o, "summary")) {
    std::string s = want_str(*v, w + ".summary");
    if (s == "discounted")
      d.summary = mon::SummaryMode::Discounted;
    else if (s == "mean_per_step")
      d.summary = mon::SummaryMode::MeanPerStep;
    else
      throw ConfigError("dual.summary must be \"discounted\" or \"mean_per_step\"");
  }
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("run config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("run config must be a JSON object");
  reject_unknown(doc,
                 {"environment", "spec_file", "ppo", "dual", "total_steps", "seeds",
                  "exact_diagnostics"},
                 "run config");

  const json* envj = maybe(doc, "environment");
  if (!envj || !envj->is_object())
    throw ConfigError("run config needs an \"environment\" object");
  const json* kindj = maybe(*envj, "kind");
  if (!kindj) throw ConfigError("environment.kind is required");
  std::string kind = want_str(*kindj, "environment.kind");

  RunConfig cfg;
  if (kind == "zones") {
    cfg.kind = EnvKind::Zones;
    parse_zones(*envj, cfg);
  } else if (kind == "chain") {
    cfg.kind = EnvKind::Chain;
    parse_chain(*envj, cfg);
  } else {
    throw ConfigError("environment.kind must be \"zones\" or \"chain\", got \"" + kind + "\"");
  }

  if (const json* v = maybe(doc, "spec_file")) {
    if (cfg.kind == EnvKind::Chain)
      throw ConfigError("spec_file does not apply to environment.kind \"chain\"");
    fs::path p = want_str(*v, "spec_file");
    if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
    p = fs::absolute(p).lexically_normal();
    if (!fs::exists(p)) throw ConfigError("spec_file does not exist: " + p.string());
    cfg.spec_file = p.string();
  } else if (cfg.kind == EnvKind::Zones) {
    throw ConfigError("zones runs need a spec_file");
  }

  if (const json* v = maybe(doc, "ppo")) {
    if (!v->is_object()) throw ConfigError("\"ppo\" must be an object");
    parse_ppo(*v, cfg.ppo, cfg.kind == EnvKind::Zones);
  } else if (cfg.kind == EnvKind::Zones) {
    cfg.ppo.entropy_coef = 0.001;
  }
  if (const json* v = maybe(doc, "dual")) {
    if (!v->is_object()) throw ConfigError("\"dual\" must be an object");
    parse_dual(*v, cfg.dual);
  }
  if (cfg.kind == EnvKind::Chain && cfg.dual.enabled && cfg.dual.cost_limit < 0.0)
    throw ConfigError("chain runs with dual.enabled need dual.cost_limit >= 0");

  cfg.total_steps = int_min(doc, "total_steps", cfg.total_steps, 1, "run config");
  if (const json* v = maybe(doc, "seeds")) {
    if (!v->is_array() || v->empty())
      throw ConfigError("\"seeds\" must be a nonempty array of integers");
    cfg.seeds.clear();
    for (const auto& s : *v) {
      long long x = want_int(s, "seeds[]");
      if (x < 0) throw ConfigError("seeds must be nonnegative");
      cfg.seeds.push_back(static_cast<std::uint64_t>(x));
    }
  }
  cfg.exact_diagnostics = bool_or(doc, "exact_diagnostics", false, "run config");
  if (cfg.exact_diagnostics && cfg.kind != EnvKind::Chain)
    throw ConfigError("exact_diagnostics is only available for the chain environment");
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open run config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), fs::path(path).parent_path().string());
}

std::string RunConfig::to_json() const {
  json envj;
  if (kind == EnvKind::Zones) {
    envj["kind"] = "zones";
    envj["half_width"] = zones.half_width;
    envj["dt"] = zones.dt;
    envj["damping"] = zones.damping;
    envj["action_scale"] = zones.action_scale;
    envj["speed_cap"] = zones.speed_cap;
    envj["colors"] = zones.colors;
    envj["discs_per_color"] = zones.discs_per_color;
    envj["zone_radius"] = zones.zone_radius;
    envj["max_place_tries"] = zones.max_place_tries;
    envj["max_steps"] = zones.max_steps;
    envj["step_penalty"] = zones.step_penalty;
    envj["reach_reward"] = zones.reach_reward;
    envj["wall_penalty"] = zones.wall_penalty;
    envj["terminate_on_violation"] = zones.terminate_on_violation;
    envj["terminate_on_all_goals"] = zones.terminate_on_all_goals;
    json fz = json::array();
    for (const auto& z : fixed_zones)
      fz.push_back({{"prop", z.prop}, {"x", z.x}, {"y", z.y}, {"radius", z.radius}});
    envj["fixed_zones"] = fz;
  } else {
    envj["kind"] = "chain";
    envj["n_states"] = chain.n_states;
    envj["p_slip"] = chain.p_slip;
    envj["episode_len"] = chain.episode_len;
  }

  json j;
  j["environment"] = envj;
  if (kind == EnvKind::Zones) j["spec_file"] = spec_file;
  j["ppo"] = {{"gamma", ppo.gamma},
              {"gae_lambda", ppo.gae_lambda},
              {"clip", ppo.clip},
              {"epochs", ppo.epochs},
              {"minibatch", ppo.minibatch},
              {"horizon", ppo.horizon},
              {"n_envs", ppo.n_envs},
              {"lr_init", ppo.lr_init},
              {"lr_final", ppo.lr_final},
              {"entropy_coef", ppo.entropy_coef},
              {"value_coef", ppo.value_coef},
              {"hidden", ppo.hidden},
              {"max_grad_norm", ppo.max_grad_norm},
              {"param_ball", ppo.param_ball},
              {"project_params", ppo.project_params},
              {"log_std_init", ppo.log_std_init}};
  j["dual"] = {{"enabled", dual.enabled},
               {"alpha", dual.alpha},
               {"cap", dual.cap},
               {"init", dual.init},
               {"cost_limit", dual.cost_limit},
               {"summary", dual.summary == mon::SummaryMode::Discounted ? "discounted"
                                                                        : "mean_per_step"}};
  j["total_steps"] = total_steps;
  j["seeds"] = seeds;
  j["exact_diagnostics"] = exact_diagnostics;
  return j.dump(2) + "\n";
}

}  // namespace ltlrl::rl
