#include "ltlrl/env/zones.hpp"

#include <algorithm>
#include <cmath>

#include "ltlrl/errors.hpp"

namespace ltlrl::env {

using autom::MonitorEvent;

Letter zones_label(double x, double y, const std::vector<Zone>& zones) {
  Letter l;
  for (const auto& z : zones) {
    double dx = x - z.cx, dy = y - z.cy;
    if (dx * dx + dy * dy < z.radius * z.radius) l.set(z.prop);
  }
  return l;
}

ZonesEnv::ZonesEnv(ZonesConfig cfg, mon::SpecSet specs)
    : cfg_(std::move(cfg)), ms_(std::move(specs)), rng_(cfg_.seed) {
  if (cfg_.half_width <= 0) throw ConfigError("half_width must be positive");
  if (cfg_.max_steps < 1) throw ConfigError("max_steps must be at least 1");
  if (cfg_.zone_radius <= 0) throw ConfigError("zone_radius must be positive");
  if (cfg_.max_place_tries < 1) throw ConfigError("max_place_tries must be at least 1");
  if (cfg_.fixed_zones.empty() && cfg_.half_width <= cfg_.zone_radius)
    throw ConfigError("arena too small for the configured zone radius");
  const auto& ab = ms_.set().alphabet;
  if (cfg_.fixed_zones.empty())
    for (const auto& color : cfg_.colors)
      if (!ab.find(color))
        throw ConfigError("zone color \"" + color + "\" is not in the spec alphabet");
  for (const auto& z : cfg_.fixed_zones) {
    if (z.prop >= ab.size()) throw ConfigError("fixed zone proposition out of range");
    if (z.radius <= 0) throw ConfigError("zone radius must be positive");
    if (std::abs(z.cx) + z.radius > cfg_.half_width ||
        std::abs(z.cy) + z.radius > cfg_.half_width)
      throw ConfigError("fixed zone leaves the arena");
  }
}

void ZonesEnv::place_zones() {
  if (!cfg_.fixed_zones.empty()) {
    zones_ = cfg_.fixed_zones;
    return;
  }
  zones_.clear();
  const double r = cfg_.zone_radius;
  const double lo = -(cfg_.half_width - r), hi = cfg_.half_width - r;
  std::uniform_real_distribution<double> u(lo, hi);
  const auto& ab = ms_.set().alphabet;
  for (const auto& color : cfg_.colors) {
    std::size_t prop = *ab.find(color);
    for (std::size_t i = 0; i < cfg_.discs_per_color; ++i) {
      Zone z{prop, 0.0, 0.0, r};
      // Keep discs disjoint and clear of the start; after enough rejections
      // accept overlap rather than loop forever on a crowded arena.
      for (std::size_t attempt = 0; attempt < cfg_.max_place_tries; ++attempt) {
        z.cx = u(rng_);
        z.cy = u(rng_);
        if (std::hypot(z.cx, z.cy) < r + 0.5) continue;  // start clearance
        bool clear = true;
        for (const auto& other : zones_)
          if (std::hypot(z.cx - other.cx, z.cy - other.cy) < 2 * r) clear = false;
        if (clear) break;
      }
      zones_.push_back(z);
    }
  }
}

std::vector<double> ZonesEnv::reset() {
  place_zones();
  state_ = ZonesState{};
  ms_.reset();
  done_ = false;
  return observation();
}

StepResult ZonesEnv::step(double ax, double ay) {
  if (done_) throw Error("step on a finished episode; call reset first");
  ax = std::clamp(ax, -1.0, 1.0);
  ay = std::clamp(ay, -1.0, 1.0);

  state_.vx = cfg_.damping * state_.vx + cfg_.action_scale * ax;
  state_.vy = cfg_.damping * state_.vy + cfg_.action_scale * ay;
  double speed = std::hypot(state_.vx, state_.vy);
  if (speed > cfg_.speed_cap) {
    state_.vx *= cfg_.speed_cap / speed;
    state_.vy *= cfg_.speed_cap / speed;
  }
  state_.x += state_.vx * cfg_.dt;
  state_.y += state_.vy * cfg_.dt;
  state_.steps += 1;

  StepResult out;
  out.reward = cfg_.step_penalty;

  bool hit_wall = std::abs(state_.x) >= cfg_.half_width ||
                  std::abs(state_.y) >= cfg_.half_width;
  if (hit_wall) {
    state_.x = std::clamp(state_.x, -cfg_.half_width, cfg_.half_width);
    state_.y = std::clamp(state_.y, -cfg_.half_width, cfg_.half_width);
    out.reward += cfg_.wall_penalty;
    out.done = true;
  }

  out.cost = ms_.observe(label());
  bool violated = false;
  for (std::size_t k = 0; k < out.cost.events.size(); ++k) {
    MonitorEvent e = out.cost.events[k];
    if (e == MonitorEvent::SubtaskComplete || e == MonitorEvent::Satisfied)
      out.reward += cfg_.reach_reward;
    if (e == MonitorEvent::Violation) violated = true;
  }
  if (violated && cfg_.terminate_on_violation) out.done = true;
  if (cfg_.terminate_on_all_goals && ms_.all_goals_met()) out.done = true;

  bool truncated = false;
  if (!out.done && state_.steps >= cfg_.max_steps) {
    out.done = true;
    truncated = true;
  }

  out.info["hit_wall"] = hit_wall ? "1" : "0";
  out.info["truncated"] = truncated ? "1" : "0";
  for (std::size_t k = 0; k < ms_.num_specs(); ++k) {
    const auto& id = ms_.set().specs[k].id;
    out.info["event." + id] = autom::to_string(out.cost.events[k]);
    out.info["state." + id] = ms_.automaton(k).state_name(ms_.cursor(k));
  }

  done_ = out.done;
  out.obs = observation();
  return out;
}

Letter ZonesEnv::label() const { return zones_label(state_.x, state_.y, zones_); }

std::vector<double> ZonesEnv::observation() const {
  std::vector<double> obs;
  obs.reserve(observation_size());
  obs.push_back(state_.x / cfg_.half_width);
  obs.push_back(state_.y / cfg_.half_width);
  obs.push_back(state_.vx / cfg_.speed_cap);
  obs.push_back(state_.vy / cfg_.speed_cap);
  const double diagonal = 2.0 * cfg_.half_width * std::sqrt(2.0);
  for (const auto& z : zones_) {
    double dx = z.cx - state_.x, dy = z.cy - state_.y;
    double dist = std::hypot(dx, dy);
    if (dist > 1e-12) {
      obs.push_back(dx / dist);
      obs.push_back(dy / dist);
    } else {
      obs.push_back(0.0);
      obs.push_back(0.0);
    }
    obs.push_back(dist / diagonal);
  }
  for (double f : ms_.feature()) obs.push_back(f);
  return obs;
}

std::size_t ZonesEnv::observation_size() const {
  std::size_t n_zones = cfg_.fixed_zones.empty()
                            ? cfg_.colors.size() * cfg_.discs_per_color
                            : cfg_.fixed_zones.size();
  return 4 + 3 * n_zones + ms_.feature_size();
}

}  // namespace ltlrl::env
