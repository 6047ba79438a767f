#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "ltlrl/mon/monitor_set.hpp"

namespace ltlrl::env {

using logic::Letter;

/* One labeled disc. `prop` indexes the alphabet the monitors run over. */
struct Zone {
  std::size_t prop = 0;
  double cx = 0.0, cy = 0.0;
  double radius = 0.6;
};

struct ZonesConfig {
  double half_width = 4.0;    // arena is [-half_width, half_width]^2
  double dt = 0.1;            // seconds per step
  double damping = 0.9;       // velocity carried over per step
  double action_scale = 0.5;  // acceleration per unit action
  double speed_cap = 1.0;     // max speed, m/s

  // Randomized layout, resampled each episode: discs_per_color discs for
  // every color, kept inside the arena, pairwise disjoint and clear of the
  // start position unless rejection sampling gives up (see max_place_tries).
  std::vector<std::string> colors{"blue", "green", "yellow", "magenta"};
  std::size_t discs_per_color = 2;
  double zone_radius = 0.6;
  std::size_t max_place_tries = 100;

  // Explicit layout: when nonempty, used verbatim for every episode.
  std::vector<Zone> fixed_zones;

  std::size_t max_steps = 400;
  double step_penalty = -0.01;
  double reach_reward = 10.0;
  double wall_penalty = -10.0;
  bool terminate_on_violation = true;
  bool terminate_on_all_goals = false;

  std::uint64_t seed = 0;
};

struct ZonesState {
  double x = 0.0, y = 0.0;
  double vx = 0.0, vy = 0.0;
  std::size_t steps = 0;
};

/* The feedback tuple of one step: observation, reward, per-spec costs, the
 * done flag, and a string map of diagnostics (schema in ZonesEnv::step). */
struct StepResult {
  std::vector<double> obs;
  double reward = 0.0;
  mon::CostVector cost;
  bool done = false;
  std::map<std::string, std::string> info;
};

/* Propositions of all discs whose interior strictly contains the position. */
Letter zones_label(double x, double y, const std::vector<Zone>& zones);

/* A point robot on a damped velocity integrator in a square arena, labeled
 * discs feeding a MonitorSet. Wall contact and (by default) violations end
 * the episode; reaching max_steps truncates it. */
class ZonesEnv {
 public:
  ZonesEnv(ZonesConfig cfg, mon::SpecSet specs);

  std::vector<double> reset();
  StepResult step(double ax, double ay);

  /* Observation layout, all components in [-1, 1]:
   *   [x, y] / half_width,
   *   [vx, vy] / speed_cap,
   *   per zone: unit direction to its center (2), distance / diagonal (1),
   *   monitor features (one-hot cursor per spec).                        */
  std::vector<double> observation() const;
  std::size_t observation_size() const;

  Letter label() const;
  const ZonesState& state() const { return state_; }
  const std::vector<Zone>& zones() const { return zones_; }
  const mon::MonitorSet& monitor() const { return ms_; }
  const ZonesConfig& config() const { return cfg_; }
  bool done() const { return done_; }

 private:
  void place_zones();

  ZonesConfig cfg_;
  mon::MonitorSet ms_;
  std::vector<Zone> zones_;
  ZonesState state_;
  std::mt19937_64 rng_;
  bool done_ = true;  // require reset() before the first step
};

}  // namespace ltlrl::env
