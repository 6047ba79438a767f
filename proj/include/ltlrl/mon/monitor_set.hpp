#pragma once

#include <vector>

#include "ltlrl/autom/monitor_automaton.hpp"
#include "ltlrl/mon/spec.hpp"

namespace ltlrl::mon {

/* What one synchronous step of all monitors emitted. `raw` is unweighted
 * per spec; `aggregate` applies each weight exactly once. */
struct CostVector {
  std::vector<double> raw;
  std::vector<autom::MonitorEvent> events;
  double aggregate = 0.0;
};

enum class SummaryMode { Discounted, MeanPerStep };

/* Episode-level cost estimates: per_spec in raw units (comparable to each
 * Spec::budget), aggregate in weighted units. */
struct EpisodeCostSummary {
  std::vector<double> per_spec;
  double aggregate = 0.0;
};

EpisodeCostSummary episode_cost_summary(const std::vector<CostVector>& trace, double gamma,
                                        SummaryMode mode = SummaryMode::Discounted);

/* One monitor cursor per spec, advanced in lockstep with the environment.
 * Raw cost per step: Pulse charges 1 when the step raises Violation;
 * Sustained charges 1 while a reach obligation is still open (some stage
 * pending) and on the violating step, 0 once the goal or a sink is reached.
 * Either way a cursor that has fallen into the reject sink stays there and
 * charges nothing further; ending the episode is the environment's call. */
class MonitorSet {
 public:
  explicit MonitorSet(SpecSet set);

  void reset();
  CostVector observe(const Letter& letter);

  // Concatenated one-hot encodings of every cursor state, |states| per spec.
  std::vector<double> feature() const;
  std::size_t feature_size() const;

  // Every reach obligation discharged (each cursor at its good state).
  bool all_goals_met() const;

  const SpecSet& set() const { return set_; }
  const autom::MonitorAutomaton& automaton(std::size_t k) const { return autos_[k]; }
  std::size_t cursor(std::size_t k) const { return cursors_[k]; }
  std::size_t num_specs() const { return set_.specs.size(); }
  std::size_t steps() const { return t_; }

 private:
  SpecSet set_;
  std::vector<autom::MonitorAutomaton> autos_;
  std::vector<std::size_t> cursors_;
  std::size_t t_ = 0;
};

}  // namespace ltlrl::mon
