#include "ltlrl/mon/monitor_set.hpp"

#include "ltlrl/autom/reach_avoid.hpp"
#include "ltlrl/errors.hpp"

namespace ltlrl::mon {

using autom::MonitorAutomaton;
using autom::MonitorEvent;

MonitorSet::MonitorSet(SpecSet set) : set_(std::move(set)) {
  if (set_.specs.empty()) throw ConfigError("monitor set needs at least one spec");
  for (const auto& s : set_.specs) {
    if (!(s.weight >= 0.0)) throw ConfigError("spec \"" + s.id + "\": weight must be nonnegative");
    if (!(s.budget >= 0.0)) throw ConfigError("spec \"" + s.id + "\": budget must be nonnegative");
    auto seq = autom::reach_avoid_decompose(s.formula, set_.alphabet.size());
    autos_.push_back(MonitorAutomaton::compile(seq, set_.alphabet.names()));
  }
  reset();
}

void MonitorSet::reset() {
  cursors_.resize(autos_.size());
  for (std::size_t k = 0; k < autos_.size(); ++k) cursors_[k] = autos_[k].initial_state();
  t_ = 0;
}

CostVector MonitorSet::observe(const Letter& letter) {
  CostVector out;
  out.raw.resize(num_specs());
  out.events.resize(num_specs());
  for (std::size_t k = 0; k < num_specs(); ++k) {
    auto step = autos_[k].step(cursors_[k], letter);
    cursors_[k] = step.next;
    out.events[k] = step.event;
    bool charged;
    if (set_.specs[k].cost_mode == CostMode::Pulse) {
      charged = step.event == MonitorEvent::Violation;
    } else {
      bool reach_pending = step.next < autos_[k].num_stages();
      charged = reach_pending || step.event == MonitorEvent::Violation;
    }
    out.raw[k] = charged ? 1.0 : 0.0;
    out.aggregate += set_.specs[k].weight * out.raw[k];
  }
  ++t_;
  return out;
}

std::vector<double> MonitorSet::feature() const {
  std::vector<double> out(feature_size(), 0.0);
  std::size_t base = 0;
  for (std::size_t k = 0; k < num_specs(); ++k) {
    out[base + cursors_[k]] = 1.0;
    base += autos_[k].num_states();
  }
  return out;
}

std::size_t MonitorSet::feature_size() const {
  std::size_t n = 0;
  for (const auto& a : autos_) n += a.num_states();
  return n;
}

bool MonitorSet::all_goals_met() const {
  for (std::size_t k = 0; k < num_specs(); ++k)
    if (cursors_[k] != autos_[k].good_state()) return false;
  return true;
}

EpisodeCostSummary episode_cost_summary(const std::vector<CostVector>& trace, double gamma,
                                        SummaryMode mode) {
  if (trace.empty()) throw Error("episode_cost_summary needs a nonempty trace");
  const std::size_t n = trace.front().raw.size();
  EpisodeCostSummary out;
  out.per_spec.assign(n, 0.0);
  double scale = 1.0;
  for (const auto& cv : trace) {
    if (cv.raw.size() != n)
      throw LengthMismatch("cost trace rows disagree on the number of specs");
    for (std::size_t k = 0; k < n; ++k) out.per_spec[k] += scale * cv.raw[k];
    out.aggregate += scale * cv.aggregate;
    if (mode == SummaryMode::Discounted) scale *= gamma;
  }
  if (mode == SummaryMode::MeanPerStep) {
    for (auto& v : out.per_spec) v /= double(trace.size());
    out.aggregate /= double(trace.size());
  }
  return out;
}

}  // namespace ltlrl::mon
