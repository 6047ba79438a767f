#include "ltlrl/autom/monitor_automaton.hpp"

#include "ltlrl/errors.hpp"

namespace ltlrl::autom {

using logic::conj;
using logic::disj;
using logic::eval_prop;
using logic::Op;

const char* to_string(MonitorEvent e) {
  switch (e) {
    case MonitorEvent::None: return "none";
    case MonitorEvent::SubtaskComplete: return "subtask_complete";
    case MonitorEvent::Violation: return "violation";
    case MonitorEvent::Satisfied: return "satisfied";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "accepted";
    case Verdict::Rejected: return "rejected";
    case Verdict::Pending: return "pending";
  }
  return "?";
}

MonitorAutomaton MonitorAutomaton::compile(const ReachAvoidSequence& seq,
                                           std::vector<std::string> ap_names) {
  if (seq.stages.empty() && !seq.global_safety)
    throw Error("reach-avoid sequence has neither stages nor safety");
  MonitorAutomaton m;
  m.stages_ = seq.stages;
  m.safety_ = seq.safety();
  m.monitors_safety_ = !m.safety_.is(Op::True);
  m.ap_names_ = std::move(ap_names);
  return m;
}

std::string MonitorAutomaton::state_name(std::size_t s) const {
  if (s < stages_.size()) return "stage_" + std::to_string(s);
  if (s == good_state()) return monitors_safety_ ? "safe" : "accept";
  return "reject";
}

MonitorAutomaton::Step MonitorAutomaton::step(std::size_t state, Letter a) const {
  if (state == reject_state()) return {state, MonitorEvent::None};
  if (state == good_state()) {
    if (monitors_safety_ && !eval_prop(safety_, a))
      return {state, MonitorEvent::Violation};
    return {state, MonitorEvent::None};
  }
  const std::size_t k = stages_.size();
  if (!eval_prop(safety_, a)) return {reject_state(), MonitorEvent::Violation};
  if (eval_prop(stages_[state].reach, a)) {
    // Completing a stage hands the letter to the next one: its reach may
    // discharge immediately, and failing that its avoid applies right away
    // (the nested obligation starts at this very step).
    std::size_t j = state + 1;
    while (j < k && eval_prop(stages_[j].reach, a)) ++j;
    if (j == k) return {good_state(), MonitorEvent::Satisfied};
    if (eval_prop(stages_[j].avoid, a)) return {reject_state(), MonitorEvent::Violation};
    return {j, MonitorEvent::SubtaskComplete};
  }
  if (eval_prop(stages_[state].avoid, a)) return {reject_state(), MonitorEvent::Violation};
  return {state, MonitorEvent::None};
}

std::vector<MonitorAutomaton::Edge> MonitorAutomaton::edges_from(std::size_t state) const {
  const Formula t = Formula::tt();
  if (state == reject_state()) return {{t, state, MonitorEvent::None}};
  if (state == good_state()) {
    if (!monitors_safety_) return {{t, state, MonitorEvent::None}};
    return {{safety_, state, MonitorEvent::None},
            {Formula::not_(safety_), state, MonitorEvent::Violation}};
  }

  const std::size_t k = stages_.size();
  std::vector<Edge> out;
  Formula to_reject = Formula::not_(safety_);

  // Advance guards: all reaches from `state` through j-1 hold, j's does not.
  Formula run = safety_;
  for (std::size_t j = state + 1; j <= k; ++j) {
    run = conj(run, stages_[j - 1].reach);
    if (j == k) {
      out.push_back({run, good_state(), MonitorEvent::Satisfied});
      break;
    }
    Formula parked = conj(run, Formula::not_(stages_[j].reach));
    out.push_back({conj(parked, Formula::not_(stages_[j].avoid)), j,
                   MonitorEvent::SubtaskComplete});
    to_reject = disj(to_reject, conj(parked, stages_[j].avoid));
  }

  Formula idle = conj(safety_, Formula::not_(stages_[state].reach));
  out.push_back({conj(idle, Formula::not_(stages_[state].avoid)), state, MonitorEvent::None});
  to_reject = disj(to_reject, conj(idle, stages_[state].avoid));
  out.push_back({to_reject, reject_state(), MonitorEvent::Violation});
  return out;
}

Verdict classify_prefix(const MonitorAutomaton& m, const std::vector<Letter>& prefix) {
  std::size_t s = m.initial_state();
  bool violated = false;
  for (Letter a : prefix) {
    auto [next, event] = m.step(s, a);
    violated = violated || event == MonitorEvent::Violation;
    s = next;
  }
  if (violated) return Verdict::Rejected;
  if (s == m.good_state() && m.good_is_sink()) return Verdict::Accepted;
  return Verdict::Pending;
}

bool monitor_accepts_lasso(const MonitorAutomaton& m, const LassoWord& w) {
  if (w.loop.empty()) throw Error("lasso loop must be nonempty");
  std::size_t s = m.initial_state();
  bool violated = false;
  auto feed = [&](Letter a) {
    auto [next, event] = m.step(s, a);
    violated = violated || event == MonitorEvent::Violation;
    s = next;
  };
  for (Letter a : w.prefix) feed(a);
  std::vector<char> seen(m.num_states(), 0);
  while (!seen[s]) {
    seen[s] = 1;
    for (Letter a : w.loop) feed(a);
  }
  return !violated && s == m.good_state();
}

}  // namespace ltlrl::autom
