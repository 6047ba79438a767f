#pragma once

#include <string>
#include <vector>

#include "ltlrl/autom/reach_avoid.hpp"
#include "ltlrl/logic/semantics.hpp"

namespace ltlrl::autom {

using logic::LassoWord;
using logic::Letter;

enum class MonitorEvent { None, SubtaskComplete, Violation, Satisfied };

const char* to_string(MonitorEvent e);

/* Deterministic runtime checker for one reach-avoid specification.
 *
 * States are indexed: 0..k-1 are the reach stages, k is the good state,
 * k+1 is REJECT.  The good state is an ACCEPT sink when the specification
 * has no safety condition; otherwise it keeps monitoring safety (a safety
 * violation there emits Violation but the state persists, so an episode can
 * accumulate one pulse per unsafe step -- the reject verdict is carried by
 * the event, and export_hoa redirects those edges to REJECT to recover the
 * exact language).  Pure-safety specifications start in the good state. */
class MonitorAutomaton {
 public:
  struct Step {
    std::size_t next;
    MonitorEvent event;
  };
  struct Edge {
    Formula guard;
    std::size_t dst;
    MonitorEvent event;
  };

  static MonitorAutomaton compile(const ReachAvoidSequence& seq,
                                  std::vector<std::string> ap_names);

  std::size_t num_states() const { return stages_.size() + 2; }
  std::size_t num_stages() const { return stages_.size(); }
  std::size_t initial_state() const { return stages_.empty() ? good_state() : 0; }
  std::size_t good_state() const { return stages_.size(); }
  std::size_t reject_state() const { return stages_.size() + 1; }

  bool good_is_sink() const { return !monitors_safety_; }
  bool is_sink(std::size_t s) const {
    return s == reject_state() || (s == good_state() && good_is_sink());
  }
  std::string state_name(std::size_t s) const;

  const std::vector<Stage>& stages() const { return stages_; }
  const Formula& safety() const { return safety_; }
  const std::vector<std::string>& ap_names() const { return ap_names_; }

  Step step(std::size_t state, Letter a) const;

  /* Symbolic transition relation equivalent to step(); one guard per
   * (target, event) pair, exactly one true per letter. */
  std::vector<Edge> edges_from(std::size_t state) const;

 private:
  std::vector<Stage> stages_;
  Formula safety_;
  bool monitors_safety_ = false;  // good state watches safety instead of sinking
  std::vector<std::string> ap_names_;
};

enum class Verdict { Accepted, Rejected, Pending };

const char* to_string(Verdict v);

/* Replay a finite prefix.  Rejected as soon as any Violation fires (safety
 * verdicts are irrevocable), Accepted only when the cursor sits in an
 * ACCEPT sink, Pending otherwise. */
Verdict classify_prefix(const MonitorAutomaton& m, const std::vector<Letter>& prefix);

/* Exact satisfaction of an infinite lasso word: replay until the state at
 * the loop boundary repeats.  Any Violation means the word falsifies the
 * specification; ending anywhere but the good state means a reach stage
 * never completed, which also falsifies it. */
bool monitor_accepts_lasso(const MonitorAutomaton& m, const LassoWord& w);

}  // namespace ltlrl::autom
