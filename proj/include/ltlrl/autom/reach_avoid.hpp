#pragma once

#include <optional>
#include <vector>

#include "ltlrl/logic/formula.hpp"

namespace ltlrl::autom {

using logic::Formula;

/* One reach-avoid subtask: park while neither condition holds, advance on
 * `reach`, fail on `avoid`.  Both are propositional.  `origin` is the
 * temporal subformula the stage came from, kept for error reporting. */
struct Stage {
  Formula reach;
  Formula avoid;
  Formula origin;
};

/* A specification decomposed into sequential reach stages plus an optional
 * safety condition that must hold at every step. */
struct ReachAvoidSequence {
  std::vector<Stage> stages;
  std::optional<Formula> global_safety;

  /* Safety as a plain formula, True when absent. */
  Formula safety() const { return global_safety ? *global_safety : Formula::tt(); }
};

/* Split a formula of the supported fragment into stages and safety.
 *
 * The fragment is a conjunction of:
 *   - G sigma with sigma propositional (any number, conjoined into safety),
 *   - at most one sequential chain built from
 *       F sigma_r | sigma_a U sigma_r | F (sigma_r & chain) | sigma_a U (sigma_r & chain)
 *     with all sigmas propositional.
 *
 * Additionally the stage avoid conditions must weaken over time: a letter
 * that violates a later stage's avoid must violate every earlier one too.
 * Without this the greedy advance-on-reach monitor is not language-exact
 * (committing early could cut off the only satisfying continuation), so such
 * formulas are rejected rather than compiled wrongly.  `n_props` bounds the
 * letter enumeration for that check.
 *
 * Throws UnsupportedFragment naming the offending subformula. */
ReachAvoidSequence reach_avoid_decompose(const Formula& f, std::size_t n_props);

}  // namespace ltlrl::autom
