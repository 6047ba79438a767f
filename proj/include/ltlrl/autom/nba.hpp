#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ltlrl/logic/formula.hpp"
#include "ltlrl/logic/semantics.hpp"

namespace ltlrl::autom {

using logic::Formula;
using logic::LassoWord;
using logic::Letter;

/* Nondeterministic Buchi automaton.  Edge guards are propositional formulas
 * over the alphabet, evaluated per letter; there is no 2^AP edge expansion.
 * Kept as the verification oracle for the deterministic runtime monitors. */
struct BuchiAutomaton {
  struct Edge {
    Formula guard;
    std::size_t dst;
  };

  std::vector<std::string> ap_names;       // index = proposition bit
  std::size_t initial = 0;
  std::vector<std::vector<Edge>> edges;    // outgoing, by source state
  std::vector<char> accepting;             // one flag per state

  std::size_t num_states() const { return edges.size(); }
};

/* Tableau construction (Gerth et al. style) followed by degeneralization,
 * unreachable-state pruning and a bisimulation quotient.  Input must be in
 * negation normal form.  Throws CapacityExceeded when the tableau grows past
 * `max_states` nodes. */
BuchiAutomaton ltl_to_nba(const Formula& f, const std::vector<std::string>& ap_names,
                          std::size_t max_states = 100000);

/* Does some run over prefix.loop^omega visit an accepting state infinitely
 * often?  Decided on the product of the automaton with the lasso positions:
 * accept iff a nontrivial SCC containing an accepting product state is
 * reachable from (initial, 0). */
bool nba_accepts_lasso(const BuchiAutomaton& a, const LassoWord& w);

}  // namespace ltlrl::autom
