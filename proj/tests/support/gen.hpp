#pragma once

#include <random>
#include <vector>

#include "ltlrl/logic/formula.hpp"
#include "ltlrl/logic/semantics.hpp"

/* Shared test helpers: exhaustive word families, random formula generation,
 * and a slow reference evaluator that is independent of the library's
 * fixpoint-based one. */
namespace ltlrl::test {

using logic::Formula;
using logic::LassoWord;
using logic::Letter;

/* All 2^n letters over the first n propositions. */
std::vector<Letter> all_letters(std::size_t n_props);

/* Every lasso with |prefix| <= max_prefix and 1 <= |loop| <= max_loop over
 * 2^n_props letters.  Small parameters only; the count is exponential. */
std::vector<LassoWord> exhaustive_lassos(std::size_t n_props, std::size_t max_prefix,
                                         std::size_t max_loop);

/* Atom formulas a, b, c, ... for the first n props. */
std::vector<Formula> make_atoms(std::size_t n_props);

/* Random AST of at most `budget` nodes.  With nnf_only, negation is applied
 * to atoms only, so the result is already in negation normal form. */
Formula random_formula(std::mt19937_64& rng, int budget, const std::vector<Formula>& atoms,
                       bool nnf_only);

/* Reference semantics by direct quantifier expansion: U/R/F/G scan positions
 * up to |prefix| + 2|loop| steps ahead, which covers every reachable suffix
 * of an ultimately periodic word.  Exponential in formula size; fine for the
 * tiny families used in tests. */
bool naive_holds(const Formula& f, const LassoWord& w);

/* Random formula from the monitorable reach-avoid fragment over 2 props:
 * a conjunction of G safety and/or a chain of 1-2 stages, size <= 8, with
 * descending avoid conditions by construction.  Degenerate specs are
 * rejection-sampled away: from every reachable pending monitor state both an
 * accepting and a rejecting continuation must exist, so tests can demand
 * that pending prefixes stay genuinely undecided. */
Formula random_fragment_formula(std::mt19937_64& rng);

}  // namespace ltlrl::test
