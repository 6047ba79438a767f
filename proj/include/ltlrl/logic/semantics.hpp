#pragma once

#include <vector>

#include "ltlrl/logic/alphabet.hpp"
#include "ltlrl/logic/formula.hpp"

namespace ltlrl::logic {

/* An ultimately periodic word prefix . loop^omega.  The loop is nonempty. */
struct LassoWord {
  std::vector<Letter> prefix;
  std::vector<Letter> loop;

  std::size_t positions() const { return prefix.size() + loop.size(); }
  Letter at(std::size_t i) const {
    return i < prefix.size() ? prefix[i] : loop[i - prefix.size()];
  }
  /* Successor position in the finite lasso graph. */
  std::size_t succ(std::size_t i) const {
    return i + 1 < positions() ? i + 1 : prefix.size();
  }
  LassoWord prepend(Letter a) const {
    LassoWord w = *this;
    w.prefix.insert(w.prefix.begin(), a);
    return w;
  }
};

/* Negation normal form.  Negations are pushed to the atoms; G and F are
 * rewritten away as False R phi and True U phi. */
Formula to_nnf(const Formula& f);

/* Simplifying conjunction/disjunction: constant folding, idempotence,
 * absorption and unit laws.  No canonicalization beyond that. */
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);

/* Evaluate a propositional formula on one letter. */
bool eval_prop(const Formula& f, Letter a);

/* Exact LTL satisfaction on an ultimately periodic word.  U/R (and F/G) are
 * evaluated as least/greatest fixpoints on the lasso graph, which coincides
 * with the infinite-word semantics. */
bool holds_on_lasso(const Formula& f, const LassoWord& w);

/* One-step formula progression.  Requires f in NNF (negations only above
 * atoms; G/F allowed).  A violated obligation collapses to the False node. */
Formula progress(const Formula& f, Letter a);

}  // namespace ltlrl::logic
