#include "ltlrl/autom/reach_avoid.hpp"

#include "ltlrl/errors.hpp"
#include "ltlrl/logic/semantics.hpp"

namespace ltlrl::autom {

using logic::Letter;
using logic::Op;

namespace {

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Op::And)) {
    flatten_and(f.lhs(), out);
    flatten_and(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

bool is_chain_head(const Formula& f) { return f.is(Op::Until) || f.is(Op::Eventually); }

/* Unroll one chain:  F rest  or  sigma_a U rest, where rest is either the
 * final reach condition or reach & continuation. */
void parse_chain(const Formula& f, std::vector<Stage>& stages) {
  Formula avoid = Formula::ff();
  Formula rest;
  if (f.is(Op::Eventually)) {
    rest = f.lhs();
  } else if (f.is(Op::Until)) {
    if (!logic::is_propositional(f.lhs()))
      throw UnsupportedFragment(f.lhs().str(), "the left side of U must be propositional");
    avoid = Formula::not_(f.lhs());
    rest = f.rhs();
  } else {
    throw UnsupportedFragment(f.str(), "expected F or U at the head of a chain");
  }

  std::vector<Formula> parts;
  flatten_and(rest, parts);
  Formula reach = Formula::tt();
  std::optional<Formula> continuation;
  for (const Formula& p : parts) {
    if (logic::is_propositional(p)) {
      reach = logic::conj(reach, p);
    } else if (is_chain_head(p)) {
      if (continuation)
        throw UnsupportedFragment(p.str(), "more than one temporal continuation in a stage");
      continuation = p;
    } else {
      throw UnsupportedFragment(p.str(), "not propositional and not a nested chain");
    }
  }
  stages.push_back({reach, avoid, f});
  if (continuation) parse_chain(*continuation, stages);
}

}  // namespace

ReachAvoidSequence reach_avoid_decompose(const Formula& f, std::size_t n_props) {
  std::vector<Formula> conjuncts;
  flatten_and(f, conjuncts);

  ReachAvoidSequence seq;
  std::optional<Formula> chain;
  for (const Formula& c : conjuncts) {
    if (c.is(Op::True)) continue;
    if (c.is(Op::Always)) {
      if (!logic::is_propositional(c.lhs()))
        throw UnsupportedFragment(c.str(), "the body of G must be propositional");
      seq.global_safety =
          seq.global_safety ? logic::conj(*seq.global_safety, c.lhs()) : c.lhs();
    } else if (is_chain_head(c)) {
      if (chain)
        throw UnsupportedFragment(c.str(),
                                  "second temporal chain; conjoined goals have no "
                                  "sequential order");
      chain = c;
    } else {
      throw UnsupportedFragment(c.str(), "conjuncts must be G safety or a reach chain");
    }
  }
  if (chain) parse_chain(*chain, seq.stages);
  if (seq.stages.empty() && !seq.global_safety) seq.global_safety = Formula::tt();

  // Avoid conditions must weaken along the chain, otherwise advancing on
  // reach as early as possible is not equivalent to the formula.
  const std::size_t nl = std::size_t(1) << n_props;
  for (std::size_t j = 1; j < seq.stages.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      for (std::size_t l = 0; l < nl; ++l) {
        Letter a(static_cast<std::uint16_t>(l));
        if (logic::eval_prop(seq.stages[j].avoid, a) &&
            !logic::eval_prop(seq.stages[i].avoid, a))
          throw UnsupportedFragment(
              seq.stages[j].origin.str(),
              "avoid condition is not implied by an earlier stage's; the greedy "
              "monitor would not be exact");
      }
    }
  }
  return seq;
}

}  // namespace ltlrl::autom
