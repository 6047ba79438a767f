#include "ltlrl/logic/semantics.hpp"

#include <map>

#include "ltlrl/errors.hpp"

namespace ltlrl::logic {

std::string to_string(const Alphabet& ab, Letter l) {
  std::string out = "{";
  for (std::size_t i = 0; i < ab.size(); ++i) {
    if (!l.test(i)) continue;
    if (out.size() > 1) out += ' ';
    out += ab.name(i);
  }
  return out + "}";
}

namespace {

Formula nnf(const Formula& f, bool neg) {
  switch (f.op()) {
    case Op::True:
      return neg ? Formula::ff() : Formula::tt();
    case Op::False:
      return neg ? Formula::tt() : Formula::ff();
    case Op::Atom:
      return neg ? Formula::not_(f) : f;
    case Op::Not:
      return nnf(f.lhs(), !neg);
    case Op::And:
      return neg ? Formula::or_(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : Formula::and_(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Or:
      return neg ? Formula::and_(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : Formula::or_(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Next:
      return Formula::next(nnf(f.lhs(), neg));
    case Op::Until:
      return neg ? Formula::release(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : Formula::until(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Release:
      return neg ? Formula::until(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : Formula::release(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Always:
      /* G phi = False R phi, so !G phi = True U !phi */
      return neg ? Formula::until(Formula::tt(), nnf(f.lhs(), true))
                 : Formula::release(Formula::ff(), nnf(f.lhs(), false));
    case Op::Eventually:
      /* F phi = True U phi, so !F phi = False R !phi */
      return neg ? Formula::release(Formula::ff(), nnf(f.lhs(), true))
                 : Formula::until(Formula::tt(), nnf(f.lhs(), false));
  }
  return f;  // unreachable
}

/* Does `f` appear as a direct disjunct of an Or node `g`?  Only one level is
 * inspected; this is the absorption rule, not a SAT check. */
bool or_contains(const Formula& g, const Formula& f) {
  return g.is(Op::Or) && (g.lhs() == f || g.rhs() == f);
}
bool and_contains(const Formula& g, const Formula& f) {
  return g.is(Op::And) && (g.lhs() == f || g.rhs() == f);
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

Formula conj(Formula a, Formula b) {
  if (a.is(Op::False) || b.is(Op::False)) return Formula::ff();
  if (a.is(Op::True)) return b;
  if (b.is(Op::True)) return a;
  if (a == b) return a;
  if (or_contains(a, b)) return b;   // (x | y) & x  ->  x
  if (or_contains(b, a)) return a;
  if (and_contains(a, b)) return a;  // (x & y) & x  ->  x & y
  if (and_contains(b, a)) return b;
  return Formula::and_(a, b);
}

Formula disj(Formula a, Formula b) {
  if (a.is(Op::True) || b.is(Op::True)) return Formula::tt();
  if (a.is(Op::False)) return b;
  if (b.is(Op::False)) return a;
  if (a == b) return a;
  if (and_contains(a, b)) return b;  // (x & y) | x  ->  x
  if (and_contains(b, a)) return a;
  if (or_contains(a, b)) return a;   // (x | y) | x  ->  x | y
  if (or_contains(b, a)) return b;
  return Formula::or_(a, b);
}

bool eval_prop(const Formula& f, Letter a) {
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return a.test(f.ap());
    case Op::Not: return !eval_prop(f.lhs(), a);
    case Op::And: return eval_prop(f.lhs(), a) && eval_prop(f.rhs(), a);
    case Op::Or: return eval_prop(f.lhs(), a) || eval_prop(f.rhs(), a);
    default:
      throw Error("eval_prop: formula is not propositional: " + f.str());
  }
}

namespace {

/* Per-subformula satisfaction vectors over the lasso positions, memoized on
 * node identity.  Temporal operators iterate to their fixpoint; the lasso
 * graph has `N` positions so `N` sweeps suffice. */
struct LassoEval {
  const LassoWord& w;
  std::size_t n;
  std::map<const void*, std::vector<char>> memo;

  explicit LassoEval(const LassoWord& w) : w(w), n(w.positions()) {}

  static const void* key(const Formula& f) {
    /* Structural sharing makes node identity a safe memo key; distinct
     * nodes with equal structure are just evaluated twice. */
    return f.id();
  }

  const std::vector<char>& eval(const Formula& f) {
    auto it = memo.find(key(f));
    if (it != memo.end()) return it->second;
    std::vector<char> v(n, 0);
    switch (f.op()) {
      case Op::True:
        v.assign(n, 1);
        break;
      case Op::False:
        break;
      case Op::Atom:
        for (std::size_t i = 0; i < n; ++i) v[i] = w.at(i).test(f.ap());
        break;
      case Op::Not: {
        const auto& c = eval(f.lhs());
        for (std::size_t i = 0; i < n; ++i) v[i] = !c[i];
        break;
      }
      case Op::And: {
        const auto& l = eval(f.lhs());
        const auto& r = eval(f.rhs());
        for (std::size_t i = 0; i < n; ++i) v[i] = l[i] && r[i];
        break;
      }
      case Op::Or: {
        const auto& l = eval(f.lhs());
        const auto& r = eval(f.rhs());
        for (std::size_t i = 0; i < n; ++i) v[i] = l[i] || r[i];
        break;
      }
      case Op::Next: {
        const auto& c = eval(f.lhs());
        for (std::size_t i = 0; i < n; ++i) v[i] = c[w.succ(i)];
        break;
      }
      case Op::Until: {
        const auto& l = eval(f.lhs());
        const auto& r = eval(f.rhs());
        fixpoint(v, false, [&](std::size_t i, const std::vector<char>& cur) {
          return r[i] || (l[i] && cur[w.succ(i)]);
        });
        break;
      }
      case Op::Release: {
        const auto& l = eval(f.lhs());
        const auto& r = eval(f.rhs());
        fixpoint(v, true, [&](std::size_t i, const std::vector<char>& cur) {
          return r[i] && (l[i] || cur[w.succ(i)]);
        });
        break;
      }
      case Op::Always: {
        const auto& c = eval(f.lhs());
        fixpoint(v, true, [&](std::size_t i, const std::vector<char>& cur) {
          return c[i] && cur[w.succ(i)];
        });
        break;
      }
      case Op::Eventually: {
        const auto& c = eval(f.lhs());
        fixpoint(v, false, [&](std::size_t i, const std::vector<char>& cur) {
          return c[i] || cur[w.succ(i)];
        });
        break;
      }
    }
    return memo.emplace(key(f), std::move(v)).first->second;
  }

  template <class Step>
  void fixpoint(std::vector<char>& v, bool init, Step step) {
    v.assign(n, init ? 1 : 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        char nv = step(i, v) ? 1 : 0;
        if (nv != v[i]) {
          v[i] = nv;
          changed = true;
        }
      }
    }
  }
};

}  // namespace

bool holds_on_lasso(const Formula& f, const LassoWord& w) {
  if (w.loop.empty()) throw Error("holds_on_lasso: lasso loop must be nonempty");
  LassoEval ev(w);
  return ev.eval(f)[0];
}

Formula progress(const Formula& f, Letter a) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Atom:
      return a.test(f.ap()) ? Formula::tt() : Formula::ff();
    case Op::Not:
      if (!f.lhs().is(Op::Atom))
        throw Error("progress: formula not in NNF: " + f.str());
      return a.test(f.lhs().ap()) ? Formula::ff() : Formula::tt();
    case Op::And:
      return conj(progress(f.lhs(), a), progress(f.rhs(), a));
    case Op::Or:
      return disj(progress(f.lhs(), a), progress(f.rhs(), a));
    case Op::Next:
      return f.lhs();
    case Op::Until:  // l U r  =  r | (l & X(l U r))
      return disj(progress(f.rhs(), a), conj(progress(f.lhs(), a), f));
    case Op::Release:  // l R r  =  r & (l | X(l R r))
      return conj(progress(f.rhs(), a), disj(progress(f.lhs(), a), f));
    case Op::Always:
      return conj(progress(f.lhs(), a), f);
    case Op::Eventually:
      return disj(progress(f.lhs(), a), f);
  }
  return f;  // unreachable
}

}  // namespace ltlrl::logic
