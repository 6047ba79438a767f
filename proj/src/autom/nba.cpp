#include "ltlrl/autom/nba.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ltlrl/errors.hpp"

namespace ltlrl::autom {

using logic::FormulaLess;
using logic::Op;

namespace {

using FormulaSet = std::set<Formula, FormulaLess>;

constexpr std::size_t kInit = static_cast<std::size_t>(-1);

/* One tableau node.  `old` records processed obligations (literals plus the
 * temporal formulas whose expansion was committed), `next` the obligations
 * deferred to the successor. */
struct TNode {
  std::set<std::size_t> incoming;
  FormulaSet new_, old, next;
};

struct Tableau {
  std::vector<TNode> nodes;  // merged, indexed
  std::vector<std::pair<std::set<std::size_t>, FormulaSet>> work;
  std::size_t cap;

  explicit Tableau(std::size_t cap) : cap(cap) {}

  void run(const Formula& f) {
    work.push_back({{kInit}, {f}});
    while (!work.empty()) {
      auto [incoming, new_] = std::move(work.back());
      work.pop_back();
      TNode node;
      node.incoming = std::move(incoming);
      node.new_ = std::move(new_);
      expand(std::move(node));
    }
  }

  /* Is `f` (a literal) contradicted by what the node already holds? */
  static bool clashes(const FormulaSet& old, const Formula& f) {
    if (f.is(Op::False)) return true;
    if (f.is(Op::Not)) return old.count(f.lhs()) > 0;
    return old.count(Formula::not_(f)) > 0;
  }

  void expand(TNode node) {
    if (node.new_.empty()) {
      for (auto& r : nodes) {
        if (r.old == node.old && r.next == node.next) {
          r.incoming.insert(node.incoming.begin(), node.incoming.end());
          return;
        }
      }
      if (nodes.size() >= cap) throw CapacityExceeded(cap);
      nodes.push_back(node);
      work.push_back({{nodes.size() - 1}, node.next});
      return;
    }
    Formula f = *node.new_.begin();
    node.new_.erase(node.new_.begin());
    if (node.old.count(f)) {  // already committed on this node
      expand(std::move(node));
      return;
    }
    switch (f.op()) {
      case Op::True:
        expand(std::move(node));
        return;
      case Op::False:
        return;  // branch dies
      case Op::Atom:
      case Op::Not:
        if (clashes(node.old, f)) return;
        node.old.insert(f);
        expand(std::move(node));
        return;
      case Op::And:
        // Committed connectives go to old too: the acceptance test looks up
        // an Until's right side there, which may be a compound formula.
        node.old.insert(f);
        node.new_.insert(f.lhs());
        node.new_.insert(f.rhs());
        expand(std::move(node));
        return;
      case Op::Or: {
        node.old.insert(f);
        TNode left = node;
        left.new_.insert(f.lhs());
        expand(std::move(left));
        node.new_.insert(f.rhs());
        expand(std::move(node));
        return;
      }
      case Op::Next:
        node.old.insert(f);
        node.next.insert(f.lhs());
        expand(std::move(node));
        return;
      case Op::Until: {
        node.old.insert(f);
        TNode wait = node;  // l now, eta again next step
        wait.new_.insert(f.lhs());
        wait.next.insert(f);
        expand(std::move(wait));
        node.new_.insert(f.rhs());  // r now, discharged
        expand(std::move(node));
        return;
      }
      case Op::Release: {
        node.old.insert(f);
        TNode wait = node;  // r now, eta persists
        wait.new_.insert(f.rhs());
        wait.next.insert(f);
        expand(std::move(wait));
        node.new_.insert(f.lhs());  // l and r now, discharged
        node.new_.insert(f.rhs());
        expand(std::move(node));
        return;
      }
      case Op::Always:
      case Op::Eventually:
        throw Error("ltl_to_nba requires NNF input without G/F: " + f.str());
    }
  }
};

Formula guard_of(const FormulaSet& old) {
  Formula g = Formula::tt();
  for (const auto& f : old)
    if (logic::is_literal(f)) g = logic::conj(g, f);
  return g;
}

/* Remove states unreachable from the initial one, compacting indices. */
void prune(BuchiAutomaton& a) {
  std::vector<std::size_t> order{a.initial};
  std::vector<char> seen(a.num_states(), 0);
  seen[a.initial] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& e : a.edges[order[i]])
      if (!seen[e.dst]) {
        seen[e.dst] = 1;
        order.push_back(e.dst);
      }
  std::sort(order.begin(), order.end());
  std::vector<std::size_t> remap(a.num_states(), kInit);
  for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = i;

  BuchiAutomaton out;
  out.ap_names = a.ap_names;
  out.initial = remap[a.initial];
  out.edges.resize(order.size());
  out.accepting.resize(order.size(), 0);
  for (std::size_t s : order) {
    out.accepting[remap[s]] = a.accepting[s];
    for (const auto& e : a.edges[s])
      if (remap[e.dst] != kInit) out.edges[remap[s]].push_back({e.guard, remap[e.dst]});
  }
  a = std::move(out);
}

/* Coarsest bisimulation quotient, refining on (accepting, successor blocks
 * per letter).  Letters are enumerated over the declared propositions, so
 * this is only run for small alphabets (the construction cap bounds it). */
void quotient(BuchiAutomaton& a) {
  const std::size_t n = a.num_states();
  const std::size_t nl = std::size_t(1) << a.ap_names.size();
  std::vector<std::size_t> block(n);
  for (std::size_t s = 0; s < n; ++s) block[s] = a.accepting[s] ? 1 : 0;

  while (true) {
    // signature: (block, sorted successor-block set per letter)
    std::map<std::pair<std::size_t, std::vector<std::vector<std::size_t>>>, std::size_t> sig;
    std::vector<std::size_t> nb(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::vector<std::size_t>> succ(nl);
      for (std::size_t l = 0; l < nl; ++l) {
        Letter letter(static_cast<std::uint16_t>(l));
        for (const auto& e : a.edges[s])
          if (logic::eval_prop(e.guard, letter)) succ[l].push_back(block[e.dst]);
        std::sort(succ[l].begin(), succ[l].end());
        succ[l].erase(std::unique(succ[l].begin(), succ[l].end()), succ[l].end());
      }
      nb[s] = sig.emplace(std::make_pair(block[s], std::move(succ)), sig.size()).first->second;
    }
    if (nb == block) break;
    block = std::move(nb);
  }

  std::size_t nblocks = *std::max_element(block.begin(), block.end()) + 1;
  BuchiAutomaton out;
  out.ap_names = a.ap_names;
  out.initial = block[a.initial];
  out.edges.resize(nblocks);
  out.accepting.resize(nblocks, 0);
  // Merge edges: disjoin guards with equal (src, dst) blocks.
  std::map<std::pair<std::size_t, std::size_t>, Formula> merged;
  for (std::size_t s = 0; s < n; ++s) {
    out.accepting[block[s]] = a.accepting[s];
    for (const auto& e : a.edges[s]) {
      auto key = std::make_pair(block[s], block[e.dst]);
      auto it = merged.find(key);
      if (it == merged.end())
        merged.emplace(key, e.guard);
      else
        it->second = logic::disj(it->second, e.guard);
    }
  }
  for (auto& [key, g] : merged) out.edges[key.first].push_back({g, key.second});
  a = std::move(out);
}

}  // namespace

BuchiAutomaton ltl_to_nba(const Formula& f, const std::vector<std::string>& ap_names,
                          std::size_t max_states) {
  Tableau tb(max_states);
  tb.run(f);

  // Acceptance: one generalized set per Until in the closure; a node is in
  // F_eta unless it carries eta undischarged (eta in old without rhs(eta)).
  // An Until whose right side is the constant true is fulfilled at every
  // position, so it contributes no constraint. It must be dropped here, not
  // checked against old: true is never recorded there.
  std::vector<Formula> untils;
  for (const Formula& s : logic::subformulas(f))
    if (s.is(Op::Until) && !s.rhs().is(Op::True)) untils.push_back(s);
  const std::size_t k = untils.size();

  const std::size_t n = tb.nodes.size();
  auto in_fset = [&](std::size_t s, std::size_t i) {
    const auto& old = tb.nodes[s].old;
    return !old.count(untils[i]) || old.count(untils[i].rhs()) > 0;
  };

  BuchiAutomaton a;
  a.ap_names = ap_names;
  if (k <= 1) {
    // Already a plain Buchi condition.
    a.edges.resize(n + 1);
    a.accepting.resize(n + 1, 0);
    a.initial = n;  // synthetic initial, replaced below if possible
    for (std::size_t s = 0; s < n; ++s) {
      a.accepting[s] = k == 0 || in_fset(s, 0);
      Formula g = guard_of(tb.nodes[s].old);
      for (std::size_t src : tb.nodes[s].incoming)
        a.edges[src == kInit ? n : src].push_back({g, s});
    }
  } else {
    // Degeneralize with a counter: from (q, i) move to (q', i+1 mod k) when
    // q lies in F_i; accept on F_0 x {0}.
    auto id = [&](std::size_t q, std::size_t i) { return q * k + i; };
    a.edges.resize(n * k + 1);
    a.accepting.resize(n * k + 1, 0);
    a.initial = n * k;
    for (std::size_t q = 0; q < n; ++q) {
      a.accepting[id(q, 0)] = in_fset(q, 0);
      Formula g = guard_of(tb.nodes[q].old);
      for (std::size_t src : tb.nodes[q].incoming) {
        if (src == kInit) {
          a.edges[n * k].push_back({g, id(q, 0)});
          continue;
        }
        for (std::size_t i = 0; i < k; ++i) {
          std::size_t j = in_fset(src, i) ? (i + 1) % k : i;
          a.edges[id(src, i)].push_back({g, id(q, j)});
        }
      }
    }
  }

  // Reuse an existing state as initial when one has the same outgoing edges;
  // otherwise the synthetic state stays (non-accepting, no incoming).
  auto same_edges = [&](std::size_t x, std::size_t y) {
    if (a.edges[x].size() != a.edges[y].size()) return false;
    auto key = [](const BuchiAutomaton::Edge& e) { return std::make_pair(e.dst, e.guard.str()); };
    std::vector<std::pair<std::size_t, std::string>> ex, ey;
    for (const auto& e : a.edges[x]) ex.push_back(key(e));
    for (const auto& e : a.edges[y]) ey.push_back(key(e));
    std::sort(ex.begin(), ex.end());
    std::sort(ey.begin(), ey.end());
    return ex == ey;
  };
  for (std::size_t s = 0; s + 1 < a.num_states(); ++s)
    if (same_edges(s, a.initial)) {
      a.initial = s;
      break;
    }

  prune(a);
  quotient(a);
  return a;
}

bool nba_accepts_lasso(const BuchiAutomaton& a, const LassoWord& w) {
  if (w.loop.empty()) throw Error("lasso loop must be nonempty");
  const std::size_t p = w.positions();
  const std::size_t n = a.num_states();
  auto id = [&](std::size_t q, std::size_t pos) { return q * p + pos; };

  // Reachable product states from (initial, 0).
  std::vector<char> reach(n * p, 0);
  std::vector<std::size_t> stack{id(a.initial, 0)};
  reach[stack[0]] = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    std::size_t q = v / p, pos = v % p;
    for (const auto& e : a.edges[q]) {
      if (!logic::eval_prop(e.guard, w.at(pos))) continue;
      std::size_t u = id(e.dst, w.succ(pos));
      if (!reach[u]) {
        reach[u] = 1;
        stack.push_back(u);
      }
    }
  }

  // Iterative Tarjan SCC over the reachable product graph; accept on any
  // nontrivial SCC (or self-loop) through an accepting automaton state.
  std::vector<std::size_t> index(n * p, 0), low(n * p, 0);
  std::vector<char> on(n * p, 0);
  std::vector<std::size_t> sccstack;
  std::size_t counter = 1;

  struct Frame {
    std::size_t v, edge, child;
  };
  for (std::size_t root = 0; root < n * p; ++root) {
    if (!reach[root] || index[root]) continue;
    std::vector<Frame> frames{{root, 0, kInit}};
    index[root] = low[root] = counter++;
    sccstack.push_back(root);
    on[root] = 1;
    while (!frames.empty()) {
      Frame& fr = frames.back();
      std::size_t q = fr.v / p, pos = fr.v % p;
      if (fr.child != kInit) {
        low[fr.v] = std::min(low[fr.v], low[fr.child]);
        fr.child = kInit;
      }
      bool descended = false;
      while (fr.edge < a.edges[q].size()) {
        const auto& e = a.edges[q][fr.edge++];
        if (!logic::eval_prop(e.guard, w.at(pos))) continue;
        std::size_t u = id(e.dst, w.succ(pos));
        if (!index[u]) {
          index[u] = low[u] = counter++;
          sccstack.push_back(u);
          on[u] = 1;
          fr.child = u;
          frames.push_back({u, 0, kInit});
          descended = true;
          break;
        }
        if (on[u]) low[fr.v] = std::min(low[fr.v], index[u]);
      }
      if (descended) continue;
      if (low[fr.v] == index[fr.v]) {
        // Pop one SCC; check for an accepting state and a real cycle.
        std::vector<std::size_t> comp;
        while (true) {
          std::size_t u = sccstack.back();
          sccstack.pop_back();
          on[u] = 0;
          comp.push_back(u);
          if (u == fr.v) break;
        }
        bool has_acc = false;
        for (std::size_t u : comp)
          if (a.accepting[u / p]) has_acc = true;
        if (has_acc) {
          bool cyclic = comp.size() > 1;
          if (!cyclic) {
            std::size_t u = comp[0], q2 = u / p, pos2 = u % p;
            for (const auto& e : a.edges[q2])
              if (logic::eval_prop(e.guard, w.at(pos2)) && id(e.dst, w.succ(pos2)) == u)
                cyclic = true;
          }
          if (cyclic) return true;
        }
      }
      std::size_t done = fr.v;
      frames.pop_back();
      if (!frames.empty()) frames.back().child = done;
    }
  }
  return false;
}

}  // namespace ltlrl::autom
