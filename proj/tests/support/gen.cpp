#include "support/gen.hpp"

#include <stdexcept>

#include "ltlrl/autom/monitor_automaton.hpp"

namespace ltlrl::test {

using logic::Op;

std::vector<Letter> all_letters(std::size_t n_props) {
  std::vector<Letter> out;
  for (std::uint32_t bits = 0; bits < (1u << n_props); ++bits)
    out.push_back(Letter(static_cast<std::uint16_t>(bits)));
  return out;
}

std::vector<LassoWord> exhaustive_lassos(std::size_t n_props, std::size_t max_prefix,
                                         std::size_t max_loop) {
  const auto letters = all_letters(n_props);
  // Enumerate all words of a given length as base-|letters| counters.
  auto words_of_length = [&](std::size_t len) {
    std::vector<std::vector<Letter>> out;
    std::vector<std::size_t> idx(len, 0);
    while (true) {
      std::vector<Letter> w;
      for (std::size_t i : idx) w.push_back(letters[i]);
      out.push_back(std::move(w));
      std::size_t k = 0;
      while (k < len && ++idx[k] == letters.size()) idx[k++] = 0;
      if (k == len) break;
      if (len == 0) break;
    }
    return out;
  };

  std::vector<LassoWord> out;
  for (std::size_t lp = 0; lp <= max_prefix; ++lp)
    for (std::size_t ll = 1; ll <= max_loop; ++ll)
      for (auto& p : words_of_length(lp))
        for (auto& l : words_of_length(ll)) out.push_back(LassoWord{p, l});
  return out;
}

std::vector<Formula> make_atoms(std::size_t n_props) {
  std::vector<Formula> out;
  for (std::size_t i = 0; i < n_props; ++i)
    out.push_back(Formula::atom(std::string(1, static_cast<char>('a' + i)), i));
  return out;
}

Formula random_formula(std::mt19937_64& rng, int budget, const std::vector<Formula>& atoms,
                       bool nnf_only) {
  auto u = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  auto leaf = [&]() -> Formula {
    int c = u(6);
    if (c == 0) return Formula::tt();
    if (c == 1) return Formula::ff();
    return atoms[u(static_cast<int>(atoms.size()))];
  };
  if (budget <= 1) return leaf();
  // 1-in-3 chance of a unary node, always when only two nodes fit.
  if (budget == 2 || u(3) == 0) {
    switch (u(4)) {
      case 0:
        return nnf_only ? Formula::not_(atoms[u(static_cast<int>(atoms.size()))])
                        : Formula::not_(random_formula(rng, budget - 1, atoms, nnf_only));
      case 1:
        return Formula::next(random_formula(rng, budget - 1, atoms, nnf_only));
      case 2:
        return Formula::always(random_formula(rng, budget - 1, atoms, nnf_only));
      default:
        return Formula::eventually(random_formula(rng, budget - 1, atoms, nnf_only));
    }
  }
  int left = 1 + u(budget - 2);
  Formula l = random_formula(rng, left, atoms, nnf_only);
  Formula r = random_formula(rng, budget - 1 - left, atoms, nnf_only);
  switch (u(4)) {
    case 0: return Formula::and_(l, r);
    case 1: return Formula::or_(l, r);
    case 2: return Formula::until(l, r);
    default: return Formula::release(l, r);
  }
}

namespace {

bool naive_at(const Formula& f, const LassoWord& w, std::size_t k) {
  // Enough steps to see every distinct suffix from any start position.
  const std::size_t horizon = w.prefix.size() + 2 * w.loop.size();
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return w.at(k).test(f.ap());
    case Op::Not: return !naive_at(f.lhs(), w, k);
    case Op::And: return naive_at(f.lhs(), w, k) && naive_at(f.rhs(), w, k);
    case Op::Or: return naive_at(f.lhs(), w, k) || naive_at(f.rhs(), w, k);
    case Op::Next: return naive_at(f.lhs(), w, w.succ(k));
    case Op::Until: {
      std::size_t i = k;
      for (std::size_t n = 0; n <= horizon; ++n, i = w.succ(i)) {
        if (naive_at(f.rhs(), w, i)) return true;
        if (!naive_at(f.lhs(), w, i)) return false;
      }
      return false;
    }
    case Op::Release: {
      std::size_t i = k;
      for (std::size_t n = 0; n <= horizon; ++n, i = w.succ(i)) {
        if (!naive_at(f.rhs(), w, i)) return false;
        if (naive_at(f.lhs(), w, i)) return true;
      }
      return true;
    }
    case Op::Always: {
      std::size_t i = k;
      for (std::size_t n = 0; n <= horizon; ++n, i = w.succ(i))
        if (!naive_at(f.lhs(), w, i)) return false;
      return true;
    }
    case Op::Eventually: {
      std::size_t i = k;
      for (std::size_t n = 0; n <= horizon; ++n, i = w.succ(i))
        if (naive_at(f.lhs(), w, i)) return true;
      return false;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

bool naive_holds(const Formula& f, const LassoWord& w) {
  if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
  return naive_at(f, w, 0);
}

Formula random_fragment_formula(std::mt19937_64& rng) {
  using autom::MonitorAutomaton;
  using autom::MonitorEvent;
  auto atoms = make_atoms(2);
  const auto letters = all_letters(2);
  auto u = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  auto lit = [&] {
    Formula a = atoms[u(2)];
    return u(2) ? Formula::not_(a) : a;
  };
  auto prop = [&] {
    Formula f = lit();
    while (u(3) == 0) f = u(2) ? Formula::and_(f, lit()) : Formula::or_(f, lit());
    return f;
  };

  while (true) {
    const bool with_chain = u(4) != 0;
    const bool with_safety = !with_chain || u(3) == 0;
    Formula f;
    bool have = false;
    if (with_chain) {
      const int k = 1 + u(2);
      const int m = u(k + 1);  // leading U-stages; F-stages have no avoid and
                               // must come last to keep avoids descending
      std::vector<Formula> sa(k);
      Formula acc;
      for (int i = m - 1; i >= 0; --i) {
        acc = (i == m - 1) ? lit() : (u(2) ? logic::conj(acc, lit()) : acc);
        sa[i] = acc;  // earlier left sides only get stronger
      }
      Formula form = (k - 1 < m) ? Formula::until(sa[k - 1], prop())
                                 : Formula::eventually(prop());
      for (int i = k - 2; i >= 0; --i) {
        Formula rest = Formula::and_(prop(), form);
        form = (i < m) ? Formula::until(sa[i], rest) : Formula::eventually(rest);
      }
      f = form;
      have = true;
    }
    if (with_safety) {
      Formula g = Formula::always(prop());
      f = have ? (u(2) ? Formula::and_(g, f) : Formula::and_(f, g)) : g;
    }
    if (f.size() > 8) continue;

    autom::ReachAvoidSequence seq;
    try {
      seq = autom::reach_avoid_decompose(f, 2);
    } catch (const Error&) {
      continue;
    }
    auto mon = MonitorAutomaton::compile(seq, {"a", "b"});

    // Keep only specs where every reachable pending state still has both an
    // accepting and a rejecting continuation.
    const std::size_t S = mon.num_states();
    auto reachable_from = [&](std::size_t s0) {
      std::vector<char> r(S, 0);
      std::vector<std::size_t> st{s0};
      r[s0] = 1;
      while (!st.empty()) {
        std::size_t s = st.back();
        st.pop_back();
        for (Letter l : letters) {
          std::size_t n = mon.step(s, l).next;
          if (!r[n]) {
            r[n] = 1;
            st.push_back(n);
          }
        }
      }
      return r;
    };
    auto can_accept = [&](std::size_t s0) {
      if (!reachable_from(s0)[mon.good_state()]) return false;
      if (mon.good_is_sink()) return true;
      for (Letter l : letters)
        if (mon.step(mon.good_state(), l).event == MonitorEvent::None) return true;
      return false;
    };
    auto can_reject = [&](std::size_t s0) {
      auto r = reachable_from(s0);
      for (std::size_t s = 0; s < S; ++s) {
        if (!r[s]) continue;
        for (Letter l : letters) {
          auto st = mon.step(s, l);
          if (st.event == MonitorEvent::Violation) return true;
          if (s < mon.num_stages() && st.next == s) return true;  // stall forever
        }
      }
      return false;
    };
    auto live = reachable_from(mon.initial_state());
    bool ok = true;
    for (std::size_t s = 0; s < S && ok; ++s) {
      if (!live[s] || mon.is_sink(s)) continue;
      ok = can_accept(s) && can_reject(s);
    }
    if (ok) return f;
  }
}

}  // namespace ltlrl::test
