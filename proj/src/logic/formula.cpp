#include "ltlrl/logic/formula.hpp"

#include <algorithm>
#include <set>

namespace ltlrl::logic {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t str_hash(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ull;
  return h;
}

bool unary(Op op) { return op == Op::Not || op == Op::Next || op == Op::Always || op == Op::Eventually; }
bool binary(Op op) { return op == Op::And || op == Op::Or || op == Op::Until || op == Op::Release; }

/* Printing precedence, higher binds tighter.  U/R sit between the unary
 * operators and '&', matching the parser. */
int prec(Op op) {
  switch (op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Until:
    case Op::Release: return 3;
    case Op::Not:
    case Op::Next:
    case Op::Always:
    case Op::Eventually: return 4;
    default: return 5;
  }
}

const char* sym(Op op) {
  switch (op) {
    case Op::Not: return "!";
    case Op::Next: return "X";
    case Op::Always: return "G";
    case Op::Eventually: return "F";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Until: return "U";
    case Op::Release: return "R";
    default: return "";
  }
}

}  // namespace

using detail::FormulaNode;

Formula::Formula() : Formula(tt()) {}

Formula Formula::make(Op op, Formula l, Formula r) {
  auto n = std::make_shared<FormulaNode>();
  n->op = op;
  n->lhs = l;
  n->rhs = r;
  n->size = 1 + (l.n_ ? l.size() : 0) + (r.n_ ? r.size() : 0);
  std::uint64_t h = mix(0x6a5d39eae116586aull, static_cast<std::uint64_t>(op));
  if (l.n_) h = mix(h, l.hash());
  if (r.n_) h = mix(h, r.hash());
  n->hash = h;
  return Formula(std::move(n));
}

Formula Formula::tt() {
  static const Formula f = [] {
    auto n = std::make_shared<FormulaNode>();
    n->hash = 0x5bf03e9ce1f2a10bull;
    return Formula(std::move(n));
  }();
  return f;
}

Formula Formula::ff() {
  static const Formula f = [] {
    auto n = std::make_shared<FormulaNode>();
    n->op = Op::False;
    n->hash = 0x213a74d2f0ee62c7ull;
    return Formula(std::move(n));
  }();
  return f;
}

Formula Formula::atom(const std::string& name, std::size_t index) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Atom;
  n->ap = index;
  n->name = name;
  n->hash = mix(0x8c7f2ac19d3be741ull, str_hash(name));
  return Formula(std::move(n));
}

Formula Formula::not_(Formula f) {
  if (f.is(Op::True)) return ff();
  if (f.is(Op::False)) return tt();
  if (f.is(Op::Not)) return f.lhs();
  return make(Op::Not, f, Formula(nullptr));
}

Formula Formula::and_(Formula l, Formula r) { return make(Op::And, l, r); }
Formula Formula::or_(Formula l, Formula r) { return make(Op::Or, l, r); }
Formula Formula::next(Formula f) { return make(Op::Next, f, Formula(nullptr)); }
Formula Formula::until(Formula l, Formula r) { return make(Op::Until, l, r); }
Formula Formula::release(Formula l, Formula r) { return make(Op::Release, l, r); }
Formula Formula::always(Formula f) { return make(Op::Always, f, Formula(nullptr)); }
Formula Formula::eventually(Formula f) { return make(Op::Eventually, f, Formula(nullptr)); }

bool Formula::deep_equal(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return true;
  if (a.n_->op != b.n_->op || a.n_->size != b.n_->size) return false;
  switch (a.n_->op) {
    case Op::True:
    case Op::False:
      return true;
    case Op::Atom:
      return a.n_->name == b.n_->name;
    default:
      if (unary(a.n_->op)) return a.lhs() == b.lhs();
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return 0;
  if (a.n_->op != b.n_->op)
    return static_cast<int>(a.n_->op) < static_cast<int>(b.n_->op) ? -1 : 1;
  switch (a.n_->op) {
    case Op::True:
    case Op::False:
      return 0;
    case Op::Atom:
      return a.n_->name.compare(b.n_->name);
    default: {
      int c = compare(a.lhs(), b.lhs());
      if (c != 0 || unary(a.n_->op)) return c;
      return compare(a.rhs(), b.rhs());
    }
  }
}

namespace {

void print_rec(const Formula& f, int ctx, std::string& out) {
  Op op = f.op();
  switch (op) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Atom: out += f.ap_name(); return;
    default: break;
  }
  int p = prec(op);
  bool paren = p < ctx;
  if (paren) out += '(';
  if (unary(op)) {
    out += sym(op);
    if (op != Op::Not) out += ' ';
    /* unary operators chain without parentheses */
    print_rec(f.lhs(), p, out);
  } else {
    /* '&' and '|' are built left-associative by the parser, U/R
     * right-associative; parenthesize the child that would re-associate. */
    bool right_assoc = (op == Op::Until || op == Op::Release);
    print_rec(f.lhs(), right_assoc ? p + 1 : p, out);
    out += ' ';
    out += sym(op);
    out += ' ';
    print_rec(f.rhs(), right_assoc ? p : p + 1, out);
  }
  if (paren) out += ')';
}

}  // namespace

std::string Formula::str() const {
  std::string out;
  print_rec(*this, 0, out);
  return out;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::set<Formula, FormulaLess> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    switch (g.op()) {
      case Op::True:
      case Op::False:
      case Op::Atom:
        break;
      case Op::Not:
      case Op::Next:
      case Op::Always:
      case Op::Eventually:
        stack.push_back(g.lhs());
        break;
      default:
        stack.push_back(g.lhs());
        stack.push_back(g.rhs());
    }
  }
  std::vector<Formula> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const Formula& a, const Formula& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return Formula::compare(a, b) < 0;
  });
  return out;
}

}  // namespace ltlrl::logic
