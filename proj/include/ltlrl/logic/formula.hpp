#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ltlrl::logic {

enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Next,
  Until,
  Release,
  Always,
  Eventually,
};

namespace detail {
struct FormulaNode;
}

/* Immutable formula.  A Formula is a cheap value wrapping a shared node;
 * structural equality is O(1) in the common case via precomputed hashes.
 * Construction goes through the factory functions below; `not_` performs
 * double-negation and constant elimination, everything else preserves the
 * requested shape. */
class Formula {
 public:
  Formula();

  Op op() const;
  bool is(Op o) const { return op() == o; }

  /* Atom accessors; valid only when op()==Op::Atom. */
  std::size_t ap() const;
  const std::string& ap_name() const;

  /* Children; lhs() is the only child of unary operators. */
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::size_t size() const;  // node count
  std::uint64_t hash() const;

  /* Node identity; stable for the lifetime of any copy of this value.
   * Useful as a memo key where structural sharing is expected. */
  const void* id() const { return n_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

  /* Total structural order: (op, atom name, children lexicographically).
   * Deterministic across runs; used wherever formula sets need an order. */
  static int compare(const Formula& a, const Formula& b);

  /* Factories. */
  static Formula tt();
  static Formula ff();
  static Formula atom(const std::string& name, std::size_t index);
  static Formula not_(Formula f);
  static Formula and_(Formula l, Formula r);
  static Formula or_(Formula l, Formula r);
  static Formula next(Formula f);
  static Formula until(Formula l, Formula r);
  static Formula release(Formula l, Formula r);
  static Formula always(Formula f);
  static Formula eventually(Formula f);

  /* Canonical printer; parse(print(f)) reproduces f exactly. */
  std::string str() const;

 private:
  friend struct detail::FormulaNode;

  explicit Formula(std::nullptr_t) {}
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : n_(std::move(n)) {}

  static bool deep_equal(const Formula& a, const Formula& b);
  static Formula make(Op op, Formula l, Formula r);

  std::shared_ptr<const detail::FormulaNode> n_;
};

namespace detail {
struct FormulaNode {
  Op op = Op::True;
  std::size_t ap = 0;
  std::string name;
  Formula lhs{nullptr}, rhs{nullptr};  // null children for leaves
  std::size_t size = 1;
  std::uint64_t hash = 0;
};
}  // namespace detail

inline Op Formula::op() const { return n_->op; }
inline std::size_t Formula::ap() const { return n_->ap; }
inline const std::string& Formula::ap_name() const { return n_->name; }
inline const Formula& Formula::lhs() const { return n_->lhs; }
inline const Formula& Formula::rhs() const { return n_->rhs; }
inline std::size_t Formula::size() const { return n_->size; }
inline std::uint64_t Formula::hash() const { return n_->hash; }

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return true;
  if (a.n_->hash != b.n_->hash) return false;
  return Formula::deep_equal(a, b);
}

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const {
    return Formula::compare(a, b) < 0;
  }
};

inline bool is_literal(const Formula& f) {
  return f.is(Op::Atom) || (f.is(Op::Not) && f.lhs().is(Op::Atom));
}

inline bool is_propositional(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return true;
    case Op::Not:
      return is_propositional(f.lhs());
    case Op::And:
    case Op::Or:
      return is_propositional(f.lhs()) && is_propositional(f.rhs());
    default:
      return false;
  }
}

/* All distinct subformulas (syntactic closure), deterministically ordered by
 * ascending (size, structural order). */
std::vector<Formula> subformulas(const Formula& f);

}  // namespace ltlrl::logic
