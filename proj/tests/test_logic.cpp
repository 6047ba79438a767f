#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ltlrl/logic/parser.hpp"
#include "ltlrl/logic/semantics.hpp"
#include "support/gen.hpp"

using namespace ltlrl;
using namespace ltlrl::logic;
using test::all_letters;
using test::exhaustive_lassos;
using test::make_atoms;
using test::naive_holds;
using test::random_formula;

namespace {

Letter letter(std::uint16_t bits) { return Letter(bits); }

const Alphabet kAB({"b", "g"});

Formula P(const std::string& text) { return parse(text, kAB); }

}  // namespace

TEST_CASE("parse builds the expected trees") {
  Alphabet ab({"collision", "blue", "green", "intersection"});

  Formula f = parse("G !collision", ab);
  REQUIRE(f.is(Op::Always));
  REQUIRE(f.lhs().is(Op::Not));
  CHECK(f.lhs().lhs().ap_name() == "collision");

  f = parse("!blue U green", ab);
  REQUIRE(f.is(Op::Until));
  CHECK(f.lhs() == Formula::not_(Formula::atom("blue", *ab.find("blue"))));
  CHECK(f.rhs().ap_name() == "green");

  // -> is sugar for !a | b.
  f = parse("G (intersection -> F green)", ab);
  REQUIRE(f.is(Op::Always));
  REQUIRE(f.lhs().is(Op::Or));
  CHECK(f.lhs().lhs() == Formula::not_(Formula::atom("intersection", 3)));
  CHECK(f.lhs().rhs() == Formula::eventually(Formula::atom("green", 2)));
}

TEST_CASE("parse precedence: unary > U/R > & > | > -> > <->") {
  CHECK(P("!b U g").str() == "!b U g");           // (!b) U g, not !(b U g)
  CHECK(P("b & g U b") == P("b & (g U b)"));  // U binds tighter than &
  CHECK(P("b | g & b") == P("b | (g & b)"));  // & binds tighter than |
  CHECK(P("b & g U b").str() == "b & g U b");     // printer drops redundant parens
  CHECK(P("b U g U b") == P("b U (g U b)"));      // right-associative
  CHECK(P("b R g R b") == P("b R (g R b)"));
  CHECK(P("b -> g") == P("!b | g"));
  CHECK(P("b <-> g") == P("(!b | g) & (!g | b)"));
  CHECK(P("b -> g -> b") == P("b -> (g -> b)"));  // -> right-associative
  CHECK(P("X b U g") == P("(X b) U g"));          // unary binds tightest
  // Constant negations fold at construction time.
  CHECK(P("true & ! false").str() == "true & true");
}

TEST_CASE("parse reports byte offsets on bad input") {
  auto offset_of = [](const std::string& text) {
    try {
      parse(text, kAB);
    } catch (const SyntaxError& e) {
      return e.offset;
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(offset_of("U g") == 0);        // missing left operand
  CHECK(offset_of("(b U g") == 6);     // unclosed paren, error at end
  CHECK(offset_of("b U") == 3);        // missing right operand
  CHECK(offset_of("b g") == 2);        // trailing junk
  CHECK(offset_of("b # g") == 2);      // stray character
  CHECK(offset_of("") == 0);

  try {
    parse("G !collision", kAB);
    FAIL("expected UnknownProposition");
  } catch (const UnknownProposition& e) {
    CHECK(e.name == "collision");
    CHECK(e.offset == 3);
  }
}

TEST_CASE("parse of printed form is identity") {
  auto atoms = make_atoms(2);
  Alphabet ab({"a", "b"});
  std::mt19937_64 rng(20240811);
  for (int i = 0; i < 400; ++i) {
    Formula f = random_formula(rng, 9, atoms, /*nnf_only=*/false);
    CAPTURE(f.str());
    CHECK(parse(f.str(), ab) == f);
  }
  // Hand-picked shapes that exercise every parenthesization rule.
  CHECK(P("(b U g) U b").str() == "(b U g) U b");
  CHECK(P("!(b & g)").str() == "!(b & g)");
  CHECK(P("X G b").str() == "X G b");
  CHECK(P("(b | g) & b").str() == "(b | g) & b");
  CHECK(P("F (b & g)").str() == "F (b & g)");
}

TEST_CASE("to_nnf pushes negations to atoms") {
  auto atoms = make_atoms(2);
  const Formula b = atoms[0], g = atoms[1];

  CHECK(to_nnf(Formula::not_(Formula::always(b))) ==
        Formula::until(Formula::tt(), Formula::not_(b)));
  CHECK(to_nnf(Formula::not_(Formula::until(b, g))) ==
        Formula::release(Formula::not_(b), Formula::not_(g)));
  CHECK(to_nnf(b) == b);
  CHECK(to_nnf(Formula::not_(Formula::next(b))) == Formula::next(Formula::not_(b)));
  CHECK(to_nnf(Formula::always(b)) == Formula::release(Formula::ff(), b));
  CHECK(to_nnf(Formula::eventually(b)) == Formula::until(Formula::tt(), b));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Formula f = to_nnf(random_formula(rng, 9, atoms, false));
    // Negation may only sit directly above an atom.
    for (const Formula& s : subformulas(f))
      if (s.is(Op::Not)) CHECK(s.lhs().is(Op::Atom));
  }
}

TEST_CASE("holds_on_lasso matches hand-computed cases") {
  const Formula b = Formula::atom("b", 0), g = Formula::atom("g", 1);

  // p never occurs on the empty-letter loop.
  CHECK(holds_on_lasso(Formula::always(Formula::not_(b)), {{}, {letter(0)}}));
  // g never occurs.
  CHECK_FALSE(holds_on_lasso(Formula::eventually(g), {{letter(0)}, {letter(0)}}));
  // g at step 1 discharges the until; b never blocks.
  const LassoWord w{{letter(0), letter(2)}, {letter(0)}};
  CHECK(holds_on_lasso(Formula::until(Formula::not_(b), g), w));
  CHECK(naive_holds(Formula::until(Formula::not_(b), g), w));

  CHECK_THROWS_AS(holds_on_lasso(b, LassoWord{{letter(0)}, {}}), const Error&);
}

TEST_CASE("holds_on_lasso agrees with the quantifier-expansion reference") {
  auto atoms = make_atoms(2);
  const auto lassos = exhaustive_lassos(2, 2, 2);
  std::mt19937_64 rng(101);
  for (int i = 0; i < 60; ++i) {
    Formula f = random_formula(rng, 6, atoms, false);
    CAPTURE(f.str());
    for (const auto& w : lassos) CHECK(holds_on_lasso(f, w) == naive_holds(f, w));
  }
  // The until example above, cross-checked over every 3-position lasso.
  const Formula f = P("!b U g");
  for (const auto& w : exhaustive_lassos(2, 2, 3)) {
    if (w.positions() != 3) continue;
    CHECK(holds_on_lasso(f, w) == naive_holds(f, w));
  }
}

TEST_CASE("to_nnf preserves semantics") {
  auto atoms = make_atoms(2);
  const auto lassos = exhaustive_lassos(2, 3, 2);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 40; ++i) {
    Formula f = random_formula(rng, 8, atoms, false);
    Formula n = to_nnf(f);
    CAPTURE(f.str());
    for (const auto& w : lassos) CHECK(holds_on_lasso(f, w) == holds_on_lasso(n, w));
  }
}

TEST_CASE("progress matches the expansion laws on fixed cases") {
  const Formula b = Formula::atom("b", 0), g = Formula::atom("g", 1);
  const Formula gnb = Formula::always(Formula::not_(b));
  CHECK(progress(gnb, letter(1)) == Formula::ff());       // b seen: violated
  CHECK(progress(gnb, letter(0)) == gnb);                 // obligation persists
  CHECK(progress(Formula::eventually(g), letter(2)) == Formula::tt());
  const Formula u = Formula::until(Formula::not_(b), g);
  CHECK(progress(u, letter(0)) == u);                     // neither decided
  CHECK(progress(u, letter(2)) == Formula::tt());         // g discharges
  CHECK(progress(u, letter(1)) == Formula::ff());         // b blocks before g
  CHECK(progress(Formula::next(g), letter(0)) == g);
}

TEST_CASE("progression is sound on every lasso") {
  auto atoms = make_atoms(2);
  const auto letters = all_letters(2);
  const auto lassos = exhaustive_lassos(2, 3, 2);
  std::mt19937_64 rng(555);
  std::vector<Formula> formulas;
  for (int i = 0; i < 25; ++i) formulas.push_back(random_formula(rng, 8, atoms, true));
  formulas.push_back(P("!b U g"));
  formulas.push_back(to_nnf(P("G (b -> F g)")));
  formulas.push_back(P("G !b & F g"));

  for (const Formula& f : formulas) {
    CAPTURE(f.str());
    for (Letter a : letters) {
      Formula pf = progress(f, a);
      for (const auto& w : lassos)
        CHECK(holds_on_lasso(f, w.prepend(a)) == holds_on_lasso(pf, w));
    }
  }
}

TEST_CASE("progression reaching False is a bad prefix") {
  auto atoms = make_atoms(2);
  const auto letters = all_letters(2);
  const auto continuations = exhaustive_lassos(2, 0, 2);
  std::mt19937_64 rng(808);

  int falsified = 0;
  for (int i = 0; i < 80; ++i) {
    Formula f0 = random_formula(rng, 8, atoms, true);
    // Walk every prefix of length <= 3.
    std::vector<std::pair<Formula, std::vector<Letter>>> frontier = {{f0, {}}};
    for (int depth = 0; depth < 3; ++depth) {
      std::vector<std::pair<Formula, std::vector<Letter>>> next;
      for (auto& [f, pre] : frontier) {
        for (Letter a : letters) {
          Formula pf = progress(f, a);
          auto pre2 = pre;
          pre2.push_back(a);
          if (pf == Formula::ff()) {
            ++falsified;
            for (const auto& c : continuations) {
              LassoWord w{pre2, c.loop};
              CHECK_FALSE(holds_on_lasso(f0, w));
            }
          } else {
            next.emplace_back(pf, pre2);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  CHECK(falsified > 50);  // the family must actually exercise the property
}

TEST_CASE("progression keeps formulas small via simplification") {
  // Iterate progression for many steps; without simplification the Always
  // expansion would grow linearly.
  Formula f = to_nnf(P("G (b -> F g)"));
  std::mt19937_64 rng(99);
  std::size_t max_size = 0;
  for (int t = 0; t < 300; ++t) {
    f = progress(f, letter(static_cast<std::uint16_t>(rng() % 4)));
    REQUIRE(f != Formula::ff());
    max_size = std::max(max_size, f.size());
  }
  CHECK(max_size <= 24);
}

TEST_CASE("boolean simplification rules") {
  const Formula b = Formula::atom("b", 0), g = Formula::atom("g", 1);
  CHECK(conj(b, b) == b);
  CHECK(disj(b, b) == b);
  CHECK(conj(b, Formula::tt()) == b);
  CHECK(conj(b, Formula::ff()) == Formula::ff());
  CHECK(disj(b, Formula::tt()) == Formula::tt());
  CHECK(disj(b, Formula::ff()) == b);
  CHECK(conj(b, disj(b, g)) == b);   // absorption
  CHECK(disj(b, conj(b, g)) == b);
  CHECK(Formula::not_(Formula::not_(b)) == b);
  CHECK(Formula::not_(Formula::tt()) == Formula::ff());
}

TEST_CASE("subformulas is the closure ordered by size then structure") {
  const Formula b = Formula::atom("b", 0), g = Formula::atom("g", 1);
  const Formula u = Formula::until(Formula::not_(b), g);
  auto subs = subformulas(u);
  REQUIRE(subs.size() == 4);
  CHECK(subs[0] == b);
  CHECK(subs[1] == g);
  CHECK(subs[2] == Formula::not_(b));
  CHECK(subs[3] == u);

  auto single = subformulas(Formula::tt());
  REQUIRE(single.size() == 1);
  CHECK(single[0] == Formula::tt());

  auto gp = subformulas(Formula::always(b));
  REQUIRE(gp.size() == 2);
  CHECK(gp[0] == b);
  CHECK(gp[1] == Formula::always(b));
}

TEST_CASE("alphabet enforces its limits") {
  Alphabet ab;
  CHECK(ab.add("zone_a") == 0);
  CHECK(ab.add("zone_a") == 0);  // idempotent
  CHECK_THROWS_AS(ab.add("true"), const ConfigError&);
  CHECK_THROWS_AS(ab.add("false"), const ConfigError&);
  Alphabet full;
  for (int i = 0; i < 16; ++i) full.add("p" + std::to_string(i));
  CHECK_THROWS_AS(full.add("p16"), const ConfigError&);

  CHECK(to_string(kAB, letter(0)) == "{}");
  CHECK(to_string(kAB, letter(3)) == "{b g}");
}

TEST_CASE("infer_alphabet collects atoms in first-use order") {
  Alphabet ab = infer_alphabet("G (crash -> F repair) & !crash U go");
  REQUIRE(ab.size() == 3);
  CHECK(ab.name(0) == "crash");
  CHECK(ab.name(1) == "repair");
  CHECK(ab.name(2) == "go");
}
