#include "ltlrl/logic/parser.hpp"

#include <cctype>

namespace ltlrl::logic {

namespace {

enum class Tok { End, LParen, RParen, Not, And, Or, Impl, Iff, X, F, G, U, R, True, False, Ident };

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;       // current scan position
  Tok tok = Tok::End;        // current token
  std::size_t tok_pos = 0;   // byte offset of current token
  std::string ident;         // payload for Tok::Ident

  explicit Lexer(const std::string& t) : text(t) { advance(); }

  [[noreturn]] void fail(const std::string& why) const { throw SyntaxError(tok_pos, why); }

  void advance() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= text.size()) {
      tok = Tok::End;
      return;
    }
    char c = text[pos];
    switch (c) {
      case '(': ++pos; tok = Tok::LParen; return;
      case ')': ++pos; tok = Tok::RParen; return;
      case '!': ++pos; tok = Tok::Not; return;
      case '&': ++pos; tok = Tok::And; return;
      case '|': ++pos; tok = Tok::Or; return;
      case '-':
        if (pos + 1 < text.size() && text[pos + 1] == '>') {
          pos += 2;
          tok = Tok::Impl;
          return;
        }
        throw SyntaxError(pos, "stray '-'");
      case '<':
        if (text.compare(pos, 3, "<->") == 0) {
          pos += 3;
          tok = Tok::Iff;
          return;
        }
        throw SyntaxError(pos, "stray '<'");
      case 'X': ++pos; tok = Tok::X; return;
      case 'F': ++pos; tok = Tok::F; return;
      case 'G': ++pos; tok = Tok::G; return;
      case 'U': ++pos; tok = Tok::U; return;
      case 'R': ++pos; tok = Tok::R; return;
      default: break;
    }
    if (std::islower(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::islower(static_cast<unsigned char>(text[pos])) ||
              std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      ident = text.substr(start, pos - start);
      if (ident == "true") tok = Tok::True;
      else if (ident == "false") tok = Tok::False;
      else tok = Tok::Ident;
      return;
    }
    throw SyntaxError(pos, std::string("unexpected character '") + c + "'");
  }
};

struct Parser {
  Lexer lx;
  const Alphabet* alphabet;                 // null when inferring
  Alphabet inferred;                        // filled when alphabet == null

  Parser(const std::string& text, const Alphabet* ab) : lx(text), alphabet(ab) {}

  Formula atom(const std::string& name, std::size_t offset) {
    if (alphabet) {
      auto i = alphabet->find(name);
      if (!i) throw UnknownProposition(name, offset);
      return Formula::atom(name, *i);
    }
    return Formula::atom(name, inferred.add(name));
  }

  Formula parse_iff() {
    Formula f = parse_impl();
    while (lx.tok == Tok::Iff) {
      lx.advance();
      Formula g = parse_impl();
      f = Formula::and_(Formula::or_(Formula::not_(f), g),
                        Formula::or_(Formula::not_(g), f));
    }
    return f;
  }

  Formula parse_impl() {
    Formula f = parse_or();
    if (lx.tok == Tok::Impl) {
      lx.advance();
      Formula g = parse_impl();
      return Formula::or_(Formula::not_(f), g);
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (lx.tok == Tok::Or) {
      lx.advance();
      f = Formula::or_(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_until();
    while (lx.tok == Tok::And) {
      lx.advance();
      f = Formula::and_(f, parse_until());
    }
    return f;
  }

  Formula parse_until() {
    Formula f = parse_unary();
    if (lx.tok == Tok::U) {
      lx.advance();
      return Formula::until(f, parse_until());
    }
    if (lx.tok == Tok::R) {
      lx.advance();
      return Formula::release(f, parse_until());
    }
    return f;
  }

  Formula parse_unary() {
    switch (lx.tok) {
      case Tok::Not: lx.advance(); return Formula::not_(parse_unary());
      case Tok::X: lx.advance(); return Formula::next(parse_unary());
      case Tok::F: lx.advance(); return Formula::eventually(parse_unary());
      case Tok::G: lx.advance(); return Formula::always(parse_unary());
      default: return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (lx.tok) {
      case Tok::LParen: {
        lx.advance();
        Formula f = parse_iff();
        if (lx.tok != Tok::RParen) lx.fail("expected ')'");
        lx.advance();
        return f;
      }
      case Tok::True: lx.advance(); return Formula::tt();
      case Tok::False: lx.advance(); return Formula::ff();
      case Tok::Ident: {
        std::string name = lx.ident;
        std::size_t off = lx.tok_pos;
        lx.advance();
        return atom(name, off);
      }
      case Tok::End: lx.fail("unexpected end of input");
      default: lx.fail("expected a formula");
    }
  }

  Formula run() {
    Formula f = parse_iff();
    if (lx.tok != Tok::End) lx.fail("trailing input");
    return f;
  }
};

}  // namespace

Formula parse(const std::string& text, const Alphabet& alphabet) {
  Parser p(text, &alphabet);
  return p.run();
}

Alphabet infer_alphabet(const std::string& text) {
  Parser p(text, nullptr);
  p.run();
  return p.inferred;
}

}  // namespace ltlrl::logic
