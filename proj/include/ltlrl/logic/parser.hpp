#pragma once

#include <string>

#include "ltlrl/logic/alphabet.hpp"
#include "ltlrl/logic/formula.hpp"

namespace ltlrl::logic {

/* Parse a formula over the given alphabet.
 *
 * Grammar, loosest to tightest binding:
 *   iff   := impl ('<->' impl)*
 *   impl  := or ('->' impl)?
 *   or    := and ('|' and)*
 *   and   := until ('&' until)*
 *   until := unary (('U'|'R') until)?          (right-associative)
 *   unary := ('!'|'X'|'F'|'G') unary | primary
 *   primary := '(' iff ')' | 'true' | 'false' | proposition
 *
 * '->' and '<->' are sugar: a -> b becomes !a | b, a <-> b becomes
 * (!a | b) & (!b | a).  Propositions are [a-z_][a-z0-9_]*.
 *
 * Throws SyntaxError (with byte offset) or UnknownProposition. */
Formula parse(const std::string& text, const Alphabet& alphabet);

/* Collect the proposition names appearing in a formula string, in first
 * appearance order, without needing a declared alphabet.  Convenience for
 * the CLI.  Throws SyntaxError on malformed input. */
Alphabet infer_alphabet(const std::string& text);

}  // namespace ltlrl::logic
