#pragma once

#include <string>
#include <string_view>

#include "oag/formula.hpp"

namespace oag {

// Concrete syntax (ASCII first; the unicode connectives are accepted as aliases):
//
//   formula     := quantified
//   quantified  := ("forall" | "exists") var quantified | implication
//   implication := disjunction ("->" implication)?
//   disjunction := conjunction ("|" conjunction)*
//   conjunction := negation ("&" negation)*
//   negation    := "~" negation | "(" formula ")" | atom | "true" | "false"
//   atom        := term ("<"|"<="|"="|"!="|">"|">=") term | predname "(" term ")"
//   term        := term ("+"|"-") mono | mono
//   mono        := rat "*" var | var | rat | rat "*" "sqrt" "(" int ")" | "-" mono
//
// `A` / `E` followed by a variable also introduce quantifiers, and `#` starts
// a comment running to the end of the line. Derived relations are rewritten
// on the fly: s > t as t < s, s <= t as (s < t | s = t), s != t as ~(s = t).

/// Throws ParseError carrying the span of the first offending token.
Formula parse_formula(std::string_view text);
LinearTerm parse_term(std::string_view text);

std::string print_term(const LinearTerm& t);
std::string print_atom(const Atom& a);
/// Output re-parses to an alpha-equivalent formula.
std::string print_formula(const Formula& f);

}  // namespace oag
