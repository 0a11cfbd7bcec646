// Text format for theories and formulas.
//
//   sort <id> = { t1, ..., tn }.
//   distinct t1, ..., tn.
//   premise <name>: <formula>.
//   constraint <name>: <formula>.
//   schema <head>(<var>:<sort>, ...): <formula>.
//
// Formulas use ~ & | -> <->, `forall v:sort.` / `exists v:sort.` (several binders may be
// separated by commas), atoms P(t, ...), t1 = t2, t1 != t2, t1 < t2, and the constants true/false.
// `#` starts a comment that runs to the end of the line. docs/grammar.md has the full grammar.
#pragma once

#include <string>
#include <string_view>

#include "prefrev/formula.hpp"
#include "prefrev/theory.hpp"

namespace prefrev {

/// Throws Error(kSyntax) with line and column on malformed input.
TheorySpec parse_source(std::string_view text);

Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

/// Renders a specification in the format accepted by parse_source.
std::string serialize(const TheorySpec& spec);

/// `premise d1: p.` style rendering of one item.
std::string serialize(const TheoryItem& item);

}  // namespace prefrev
