#pragma once

#include <stdexcept>
#include <string>

#include "fstl/formula.hpp"
#include "fstl/predicate.hpp"

namespace fstl {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// Parses the STL text DSL. Grammar (whitespace-insensitive):
///   formula := term (('&'|'|') term)*      -- one operator kind per level
///   term    := '!' term
///            | 'F' bounds formula
///            | 'G' bounds formula
///            | atom 'U' bounds atom-or-paren
///            | '(' formula ')' | IDENT | 'true'
///   bounds  := '[' number ',' number ']'   -- decimal seconds, 0 <= a <= b
/// '|' is sugar for !(!a & !b) and creates no dedicated node.
FormulaPtr parse_formula(const std::string& text, const PredicateTable& table);

}  // namespace fstl
