#pragma once

// Surface syntax for polynomials in y and quantifier-free formulas.
//
//   poly    := ['-'] term (('+' | '-') term)*
//   term    := power ('*' power | power)*        juxtaposition multiplies
//   power   := atom ['^' integer]
//   atom    := integer ['/' integer] | 'y' | '(' poly ')'
//
//   formula := conj ('|' conj)*
//   conj    := unary ('&' unary)*
//   unary   := '!' unary | '(' formula ')' | atom
//   atom    := 'ord(' poly ')' REL ('ord(' poly ')' [('+'|'-') integer] | integer)
//            | 'ord(' poly ')' 'mod' integer '=' integer
//            | 'ac(' integer ',' poly ')' '=' integer
//            | 'rv(' integer ',' poly ')' '=' ('0' | '(' integer ',' integer ')')
//            | poly '=' '0'
//   REL     := '<' | '<=' | '=' | '>=' | '>'

#include <stdexcept>
#include <string>

#include "padic/formula.hpp"

namespace padic {

class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t column, const std::string& msg);
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

Poly parse_poly(const std::string& text);
/// Throws UnsupportedInput for quantifiers, ParseError for syntax errors.
Formula parse_formula(const std::string& text);

}  // namespace padic
