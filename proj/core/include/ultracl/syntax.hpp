#pragma once

// Text syntax for polynomials and set expressions.
//
//   poly := ['+'|'-'] term (('+'|'-') term)*
//   term := factor (('*'|'/') factor)*          '/' only by nonzero constants
//   factor := '-' factor | base ['^' integer]
//   base := integer | variable | '(' poly ')'
//
//   set := diff ('or' diff)*
//   diff := and ('diff' and)*
//   and := unary ('and' unary)*
//   unary := 'not' unary | primary
//   primary := 'universe' | 'empty' | 'V' '(' poly {',' poly} ')'
//            | 'abs' '(' poly ')' cmp 'abs' '(' poly ')' | '(' set ')'
//   cmp := '<' | '<=' | '>' | '>='

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ultracl/poly.hpp"
#include "ultracl/semiset.hpp"

namespace ultracl {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)), position_(position) {}
  /// Zero-based character offset into the input.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

Poly parse_poly(std::string_view text, const std::vector<std::string>& vars);
SetExpr parse_set(std::string_view text, const std::vector<std::string>& vars);

/// "x,y" -> {"x", "y"}; rejects empty, duplicate, reserved or malformed names.
std::vector<std::string> parse_var_list(std::string_view text);

}  // namespace ultracl
