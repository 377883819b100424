#pragma once

#include <string_view>

#include "ultracl/valuation.hpp"

namespace ultracl {

enum class Comparison { Le, Lt, Ge, Gt };

/// Logical negation: not(a <= b) is a > b.
constexpr Comparison negate(Comparison c) {
  switch (c) {
    case Comparison::Le: return Comparison::Gt;
    case Comparison::Lt: return Comparison::Ge;
    case Comparison::Ge: return Comparison::Lt;
    case Comparison::Gt: return Comparison::Le;
  }
  return c;
}

/// Swapping the operands: a <= b iff b >= a.
constexpr Comparison mirror(Comparison c) {
  switch (c) {
    case Comparison::Le: return Comparison::Ge;
    case Comparison::Lt: return Comparison::Gt;
    case Comparison::Ge: return Comparison::Le;
    case Comparison::Gt: return Comparison::Lt;
  }
  return c;
}

constexpr bool is_strict(Comparison c) { return c == Comparison::Lt || c == Comparison::Gt; }

constexpr std::string_view symbol(Comparison c) {
  switch (c) {
    case Comparison::Le: return "<=";
    case Comparison::Lt: return "<";
    case Comparison::Ge: return ">=";
    case Comparison::Gt: return ">";
  }
  return "?";
}

inline bool holds(const NormValue& a, Comparison c, const NormValue& b) {
  switch (c) {
    case Comparison::Le: return a <= b;
    case Comparison::Lt: return a < b;
    case Comparison::Ge: return a >= b;
    case Comparison::Gt: return a > b;
  }
  return false;
}

}  // namespace ultracl
