#pragma once

// Closure, interior and boundary of semialgebraic sets in the canonical
// topology of R^n.
//
// Rules, applied after DNF normalization:
//   R1  closure of a union is the union of closures
//   R2  clopen atoms factor out of the closure of an intersection
//   R3  weak atoms and analytic sets are closed
//   R4  a single strict atom |f| < |g|, with h = gcd(f, g), f = h f0, g = h g0,
//       has closure {|f0| < |g0|} u V(f0, g0)
//   R5  cl(V(f) \ V(g)) = V(f*), f* = f with every factor dividing g removed
// A basic set outside these cases gets the intersection of the closures of
// its atoms as an over-approximation and the result is marked uncertified.

#include <optional>
#include <string>
#include <vector>

#include "ultracl/semiset.hpp"

namespace ultracl {

struct RuleStep {
  std::string rule;
  std::vector<Poly> operands;
  std::string note;
};

struct ClosureResult {
  SetExpr result;
  std::vector<RuleStep> trace;
  bool certified = true;
};

ClosureResult closure(const SetExpr& e, const PrimeConfig& cfg);
ClosureResult interior(const SetExpr& e, const PrimeConfig& cfg);
ClosureResult boundary(const SetExpr& e, const PrimeConfig& cfg);

/// A basic set split by atom classification.
struct BasicParts {
  bool empty = false;
  std::vector<Atom> clopen;
  std::vector<Atom> weak;
  std::vector<Atom> strict;
  std::vector<Poly> zeros;      // V(f) constraints from degenerate atoms
  std::vector<Poly> punctures;  // complement-of-V(g) constraints
};

BasicParts split_basic(const BasicSet& b, const PrimeConfig& cfg);
/// True when R2-R5 resolve the closure of b exactly.
bool in_certified_fragment(const BasicParts& parts);

/// V(gens) with trivial generators simplified: a nonzero constant gives
/// Empty, zero generators are dropped, and no generators left gives R^n.
SetExpr analytic_or_trivial(std::size_t nvars, std::vector<Poly> gens);

struct ClosureMemberOptions {
  unsigned sample_depth = 3;
  unsigned max_blowups = 30;
};

struct ClosureMembership {
  bool value = false;
  /// Set when the answer relied on sampling a blow-up fiber.
  bool approximate = false;
  friend bool operator==(const ClosureMembership&, const ClosureMembership&) = default;
};

/// Thrown for inputs outside the certified fragment in dimension != 2.
class UnsupportedDimension : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ClosureMembership closure_member(const SetExpr& e, const Point& x, const PrimeConfig& cfg,
                                 const ClosureMemberOptions& opts = {});

}  // namespace ultracl
