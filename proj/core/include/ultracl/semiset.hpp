#pragma once

// Set descriptions over R^n: norm-comparison atoms |f| <> |g|, analytic sets
// V(f1, ..., fk), and boolean combinations of these.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ultracl/comparison.hpp"
#include "ultracl/poly.hpp"

namespace ultracl {

/// {x : |f(x)| cmp |g(x)|}
struct Atom {
  Poly f;
  Poly g;
  Comparison cmp = Comparison::Le;

  std::size_t nvars() const { return f.nvars(); }
  Atom negated() const { return {f, g, negate(cmp)}; }
  /// Same set with the operands swapped.
  Atom mirrored() const { return {g, f, mirror(cmp)}; }
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Common zero set of the generators.
struct AnalyticSet {
  std::vector<Poly> generators;
  friend bool operator==(const AnalyticSet&, const AnalyticSet&) = default;
};

class SetExpr {
 public:
  enum class Kind { Atom, Analytic, Universe, Empty, Union, Intersection, Difference, Complement };

  static SetExpr atom(Atom a);
  static SetExpr atom(Poly f, Comparison cmp, Poly g);
  static SetExpr analytic(std::vector<Poly> generators);
  static SetExpr universe(std::size_t nvars);
  static SetExpr empty(std::size_t nvars);

  // Structural constructors; no simplification is performed.
  static SetExpr make_union(SetExpr a, SetExpr b);
  static SetExpr make_intersection(SetExpr a, SetExpr b);
  static SetExpr make_difference(SetExpr a, SetExpr b);
  static SetExpr make_complement(SetExpr a);

  Kind kind() const;
  std::size_t nvars() const;
  const Atom& as_atom() const;
  const AnalyticSet& as_analytic() const;
  const SetExpr& lhs() const;
  const SetExpr& rhs() const;
  /// Operand of a Complement node.
  const SetExpr& operand() const { return lhs(); }

  bool is_universe() const { return kind() == Kind::Universe; }
  bool is_empty_leaf() const { return kind() == Kind::Empty; }

  friend bool operator==(const SetExpr& a, const SetExpr& b);

 private:
  struct Node;
  explicit SetExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Simplifying combinators (units/absorbing elements, complement of leaves).
SetExpr complement(const SetExpr& e);
SetExpr union_of(const SetExpr& a, const SetExpr& b);
SetExpr intersection(const SetExpr& a, const SetExpr& b);
SetExpr difference(const SetExpr& a, const SetExpr& b);
SetExpr union_all(std::size_t nvars, const std::vector<SetExpr>& parts);
SetExpr intersect_all(std::size_t nvars, const std::vector<SetExpr>& parts);

bool member(const Atom& a, const Point& x, const PrimeConfig& cfg);
bool member(const SetExpr& e, const Point& x, const PrimeConfig& cfg);

/// Finite intersection of atoms (empty list = R^n).
struct BasicSet {
  std::vector<Atom> atoms;
  friend bool operator==(const BasicSet&, const BasicSet&) = default;
};

/// Finite union of basic sets (empty list = empty set).
struct DNF {
  std::size_t nvars = 0;
  std::vector<BasicSet> disjuncts;
};

DNF to_dnf(const SetExpr& e);
SetExpr to_expr(std::size_t nvars, const BasicSet& b);
SetExpr to_expr(const DNF& d);

enum class AtomKind { ClopenA, WeakClosed, StrictOpen, Degenerate };

struct AtomClass {
  AtomKind kind;
  /// Exact replacement set for Degenerate atoms.
  std::optional<SetExpr> resolved;
};

AtomClass classify_atom(const Atom& a, const PrimeConfig& cfg);

std::string to_string(AtomKind k);
std::string to_string(const Atom& a, const std::vector<std::string>& vars);
std::string to_string(const SetExpr& e, const std::vector<std::string>& vars);

/// Every leaf polynomial of e.
std::vector<Poly> leaf_polys(const SetExpr& e);

}  // namespace ultracl
