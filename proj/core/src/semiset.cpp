#include "ultracl/semiset.hpp"

#include <stdexcept>

namespace ultracl {

struct SetExpr::Node {
  Kind kind;
  std::size_t nvars;
  std::variant<std::monostate, Atom, AnalyticSet> leaf;
  std::vector<SetExpr> children;
};

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DimensionError(std::string(what) + ": variable count mismatch");
}

}  // namespace

SetExpr SetExpr::atom(Atom a) {
  require_same(a.f.nvars(), a.g.nvars(), "atom");
  const std::size_t n = a.f.nvars();
  return SetExpr(std::make_shared<const Node>(Node{Kind::Atom, n, std::move(a), {}}));
}

SetExpr SetExpr::atom(Poly f, Comparison cmp, Poly g) {
  return atom(Atom{std::move(f), std::move(g), cmp});
}

SetExpr SetExpr::analytic(std::vector<Poly> generators) {
  if (generators.empty()) throw std::invalid_argument("V(): at least one generator required");
  const std::size_t n = generators.front().nvars();
  for (const auto& g : generators) require_same(n, g.nvars(), "V()");
  return SetExpr(std::make_shared<const Node>(
      Node{Kind::Analytic, n, AnalyticSet{std::move(generators)}, {}}));
}

SetExpr SetExpr::universe(std::size_t nvars) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::Universe, nvars, {}, {}}));
}

SetExpr SetExpr::empty(std::size_t nvars) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::Empty, nvars, {}, {}}));
}

SetExpr SetExpr::make_union(SetExpr a, SetExpr b) {
  require_same(a.nvars(), b.nvars(), "union");
  const std::size_t n = a.nvars();
  return SetExpr(std::make_shared<const Node>(Node{Kind::Union, n, {}, {std::move(a), std::move(b)}}));
}

SetExpr SetExpr::make_intersection(SetExpr a, SetExpr b) {
  require_same(a.nvars(), b.nvars(), "intersection");
  const std::size_t n = a.nvars();
  return SetExpr(
      std::make_shared<const Node>(Node{Kind::Intersection, n, {}, {std::move(a), std::move(b)}}));
}

SetExpr SetExpr::make_difference(SetExpr a, SetExpr b) {
  require_same(a.nvars(), b.nvars(), "difference");
  const std::size_t n = a.nvars();
  return SetExpr(
      std::make_shared<const Node>(Node{Kind::Difference, n, {}, {std::move(a), std::move(b)}}));
}

SetExpr SetExpr::make_complement(SetExpr a) {
  const std::size_t n = a.nvars();
  return SetExpr(std::make_shared<const Node>(Node{Kind::Complement, n, {}, {std::move(a)}}));
}

SetExpr::Kind SetExpr::kind() const { return node_->kind; }
std::size_t SetExpr::nvars() const { return node_->nvars; }
const Atom& SetExpr::as_atom() const { return std::get<Atom>(node_->leaf); }
const AnalyticSet& SetExpr::as_analytic() const { return std::get<AnalyticSet>(node_->leaf); }
const SetExpr& SetExpr::lhs() const { return node_->children.at(0); }
const SetExpr& SetExpr::rhs() const { return node_->children.at(1); }

bool operator==(const SetExpr& a, const SetExpr& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->nvars == b.node_->nvars &&
         a.node_->leaf == b.node_->leaf && a.node_->children == b.node_->children;
}

// ------------------------------------------------------------ combinators

SetExpr complement(const SetExpr& e) {
  using K = SetExpr::Kind;
  switch (e.kind()) {
    case K::Universe: return SetExpr::empty(e.nvars());
    case K::Empty: return SetExpr::universe(e.nvars());
    case K::Atom: return SetExpr::atom(e.as_atom().negated());
    case K::Complement: return e.operand();
    default: return SetExpr::make_complement(e);
  }
}

SetExpr union_of(const SetExpr& a, const SetExpr& b) {
  if (a.is_empty_leaf() || b.is_universe()) return b;
  if (b.is_empty_leaf() || a.is_universe()) return a;
  if (a == b) return a;
  return SetExpr::make_union(a, b);
}

SetExpr intersection(const SetExpr& a, const SetExpr& b) {
  if (a.is_universe() || b.is_empty_leaf()) return b;
  if (b.is_universe() || a.is_empty_leaf()) return a;
  if (a == b) return a;
  return SetExpr::make_intersection(a, b);
}

SetExpr difference(const SetExpr& a, const SetExpr& b) {
  if (a.is_empty_leaf() || b.is_empty_leaf()) return a;
  if (b.is_universe() || a == b) return SetExpr::empty(a.nvars());
  if (a.is_universe()) return complement(b);
  return SetExpr::make_difference(a, b);
}

SetExpr union_all(std::size_t nvars, const std::vector<SetExpr>& parts) {
  SetExpr acc = SetExpr::empty(nvars);
  for (const auto& p : parts) acc = union_of(acc, p);
  return acc;
}

SetExpr intersect_all(std::size_t nvars, const std::vector<SetExpr>& parts) {
  SetExpr acc = SetExpr::universe(nvars);
  for (const auto& p : parts) acc = intersection(acc, p);
  return acc;
}

// -------------------------------------------------------------- membership

bool member(const Atom& a, const Point& x, const PrimeConfig& cfg) {
  if (x.dim() != a.nvars()) throw DimensionError("member: dimension mismatch");
  return holds(norm(eval(a.f, x), cfg), a.cmp, norm(eval(a.g, x), cfg));
}

bool member(const SetExpr& e, const Point& x, const PrimeConfig& cfg) {
  using K = SetExpr::Kind;
  if (x.dim() != e.nvars()) throw DimensionError("member: dimension mismatch");
  switch (e.kind()) {
    case K::Atom: return member(e.as_atom(), x, cfg);
    case K::Analytic:
      for (const auto& g : e.as_analytic().generators) {
        if (eval(g, x) != 0) return false;
      }
      return true;
    case K::Universe: return true;
    case K::Empty: return false;
    case K::Union: return member(e.lhs(), x, cfg) || member(e.rhs(), x, cfg);
    case K::Intersection: return member(e.lhs(), x, cfg) && member(e.rhs(), x, cfg);
    case K::Difference: return member(e.lhs(), x, cfg) && !member(e.rhs(), x, cfg);
    case K::Complement: return !member(e.operand(), x, cfg);
  }
  return false;
}

// --------------------------------------------------------------------- DNF

namespace {

std::vector<BasicSet> product(const std::vector<BasicSet>& a, const std::vector<BasicSet>& b) {
  std::vector<BasicSet> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) {
      BasicSet s = x;
      s.atoms.insert(s.atoms.end(), y.atoms.begin(), y.atoms.end());
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<BasicSet> concat(std::vector<BasicSet> a, const std::vector<BasicSet>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// DNF of e (positive) or of its complement.
std::vector<BasicSet> dnf(const SetExpr& e, bool positive) {
  using K = SetExpr::Kind;
  const std::size_t n = e.nvars();
  switch (e.kind()) {
    case K::Atom: {
      const Atom& a = e.as_atom();
      return {BasicSet{{positive ? a : a.negated()}}};
    }
    case K::Analytic: {
      const Poly zero(n);
      const auto& gens = e.as_analytic().generators;
      if (positive) {
        BasicSet b;
        for (const auto& g : gens) b.atoms.push_back({g, zero, Comparison::Le});
        return {b};
      }
      std::vector<BasicSet> out;
      for (const auto& g : gens) out.push_back(BasicSet{{Atom{g, zero, Comparison::Gt}}});
      return out;
    }
    case K::Universe: return positive ? std::vector<BasicSet>{BasicSet{}} : std::vector<BasicSet>{};
    case K::Empty: return positive ? std::vector<BasicSet>{} : std::vector<BasicSet>{BasicSet{}};
    case K::Union:
      return positive ? concat(dnf(e.lhs(), true), dnf(e.rhs(), true))
                      : product(dnf(e.lhs(), false), dnf(e.rhs(), false));
    case K::Intersection:
      return positive ? product(dnf(e.lhs(), true), dnf(e.rhs(), true))
                      : concat(dnf(e.lhs(), false), dnf(e.rhs(), false));
    case K::Difference:
      // a \ b = a & not b; its complement is not a | b.
      return positive ? product(dnf(e.lhs(), true), dnf(e.rhs(), false))
                      : concat(dnf(e.lhs(), false), dnf(e.rhs(), true));
    case K::Complement: return dnf(e.operand(), !positive);
  }
  return {};
}

}  // namespace

DNF to_dnf(const SetExpr& e) { return DNF{e.nvars(), dnf(e, true)}; }

SetExpr to_expr(std::size_t nvars, const BasicSet& b) {
  std::vector<SetExpr> parts;
  for (const auto& a : b.atoms) parts.push_back(SetExpr::atom(a));
  return intersect_all(nvars, parts);
}

SetExpr to_expr(const DNF& d) {
  std::vector<SetExpr> parts;
  for (const auto& b : d.disjuncts) parts.push_back(to_expr(d.nvars, b));
  return union_all(d.nvars, parts);
}

// ---------------------------------------------------------- classification

AtomClass classify_atom(const Atom& a, const PrimeConfig& cfg) {
  const std::size_t n = a.nvars();
  if (a.f.is_zero() || a.g.is_zero()) {
    // Zero is the bottom norm value; normalize to |h| cmp |0|.
    const Atom z = a.g.is_zero() ? a : a.mirrored();
    auto resolved = [&]() -> SetExpr {
      if (z.f.is_zero()) {
        return (z.cmp == Comparison::Le || z.cmp == Comparison::Ge) ? SetExpr::universe(n)
                                                                     : SetExpr::empty(n);
      }
      switch (z.cmp) {
        case Comparison::Lt: return SetExpr::empty(n);
        case Comparison::Le: return SetExpr::analytic({z.f});
        case Comparison::Gt: return SetExpr::make_complement(SetExpr::analytic({z.f}));
        case Comparison::Ge: return SetExpr::universe(n);
      }
      return SetExpr::empty(n);
    }();
    return {AtomKind::Degenerate, resolved};
  }
  if (is_unit_tate(a.f, cfg) || is_unit_tate(a.g, cfg)) return {AtomKind::ClopenA, std::nullopt};
  return {is_strict(a.cmp) ? AtomKind::StrictOpen : AtomKind::WeakClosed, std::nullopt};
}

// ---------------------------------------------------------------- printing

std::string to_string(AtomKind k) {
  switch (k) {
    case AtomKind::ClopenA: return "ClopenA";
    case AtomKind::WeakClosed: return "WeakClosed";
    case AtomKind::StrictOpen: return "StrictOpen";
    case AtomKind::Degenerate: return "Degenerate";
  }
  return "?";
}

std::string to_string(const Atom& a, const std::vector<std::string>& vars) {
  return "abs(" + to_string(a.f, vars) + ") " + std::string(symbol(a.cmp)) + " abs(" +
         to_string(a.g, vars) + ")";
}

namespace {

bool needs_parens(const SetExpr& e) {
  using K = SetExpr::Kind;
  return !(e.kind() == K::Analytic || e.kind() == K::Universe || e.kind() == K::Empty);
}

std::string wrapped(const SetExpr& e, const std::vector<std::string>& vars) {
  std::string s = to_string(e, vars);
  return needs_parens(e) ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const SetExpr& e, const std::vector<std::string>& vars) {
  using K = SetExpr::Kind;
  switch (e.kind()) {
    case K::Atom: return to_string(e.as_atom(), vars);
    case K::Analytic: {
      std::string s = "V(";
      const auto& gens = e.as_analytic().generators;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) s += ", ";
        s += to_string(gens[i], vars);
      }
      return s + ")";
    }
    case K::Universe: return "universe";
    case K::Empty: return "empty";
    case K::Union: return wrapped(e.lhs(), vars) + " or " + wrapped(e.rhs(), vars);
    case K::Intersection: return wrapped(e.lhs(), vars) + " and " + wrapped(e.rhs(), vars);
    case K::Difference: return wrapped(e.lhs(), vars) + " diff " + wrapped(e.rhs(), vars);
    case K::Complement: return "not " + wrapped(e.operand(), vars);
  }
  return "?";
}

std::vector<Poly> leaf_polys(const SetExpr& e) {
  using K = SetExpr::Kind;
  switch (e.kind()) {
    case K::Atom: return {e.as_atom().f, e.as_atom().g};
    case K::Analytic: return e.as_analytic().generators;
    case K::Universe:
    case K::Empty: return {};
    case K::Complement: return leaf_polys(e.operand());
    default: {
      auto a = leaf_polys(e.lhs());
      auto b = leaf_polys(e.rhs());
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
  }
}

}  // namespace ultracl
