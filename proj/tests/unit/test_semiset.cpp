#include <doctest.h>

#include "support.hpp"

using namespace ultracl;
using testing::P;
using testing::S;
using testing::str;

namespace {
const PrimeConfig p3(3);

bool in(const SetExpr& e, std::initializer_list<std::int64_t> x) {
  return member(e, Point::from_integers(std::vector<std::int64_t>(x)), p3);
}
}  // namespace

TEST_CASE("membership") {
  CHECK(in(S("abs(x) < abs(y)"), {3, 1}));
  CHECK_FALSE(in(S("abs(x) < abs(y)"), {1, 1}));
  CHECK(in(S("V(x, y)"), {0, 0}));
  CHECK_FALSE(in(S("V(x, y)"), {0, 3}));
  CHECK(in(S("abs(x) <= abs(y) diff V(y)"), {9, 3}));
  CHECK_FALSE(in(S("abs(x) <= abs(y) diff V(y)"), {0, 0}));
  CHECK(in(S("not V(x) or V(y)"), {0, 0}));
  CHECK_THROWS_AS(member(S("V(x)"), Point::origin(3), p3), DimensionError);
}

TEST_CASE("to_dnf encodings") {
  DNF d = to_dnf(S("not (abs(x) <= abs(y))"));
  REQUIRE(d.disjuncts.size() == 1);
  REQUIRE(d.disjuncts[0].atoms.size() == 1);
  CHECK(d.disjuncts[0].atoms[0] == Atom{P("x"), P("y"), Comparison::Gt});

  d = to_dnf(S("V(x, y)"));
  REQUIRE(d.disjuncts.size() == 1);
  CHECK(d.disjuncts[0].atoms == std::vector<Atom>{{P("x"), P("0"), Comparison::Le}, {P("y"), P("0"), Comparison::Le}});

  d = to_dnf(S("not (V(x) or abs(x) < abs(y))"));
  REQUIRE(d.disjuncts.size() == 1);
  CHECK(d.disjuncts[0].atoms ==
        std::vector<Atom>{{P("x"), P("0"), Comparison::Gt}, {P("x"), P("y"), Comparison::Ge}});

  d = to_dnf(S("not V(x, y)"));
  CHECK(d.disjuncts.size() == 2);
  CHECK(to_dnf(S("empty")).disjuncts.empty());
  REQUIRE(to_dnf(S("universe")).disjuncts.size() == 1);
  CHECK(to_dnf(S("universe")).disjuncts[0].atoms.empty());
}

TEST_CASE("atom classification") {
  CHECK(classify_atom({P("x"), P("1"), Comparison::Le}, p3).kind == AtomKind::ClopenA);
  CHECK(classify_atom({P("x"), P("3"), Comparison::Le}, p3).kind == AtomKind::ClopenA);
  const AtomClass lt0 = classify_atom({P("x"), P("0"), Comparison::Lt}, p3);
  CHECK(lt0.kind == AtomKind::Degenerate);
  CHECK(lt0.resolved->is_empty_leaf());
  CHECK(classify_atom({P("x"), P("y"), Comparison::Lt}, p3).kind == AtomKind::StrictOpen);
  CHECK(classify_atom({P("x"), P("y"), Comparison::Ge}, p3).kind == AtomKind::WeakClosed);
  // Zero operands are checked before units.
  CHECK(classify_atom({P("1"), P("0"), Comparison::Gt}, p3).kind == AtomKind::Degenerate);
  CHECK(to_string(AtomKind::ClopenA) == "ClopenA");
}

TEST_CASE("degenerate table is pointwise correct") {
  std::mt19937 rng(41);
  const Poly f = P("x^2 - 3*y");
  for (Comparison c : {Comparison::Le, Comparison::Lt, Comparison::Ge, Comparison::Gt}) {
    for (bool swap : {false, true}) {
      const Atom a = swap ? Atom{P("0"), f, c} : Atom{f, P("0"), c};
      const AtomClass k = classify_atom(a, p3);
      REQUIRE(k.kind == AtomKind::Degenerate);
      for (int i = 0; i < 200; ++i) {
        const Point x = testing::random_local_point(rng, 2, p3);
        CHECK(member(*k.resolved, x, p3) == member(a, x, p3));
      }
      CHECK(member(*k.resolved, Point::from_integers({3, 3}), p3) == member(a, Point::from_integers({3, 3}), p3));
    }
  }
  const AtomClass zz = classify_atom({P("0"), P("0"), Comparison::Ge}, p3);
  CHECK(zz.resolved->is_universe());
  CHECK(classify_atom({P("0"), P("0"), Comparison::Gt}, p3).resolved->is_empty_leaf());
}

TEST_CASE("boolean combinators simplify trivial operands") {
  const SetExpr e = S("abs(x) < abs(y)");
  CHECK(complement(SetExpr::universe(2)).is_empty_leaf());
  CHECK(union_of(e, SetExpr::empty(2)) == e);
  CHECK(intersection(e, SetExpr::universe(2)) == e);
  CHECK(complement(e) == S("abs(x) >= abs(y)"));
  CHECK(complement(complement(S("V(x)"))) == S("V(x)"));
  CHECK(str(union_of(e, S("V(x, y)"))) == "(abs(x) < abs(y)) or V(x, y)");
  std::mt19937 rng(42);
  const SetExpr d = difference(e, e);
  for (int i = 0; i < 100; ++i) CHECK_FALSE(member(d, testing::random_local_point(rng, 2, p3), p3));
}

namespace {

SetExpr random_expr(std::mt19937& rng, int depth) {
  static const std::vector<std::string> leaves = {
      "abs(x) < abs(y)", "abs(x^2) <= abs(3*y)", "V(x - y)", "abs(x + y) > abs(9)", "V(x, y^2 - x^3)",
      "abs(y) >= abs(x*y + 1)", "abs(x) < abs(0)", "abs(x - 1) <= abs(0)", "universe", "empty"};
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 13 : 9);
  const int k = pick(rng);
  if (k < 10) return S(leaves[k]);
  if (k == 10) return SetExpr::make_union(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
  if (k == 11) return SetExpr::make_intersection(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
  if (k == 12) return SetExpr::make_difference(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
  return SetExpr::make_complement(random_expr(rng, depth - 1));
}

}  // namespace

TEST_CASE("dnf and complement preserve membership") {
  std::mt19937 rng(43);
  for (int i = 0; i < 25; ++i) {
    const SetExpr e = random_expr(rng, 3);
    const SetExpr d = to_expr(to_dnf(e));
    const SetExpr c = complement(complement(e));
    CAPTURE(str(e));
    for (int k = 0; k < 500; ++k) {
      const Point x = testing::random_local_point(rng, 2, p3);
      const bool m = member(e, x, p3);
      CHECK(member(d, x, p3) == m);
      CHECK(member(c, x, p3) == m);
      CHECK(member(complement(e), x, p3) != m);
    }
  }
}
