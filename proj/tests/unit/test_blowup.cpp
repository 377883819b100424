#include <doctest.h>

#include "certified_gen.hpp"
#include "nc_check.hpp"
#include "support.hpp"
#include "ultracl/blowup.hpp"
#include "ultracl/oracle.hpp"

using namespace ultracl;
using testing::P;
using testing::S;
using testing::str;
using testing::audit;
using testing::nc_at;
using testing::NcAudit;
using testing::total_transform;

namespace {
const PrimeConfig p3(3);

SetExpr pull(const SetExpr& e, const BlowupSeq& seq, std::size_t node) {
  using K = SetExpr::Kind;
  switch (e.kind()) {
    case K::Atom: return SetExpr::atom(seq.pullback(e.as_atom().f, node), e.as_atom().cmp, seq.pullback(e.as_atom().g, node));
    case K::Analytic: {
      std::vector<Poly> g;
      for (const auto& p : e.as_analytic().generators) g.push_back(seq.pullback(p, node));
      return SetExpr::analytic(g);
    }
    case K::Universe:
    case K::Empty: return e;
    case K::Union: return SetExpr::make_union(pull(e.lhs(), seq, node), pull(e.rhs(), seq, node));
    case K::Intersection: return SetExpr::make_intersection(pull(e.lhs(), seq, node), pull(e.rhs(), seq, node));
    case K::Difference: return SetExpr::make_difference(pull(e.lhs(), seq, node), pull(e.rhs(), seq, node));
    case K::Complement: return SetExpr::make_complement(pull(e.operand(), seq, node));
  }
  return e;
}

SetExpr decomposed(const LeafDecomposition& d) {
  const SetExpr v = SetExpr::analytic(d.v.generators.empty() ? std::vector<Poly>{P("0")} : d.v.generators);
  return d.form == LeafDecomposition::Form::AUnionV ? union_of(d.a, v) : difference(d.a, v);
}

}  // namespace

TEST_CASE("chart maps") {
  const auto c1 = chart_map(1, 2, 0);
  CHECK(c1 == std::vector<Poly>{P("x"), P("x*y")});
  CHECK(chart_map(2, 2, 0) == std::vector<Poly>{P("x*y"), P("y")});
  const Chart ch{1, 2, 0, Point::origin(2)};
  CHECK(apply_chart(ch, Point::from_integers({3, 2})) == Point::from_integers({3, 6}));
  const std::vector<std::string> xyt{"x", "y", "t"};
  CHECK(chart_map(1, 2, 1) == std::vector<Poly>{P("x", xyt), P("x*y", xyt), P("t", xyt)});
  CHECK(chart_map(2, 3, 0) == std::vector<Poly>{P("x*y", xyt), P("y", xyt), P("y*t", xyt)});
  CHECK_THROWS_AS(chart_map(3, 2, 0), std::out_of_range);
  CHECK_THROWS_AS(chart_map(0, 2, 0), std::out_of_range);
  const Chart moved{2, 2, 0, Point::from_integers({0, 1})};
  CHECK(chart_map(moved) == std::vector<Poly>{P("x*y"), P("y + 1")});
}

TEST_CASE("pullbacks and strict transforms") {
  const Chart c1{1, 2, 0, Point::origin(2)};
  const Chart c2{2, 2, 0, Point::origin(2)};
  CHECK(pullback_poly(P("x^2 + y"), c1) == P("x^2 + x*y"));
  CHECK(pullback_poly(P("y^2 - x^3"), c1) == P("x^2*y^2 - x^3"));
  CHECK(pullback_poly(P("x"), c2) == P("x*y"));
  CHECK_THROWS_AS(pullback_poly(P("x", {"x"}), c1), DimensionError);

  auto [m, st] = strict_transform(P("y^2 - x^3"), c1);
  CHECK(m == 2);
  CHECK(st == P("y^2 - x"));
  CHECK(P("x^2") * st == pullback_poly(P("y^2 - x^3"), c1));
  CHECK(strict_transform(P("x"), c1) == std::pair<std::uint32_t, Poly>{1, P("1")});
  CHECK(strict_transform(P("y"), c1) == std::pair<std::uint32_t, Poly>{1, P("y")});
  CHECK_THROWS_AS(strict_transform(P("0"), c1), std::invalid_argument);
}

TEST_CASE("strict transform is not divisible by the exceptional coordinate") {
  std::mt19937 rng(61);
  for (int i = 0; i < 100; ++i) {
    const Poly f = testing::random_poly(rng, 2, 4, 3);
    if (f.is_zero()) continue;
    for (std::size_t j : {1u, 2u}) {
      const Chart ch{j, 2, 0, Point::origin(2)};
      auto [m, st] = strict_transform(f, ch);
      CHECK(st.degree_in(j - 1) <= st.total_degree());
      CHECK_FALSE(divides(Poly::variable(2, j - 1), st));
      CHECK(Poly::term(Monomial::variable(2, j - 1, m), Rational(1)) * st == pullback_poly(f, ch));
    }
  }
}

TEST_CASE("chart overlap consistency") {
  std::mt19937 rng(62);
  const Chart c1{1, 2, 0, Point::origin(2)};
  const Chart c2{2, 2, 0, Point::origin(2)};
  for (int i = 0; i < 300; ++i) {
    const Point y = testing::random_point(rng, 2, p3);
    if (y[0] == 0 || y[1] == 0) continue;
    const Point x = apply_chart(c1, y);
    CHECK(*chart_preimage(c1, x, p3) == y);
    if (auto z = chart_preimage(c2, x, p3)) {
      CHECK(apply_chart(c2, *z) == x);
      CHECK((*z)[0] == 1 / y[1]);
    } else {
      CHECK(val(y[1], p3) > 0);
    }
  }
  CHECK_FALSE(chart_preimage(c1, Point::origin(2), p3).has_value());
}

TEST_CASE("rational roots") {
  const RootSearch a = rational_roots(P("y*(y - 1)*(y + 2)*(2*y - 1)^2"), 1);
  CHECK_FALSE(a.irrational);
  CHECK(a.roots.size() == 3);
  for (const Rational& t : {Rational(1), Rational(-2), Rational(1, 2)}) {
    CHECK(std::find(a.roots.begin(), a.roots.end(), t) != a.roots.end());
  }
  CHECK(rational_roots(P("y^2 - 2"), 1).irrational);
  CHECK(rational_roots(P("x^2 + 1"), 0).irrational);
  CHECK(rational_roots(P("3"), 0).roots.empty());
  CHECK_THROWS_AS(rational_roots(P("x*y"), 0), std::invalid_argument);
}

TEST_CASE("monomialization") {
  SUBCASE("already a monomial") {
    const Monomialization mz = monomialize2(P("x*y"), p3);
    CHECK(mz.seq.blowup_count() == 0);
    REQUIRE(mz.records.size() == 1);
    CHECK(mz.records[0].monomial == Monomial({1, 1}));
    CHECK(mz.records[0].unit.numerator == P("1"));
  }
  SUBCASE("cusp") {
    const Poly f = P("y^2 - x^3");
    const Monomialization mz = monomialize2(f, p3);
    CHECK(mz.seq.blowup_count() == 3);
    const NcAudit a = audit(f, mz);
    CHECK(a.checked >= 6);
    CHECK(a.failures == 0);
  }
  SUBCASE("node") {
    const Poly f = P("x^2 - y^2");
    const Monomialization mz = monomialize2(f, p3);
    CHECK(mz.seq.blowup_count() == 1);
    const std::size_t c1 = mz.seq.node(0).blowups[0].children[0];
    const std::size_t c2 = mz.seq.node(0).blowups[0].children[1];
    for (auto [node, pt] : std::vector<std::pair<std::size_t, Point>>{
             {c1, Point::origin(2)},
             {c1, Point::from_integers({0, 1})},
             {c1, Point::from_integers({0, -1})},
             {c2, Point::origin(2)},
             {c2, Point::from_integers({1, 0})},
             {c2, Point::from_integers({-1, 0})}}) {
      CHECK(nc_at(total_transform(f, mz.seq, node), pt));
    }
    CHECK(audit(f, mz).failures == 0);
  }
  SUBCASE("non-reduced input keeps multiplicities in the normal forms") {
    const Poly f = P("(y^2 - x^3)^2*x");
    const Monomialization mz = monomialize2(f, p3);
    CHECK(mz.seq.blowup_count() == 3);
    CHECK(audit(f, mz).failures == 0);
  }
  SUBCASE("several branches") {
    const Poly f = P("x*y*(x^2 - y)*(y - x)");
    const Monomialization mz = monomialize2(f, p3);
    CHECK(audit(f, mz).failures == 0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(monomialize2(P("y^2 - x^3"), p3, 2), MaxIterationsExceeded);
    CHECK_THROWS_AS(monomialize2(P("x^2 - 2*y^2"), p3), IrrationalSingularity);
    CHECK_THROWS_AS(monomialize2(P("0"), p3), std::invalid_argument);
    CHECK_THROWS_AS(monomialize2(P("x", {"x"}), p3), DimensionError);
  }
}

TEST_CASE("monomialization of random products of lines and parabolas") {
  std::mt19937 rng(63);
  const char* pieces[] = {"x", "y", "x - y", "x + y", "y - x^2", "x - y^2", "y - 2*x", "x + 3*y", "y^2 - x^3"};
  std::uniform_int_distribution<int> pick(0, 8);
  for (int i = 0; i < 25; ++i) {
    Poly f = P("1");
    for (int k = 0; k < 3; ++k) f = f * P(pieces[pick(rng)]);
    const Monomialization mz = monomialize2(f, p3);
    CAPTURE(str(f));
    CHECK(audit(f, mz).failures == 0);
  }
}

TEST_CASE("relative division") {
  const RelativeDivision same = relative_division_at(P("x"), P("x"), Comparison::Le);
  CHECK(same.direction == Direction::Both);
  CHECK(same.nu.monomial.is_one());

  const RelativeDivision up = relative_division_at(P("1"), P("x"), Comparison::Le);
  CHECK(up.direction == Direction::FDividesG);
  CHECK(up.nu.monomial == Monomial({1, 0}));
  CHECK(up.nu.cmp == Comparison::Ge);

  CHECK_THROWS_AS(relative_division_at(P("x^2"), P("y"), Comparison::Le), IncomparableExponents);
  CHECK_THROWS_AS(relative_division_at(P("x - y"), P("y"), Comparison::Le), NotNormalCrossings);

  const Poly f = P("x^2");
  const Poly g = P("y");
  const Monomialization mz = monomialize2(f * g * (f - g), p3);
  const auto divs = relative_division(f, g, mz);
  REQUIRE(divs.size() == mz.records.size());
  for (const auto& d : divs) {
    const NormalForm& rec = mz.records[d.record];
    const Poly fl = translate(mz.seq.pullback(f, rec.node), rec.point);
    const Poly gl = translate(mz.seq.pullback(g, rec.node), rec.point);
    const Poly nu = Poly::term(d.division.nu.monomial, Rational(1)) * d.division.nu.unit.numerator;
    const Poly& den = d.division.nu.unit.denominator;
    if (d.division.direction == Direction::FDividesG) {
      CHECK(gl * den == fl * nu);
    } else {
      CHECK(fl * den == gl * nu);
    }
  }
}

TEST_CASE("pullback decomposition matches the pulled-back atom") {
  BlowupSeq seq(2);
  seq.blowup(0, Point::origin(2));
  const std::size_t chart1 = seq.node(0).blowups[0].children[0];
  Monomialization mz;
  mz.seq = seq;
  mz.records.push_back({chart1, Point::origin(2), Monomial(2), {P("1"), P("1")}});
  mz.records.push_back({chart1, Point::from_integers({0, 1}), Monomial(2), {P("1"), P("1")}});

  std::mt19937 rng(64);
  for (const char* text : {"abs(x) <= abs(y)", "abs(x) < abs(y)", "abs(x - y) < abs(y)", "abs(x^2) >= abs(x*y)"}) {
    const Atom a = S(text).as_atom();
    const auto ds = pullback_decompose(a, mz);
    REQUIRE(ds.size() == 2);
    CHECK(ds[0].form == (is_strict(a.cmp) ? LeafDecomposition::Form::AMinusV : LeafDecomposition::Form::AUnionV));
    for (const auto& d : ds) {
      const NormalForm& rec = mz.records[d.record];
      const Atom local{translate(seq.pullback(a.f, rec.node), rec.point),
                       translate(seq.pullback(a.g, rec.node), rec.point), a.cmp};
      const SetExpr lhs = decomposed(d);
      for (int k = 0; k < 200; ++k) {
        const Point y = testing::random_local_point(rng, 2, p3);
        CHECK(member(lhs, y, p3) == member(local, y, p3));
      }
    }
  }
  const auto eq = pullback_decompose({P("x"), P("x"), Comparison::Lt}, mz);
  CHECK(eq[0].a.kind() == SetExpr::Kind::Atom);
  for (int k = 0; k < 50; ++k) CHECK_FALSE(member(decomposed(eq[0]), testing::random_local_point(rng, 2, p3), p3));
}

TEST_CASE("upstairs closures") {
  CHECK(upstairs_closure({}).is_universe());

  // |x| < |y| in chart 2: |xy| < |y| gives {|x| < 1} minus V(y).
  const LeafDecomposition d = decompose_local({P("x*y"), P("y"), Comparison::Lt});
  CHECK(d.form == LeafDecomposition::Form::AMinusV);
  const SetExpr c = upstairs_closure({d});
  CHECK(member(c, Point::origin(2), p3));
  CHECK(member(c, Point::from_integers({3, 0}), p3));

  // Weak atoms pass through: A u V.
  const LeafDecomposition w = decompose_local({P("x"), P("x*y"), Comparison::Le});
  const SetExpr cw = upstairs_closure({w});
  std::mt19937 rng(65);
  for (int k = 0; k < 200; ++k) {
    const Point y = testing::random_local_point(rng, 2, p3);
    CHECK(member(cw, y, p3) == member(Atom{P("x"), P("x*y"), Comparison::Le}, y, p3));
  }

  // An empty leaf stays empty.
  const LeafDecomposition e = decompose_local({P("x"), P("x*y"), Comparison::Lt});
  CHECK_FALSE(member(upstairs_closure({e}), Point::origin(2), p3));

  const std::vector<LeafDecomposition> both = {decompose_local({P("x^2*y"), P("x*y"), Comparison::Lt}),
                                               decompose_local({P("x*y"), P("y"), Comparison::Lt})};
  const bool local = member(upstairs_closure(both), Point::origin(2), p3);
  CHECK(local);
  CHECK(local == ball_meets(S("abs(x^2*y) < abs(x*y) and abs(x*y) < abs(y)"), Point::origin(2), 3, 3, p3));
  const std::vector<LeafDecomposition> none = {decompose_local({P("x^2*y"), P("y"), Comparison::Lt}),
                                               decompose_local({P("y"), P("x*y"), Comparison::Lt})};
  CHECK_FALSE(member(upstairs_closure(none), Point::origin(2), p3));
  CHECK_FALSE(ball_meets(S("abs(x^2*y) < abs(y) and abs(y) < abs(x*y)"), Point::origin(2), 3, 3, p3));
}

TEST_CASE("image membership") {
  BlowupSeq seq(2);
  seq.blowup(0, Point::origin(2));
  const std::size_t c1 = seq.node(0).blowups[0].children[0];
  const std::size_t c2 = seq.node(0).blowups[0].children[1];

  std::map<std::size_t, SetExpr> all{{c1, S("universe")}, {c2, S("universe")}};
  CHECK(image_member(seq, all, Point::from_integers({1, 3}), p3, 3) == ClosureMembership{true, false});
  std::map<std::size_t, SetExpr> none;
  CHECK(image_member(seq, none, Point::origin(2), p3, 3) == ClosureMembership{false, true});
  CHECK(image_member(seq, all, Point::origin(2), p3, 3) == ClosureMembership{true, true});

  // Closure of the pulled-back wedge, evaluated pointwise upstairs.
  const SetExpr wedge = S("abs(x^2) < abs(y) and abs(y) < abs(x)");
  const DNF d = to_dnf(wedge);
  const UpstairsOracle up = [&](std::size_t node, const Point& q) {
    std::vector<Atom> pulled;
    for (const auto& a : d.disjuncts[0].atoms) pulled.push_back({seq.pullback(a.f, node), seq.pullback(a.g, node), a.cmp});
    return basic_closure_member(pulled, q, p3, {}).value;
  };
  const ClosureMembership r = image_member(seq, up, Point::origin(2), p3, 3);
  CHECK(r.value);
  CHECK(r.approximate);
  CHECK(ball_meets(wedge, Point::origin(2), 4, 3, p3));
}

TEST_CASE("images of closed sets are closed") {
  BlowupSeq seq(2);
  seq.blowup(0, Point::origin(2));
  const std::size_t c1 = seq.node(0).blowups[0].children[0];
  for (const char* text : {"abs(y) <= abs(x)", "V(y)"}) {
    const ImageClosedReport r = check_image_closed(seq, {{c1, S(text)}}, p3, 3, 2);
    CAPTURE(text);
    CHECK(r.closed);
    CHECK(r.image_classes > 0);
    CHECK(r.violations.empty());
  }
  const ImageClosedReport e = check_image_closed(seq, {{c1, S("empty")}}, p3, 3, 2);
  CHECK(e.closed);
  CHECK(e.image_classes == 0);
  CHECK_THROWS_AS(check_image_closed(seq, {}, p3, 1, 2), std::invalid_argument);
}

TEST_CASE("images of upstairs closures stay in the closure") {
  BlowupSeq seq(2);
  seq.blowup(0, Point::origin(2));
  std::mt19937 rng(66);
  GridSpec g;
  g.depth = 3;
  g.resolution = 1;
  int tested = 0;
  for (int i = 0; i < 30; ++i) {
    const SetExpr sigma = testing::random_certified(rng);
    const ClosureResult base = closure(sigma, p3);
    const ClassSet oracle = approx_closure(sigma, g);
    for (std::size_t child : seq.node(0).blowups[0].children) {
      const ClosureResult up = closure(pull(sigma, seq, child), p3);
      if (!up.certified) continue;
      ++tested;
      for (int k = 0; k < 80; ++k) {
        const Point y = testing::random_local_point(rng, 2, p3);
        if (!member(up.result, y, p3)) continue;
        const Point x = seq.to_root(child, y);
        CHECK(member(base.result, x, p3));
        const Class cls{residue_mod(x[0], Integer(3)).get_si(), residue_mod(x[1], Integer(3)).get_si()};
        CHECK(oracle.contains(cls));
      }
    }
  }
  CHECK(tested > 20);
}
