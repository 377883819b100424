#include <doctest.h>

#include "support.hpp"

using namespace ultracl;
using testing::random_rational;

namespace {
const PrimeConfig p3(3);

NormValue nv(std::int64_t v) { return NormValue::from_exponent(v); }
}  // namespace

TEST_CASE("prime config") {
  CHECK(p3.p() == 3);
  CHECK_NOTHROW(PrimeConfig(2));
  CHECK_NOTHROW(PrimeConfig(101));
  CHECK_THROWS_AS(PrimeConfig(4), std::invalid_argument);
  CHECK_THROWS_AS(PrimeConfig(1), std::invalid_argument);
  CHECK_THROWS_AS(PrimeConfig(-3), std::invalid_argument);
}

TEST_CASE("valuation") {
  CHECK(val(Rational(12), p3) == 1);
  CHECK_FALSE(val(Rational(0), p3).has_value());
  CHECK(val(Rational(9, 2), p3) == 2);
  CHECK(val(Rational(2, 27), p3) == -3);
  CHECK(val(Rational(-81), p3) == 4);
  CHECK(val_int(Integer(45), p3) == 2);
}

TEST_CASE("norm") {
  CHECK(norm(Rational(3), p3) == nv(1));
  CHECK(norm(Rational(1), p3) == nv(0));
  CHECK(norm(Rational(0), p3).is_zero());
  CHECK(norm(Rational(1, 3), p3) == nv(-1));
  CHECK(norm(Rational(1, 3), p3).to_string(p3) == "3^1");
  CHECK(norm(Rational(9), p3).to_string(p3) == "3^-2");
  CHECK(NormValue::zero().to_string(p3) == "0");
}

TEST_CASE("norm order") {
  CHECK(NormValue::zero() < nv(50));
  CHECK(nv(2) < nv(1));
  CHECK(nv(-1) > nv(0));
  CHECK(nv(2) * nv(3) == nv(5));
  CHECK((NormValue::zero() * nv(3)).is_zero());
}

TEST_CASE("point norm and distance") {
  CHECK(point_norm(Point::from_integers({3, 1}), p3) == nv(0));
  CHECK(point_norm(Point::origin(2), p3).is_zero());
  CHECK(point_norm(Point::from_integers({9, 3}), p3) == nv(1));

  const Point a = Point::from_integers({1, 0});
  CHECK(distance(a, a, p3).is_zero());
  CHECK(distance(a, Point::from_integers({1, 3}), p3) == nv(1));
  CHECK(distance(Point::origin(2), Point::from_integers({1, 1}), p3) == nv(0));
  CHECK_THROWS_AS(distance(Point::origin(2), Point::origin(3), p3), DimensionError);
}

TEST_CASE("points live in the valuation ring") {
  CHECK_THROWS_AS(Point({Rational(1, 3), Rational(0)}, p3), std::invalid_argument);
  CHECK_NOTHROW(Point({Rational(1, 2), Rational(6)}, p3));
  CHECK(Point({Rational(1, 2)}, p3).to_string() == "(1/2)");
}

TEST_CASE("residues") {
  CHECK(residue_mod(Rational(1, 2), Integer(9)) == 5);
  CHECK(residue_mod(Rational(-1), Integer(27)) == 26);
  CHECK(residue_mod(Rational(7), Integer(1)) == 0);
  CHECK_THROWS_AS(residue_mod(Rational(1, 3), Integer(9)), std::domain_error);
}

TEST_CASE("ultrametric laws on random rationals") {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Rational a = random_rational(rng, 500);
    const Rational b = random_rational(rng, 500);
    const NormValue na = norm(a, p3);
    const NormValue nb = norm(b, p3);
    const NormValue sum = norm(Rational(a + b), p3);
    CHECK(sum <= std::max(na, nb));
    if (na != nb) CHECK(sum == std::max(na, nb));
    CHECK(norm(Rational(a * b), p3) == na * nb);
  }
}

TEST_CASE("distance is an ultrametric") {
  std::mt19937 rng(12);
  for (int i = 0; i < 300; ++i) {
    const Point x = testing::random_point(rng, 2, p3);
    const Point y = testing::random_point(rng, 2, p3);
    const Point z = testing::random_point(rng, 2, p3);
    CHECK(distance(x, z, p3) <= std::max(distance(x, y, p3), distance(y, z, p3)));
    CHECK(distance(x, y, p3) == distance(y, x, p3));
  }
}
