#pragma once

// p-adic valuations, norms and points of the valuation ring.
//
// Norms are never materialized as floating point values: a NormValue keeps
// the valuation exponent v and stands for p^(-v), or the bottom element Zero.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ultracl {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when operands live in spaces of different dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PrimeConfig {
 public:
  explicit PrimeConfig(std::int64_t p = 3);

  std::int64_t p() const { return p_; }
  const Integer& prime() const { return prime_; }

 private:
  std::int64_t p_;
  Integer prime_;
};

/// p-adic valuation; std::nullopt encodes +infinity (the valuation of 0).
using Valuation = std::optional<std::int64_t>;

Valuation val(const Rational& q, const PrimeConfig& cfg);
/// Valuation of a nonzero integer.
std::int64_t val_int(const Integer& z, const PrimeConfig& cfg);

class NormValue {
 public:
  static NormValue zero() { return NormValue(); }
  static NormValue from_exponent(std::int64_t v) { return NormValue(v); }

  bool is_zero() const { return !exponent_.has_value(); }
  /// Valuation exponent v of p^(-v); only meaningful when !is_zero().
  std::int64_t exponent() const { return *exponent_; }

  /// Product of norms (addition of valuations).
  NormValue operator*(const NormValue& o) const;

  friend bool operator==(const NormValue&, const NormValue&) = default;
  friend std::strong_ordering operator<=>(const NormValue& a, const NormValue& b);

  std::string to_string(const PrimeConfig& cfg) const;

 private:
  NormValue() = default;
  explicit NormValue(std::int64_t v) : exponent_(v) {}
  std::optional<std::int64_t> exponent_;
};

NormValue norm(const Rational& q, const PrimeConfig& cfg);

/// A point of R^n: every coordinate has valuation >= 0.
class Point {
 public:
  Point() = default;
  /// Throws std::invalid_argument if a coordinate has negative valuation.
  Point(std::vector<Rational> coords, const PrimeConfig& cfg);
  static Point origin(std::size_t n);
  static Point from_integers(const std::vector<std::int64_t>& coords);
  /// Caller guarantees every coordinate lies in the valuation ring.
  static Point from_rationals_unchecked(std::vector<Rational> coords);

  std::size_t dim() const { return coords_.size(); }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }

  std::string to_string() const;

 private:
  explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  std::vector<Rational> coords_;
};

NormValue point_norm(const Point& x, const PrimeConfig& cfg);
NormValue distance(const Point& x, const Point& y, const PrimeConfig& cfg);

/// Coordinatewise sum; both points must have the same dimension.
Point add(const Point& x, const Point& y);

std::string to_string(const Rational& q);

/// Representative in [0, m) of q mod m; q must have nonnegative valuation at
/// every prime dividing m.
Integer residue_mod(const Rational& q, const Integer& m);

}  // namespace ultracl
