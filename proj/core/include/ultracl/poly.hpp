#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// Terms are kept in a map ordered by descending graded-lex order, so the
// first entry is always the leading term. Zero coefficients are never stored.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ultracl/comparison.hpp"
#include "ultracl/valuation.hpp"

namespace ultracl {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t n) : exps_(n, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}
  static Monomial variable(std::size_t n, std::size_t i, std::uint32_t power = 1);

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint64_t degree() const;
  bool is_one() const;
  /// True if this monomial divides `other`.
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& o) const;
  /// Requires divides(*this, o) reversed: `o` must divide *this.
  Monomial operator/(const Monomial& o) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Componentwise minimum (the gcd of two monomials).
Monomial min(const Monomial& a, const Monomial& b);

/// Strict weak order placing the graded-lex larger monomial first.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GradedLexGreater>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly term(const Monomial& m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  /// Leading term under graded-lex; undefined for the zero polynomial.
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  std::uint64_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  /// Adds c * m, dropping the term if the result cancels.
  void add_term(const Monomial& m, const Rational& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly pow(std::uint32_t e) const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// A quotient of polynomials; its norm is only evaluated where the denominator
/// does not vanish.
struct UnitFraction {
  Poly numerator;
  Poly denominator;
};

Rational eval(const Poly& f, const Point& x);
Rational eval(const Poly& f, const std::vector<Rational>& x);

/// Norm of num(x)/den(x); throws std::domain_error where den(x) = 0.
NormValue eval_norm(const UnitFraction& u, const Point& x, const PrimeConfig& cfg);

NormValue gauss_norm(const Poly& f, const PrimeConfig& cfg);

/// A polynomial is a unit of the Tate ring when its constant coefficient
/// strictly dominates every other coefficient in norm.
bool is_unit_tate(const Poly& f, const PrimeConfig& cfg);

/// Drops the terms that cannot influence {|f| cmp 1} on R^n. Only Le and Lt
/// are accepted; the other comparisons are complements of these.
Poly truncate(const Poly& f, Comparison cmp, const PrimeConfig& cfg);

/// Exact quotient f / g if g divides f, std::nullopt otherwise. g != 0.
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);
bool divides(const Poly& g, const Poly& f);

/// Scales so the graded-lex leading coefficient is 1 (zero stays zero).
Poly make_monic(const Poly& f);

/// Monic multivariate gcd; throws std::invalid_argument if both inputs are 0.
Poly gcd(const Poly& f, const Poly& g);

struct CommonFactor {
  Poly h;
  Poly f0;
  Poly g0;
};
/// f = h*f0, g = h*g0 with h = gcd(f, g).
CommonFactor remove_common_factor(const Poly& f, const Poly& g);

/// Divides f by gcd(f, g) until the two are coprime. Throws on f = 0.
Poly remove_factors_dividing(const Poly& f, const Poly& g);

/// Product of the distinct irreducible factors of f (up to a scalar).
Poly squarefree(const Poly& f);

Poly derivative(const Poly& f, std::size_t var);

/// f(S + c).
Poly translate(const Poly& f, const Point& c);

/// Composition f(images[0], ..., images[n-1]); all images share one ring.
Poly substitute(const Poly& f, const std::vector<Poly>& images);

/// Largest monomial dividing every term, and the cofactor. Throws on f = 0.
std::pair<Monomial, Poly> extract_monomial(const Poly& f);

/// Coefficients of f viewed as a polynomial in `var`; entry k multiplies var^k.
std::vector<Poly> coefficients_in(const Poly& f, std::size_t var);

std::string to_string(const Poly& f, const std::vector<std::string>& vars);
std::string to_string(const Monomial& m, const std::vector<std::string>& vars);

}  // namespace ultracl
