#include "ultracl/valuation.hpp"

#include <sstream>

namespace ultracl {

PrimeConfig::PrimeConfig(std::int64_t p) : p_(p), prime_(static_cast<long>(p)) {
  if (p < 2 || mpz_probab_prime_p(prime_.get_mpz_t(), 30) == 0) {
    throw std::invalid_argument("prime expected, got " + std::to_string(p));
  }
}

std::int64_t val_int(const Integer& z, const PrimeConfig& cfg) {
  if (z == 0) throw std::invalid_argument("val_int: zero has infinite valuation");
  Integer rest;
  return static_cast<std::int64_t>(
      mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), cfg.prime().get_mpz_t()));
}

Valuation val(const Rational& q, const PrimeConfig& cfg) {
  if (q == 0) return std::nullopt;
  return val_int(q.get_num(), cfg) - val_int(q.get_den(), cfg);
}

NormValue NormValue::operator*(const NormValue& o) const {
  if (is_zero() || o.is_zero()) return zero();
  return from_exponent(exponent() + o.exponent());
}

std::strong_ordering operator<=>(const NormValue& a, const NormValue& b) {
  if (a.is_zero() || b.is_zero()) {
    return (!a.is_zero()) <=> (!b.is_zero());
  }
  // Larger valuation means smaller norm.
  return b.exponent() <=> a.exponent();
}

std::string NormValue::to_string(const PrimeConfig& cfg) const {
  if (is_zero()) return "0";
  if (exponent() == 0) return "1";
  return std::to_string(cfg.p()) + "^" + std::to_string(-exponent());
}

NormValue norm(const Rational& q, const PrimeConfig& cfg) {
  auto v = val(q, cfg);
  return v ? NormValue::from_exponent(*v) : NormValue::zero();
}

Point::Point(std::vector<Rational> coords, const PrimeConfig& cfg) : coords_(std::move(coords)) {
  for (auto& c : coords_) {
    c.canonicalize();
    auto v = val(c, cfg);
    if (v && *v < 0) {
      throw std::invalid_argument("coordinate " + ultracl::to_string(c) +
                                  " lies outside the valuation ring");
    }
  }
}

Point Point::from_rationals_unchecked(std::vector<Rational> coords) {
  return Point(std::move(coords));
}

Point Point::origin(std::size_t n) { return Point(std::vector<Rational>(n, Rational(0))); }

Point Point::from_integers(const std::vector<std::int64_t>& coords) {
  std::vector<Rational> c;
  c.reserve(coords.size());
  for (auto v : coords) c.emplace_back(static_cast<long>(v));
  return Point(std::move(c));
}

std::string Point::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ", ";
    os << ultracl::to_string(coords_[i]);
  }
  os << ')';
  return os.str();
}

NormValue point_norm(const Point& x, const PrimeConfig& cfg) {
  NormValue best = NormValue::zero();
  for (const auto& c : x.coords()) best = std::max(best, norm(c, cfg));
  return best;
}

NormValue distance(const Point& x, const Point& y, const PrimeConfig& cfg) {
  if (x.dim() != y.dim()) throw DimensionError("distance: dimension mismatch");
  NormValue best = NormValue::zero();
  for (std::size_t i = 0; i < x.dim(); ++i) best = std::max(best, norm(Rational(x[i] - y[i]), cfg));
  return best;
}

Point add(const Point& x, const Point& y) {
  if (x.dim() != y.dim()) throw DimensionError("add: dimension mismatch");
  std::vector<Rational> c(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) c[i] = x[i] + y[i];
  // Sums of ring elements stay in the ring, no revalidation needed.
  return Point::from_rationals_unchecked(std::move(c));
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer residue_mod(const Rational& q, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), m.get_mpz_t()) == 0) {
    if (m == 1) return 0;
    throw std::domain_error("residue_mod: denominator not invertible");
  }
  Integer r = (q.get_num() * inv) % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace ultracl
