#pragma once

#include <random>
#include <string>
#include <vector>

#include "ultracl/semiset.hpp"
#include "ultracl/syntax.hpp"

namespace testing {

using namespace ultracl;

inline const std::vector<std::string>& xy() {
  static const std::vector<std::string> v{"x", "y"};
  return v;
}

inline Poly P(const std::string& s, const std::vector<std::string>& vars = xy()) { return parse_poly(s, vars); }
inline SetExpr S(const std::string& s, const std::vector<std::string>& vars = xy()) { return parse_set(s, vars); }
inline std::string str(const Poly& p, const std::vector<std::string>& vars = xy()) { return to_string(p, vars); }
inline std::string str(const SetExpr& e, const std::vector<std::string>& vars = xy()) { return to_string(e, vars); }

inline Rational random_rational(std::mt19937& rng, int range = 30) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, 12);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// A point of R^n: integers plus fractions with denominators prime to p.
inline Point random_point(std::mt19937& rng, std::size_t n, const PrimeConfig& cfg) {
  std::uniform_int_distribution<int> num(-200, 200);
  std::uniform_int_distribution<int> den(1, 20);
  std::vector<Rational> c;
  while (c.size() < n) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    const Valuation v = val(q, cfg);
    if (!v || *v >= 0) c.push_back(q);
  }
  return Point(c, cfg);
}

/// Points whose coordinates are divisible by high powers of p are rare
/// under uniform sampling, so half the samples are p-adically small.
inline Point random_local_point(std::mt19937& rng, std::size_t n, const PrimeConfig& cfg) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> power(0, 5);
  std::uniform_int_distribution<int> unit(1, 8);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(rng)) {
      Integer z;
      mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(cfg.p()), static_cast<unsigned long>(power(rng)));
      c.push_back(Rational(z * unit(rng)));
    } else {
      c.push_back(random_point(rng, 1, cfg)[0]);
    }
  }
  return Point(c, cfg);
}

inline Poly random_poly(std::mt19937& rng, std::size_t n, int terms, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  Poly f(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(n);
    for (auto& x : e) x = static_cast<std::uint32_t>(deg(rng));
    f.add_term(Monomial(e), random_rational(rng, 9));
  }
  return f;
}

}  // namespace testing
