#include "ultracl/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ultracl {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t n, std::size_t i, std::uint32_t power) {
  Monomial m(n);
  m.exps_.at(i) = power;
  return m;
}

std::uint64_t Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= o.exps_[i];
  return r;
}

Monomial min(const Monomial& a, const Monomial& b) {
  Monomial r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.exponents() > b.exponents();
}

// -------------------------------------------------------------------- Poly

namespace {

void require_same_ring(const Poly& a, const Poly& b, const char* what) {
  if (a.nvars() != b.nvars()) throw DimensionError(std::string(what) + ": variable count mismatch");
}

}  // namespace

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  return term(Monomial::variable(nvars, i), Rational(1));
}

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p(m.size());
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const { return coefficient(Monomial(nvars_)); }

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint64_t Poly::total_degree() const { return is_zero() ? 0 : leading_monomial().degree(); }

std::uint32_t Poly::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != nvars_) throw DimensionError("add_term: monomial length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_ring(*this, o, "operator+");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_ring(*this, o, "operator-");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_ring(a, b, "operator*");
  Poly r(a.nvars());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Poly Poly::pow(std::uint32_t e) const {
  Poly result = constant(nvars_, Rational(1));
  Poly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

// -------------------------------------------------------------- evaluation

Rational eval(const Poly& f, const std::vector<Rational>& x) {
  if (x.size() != f.nvars()) throw DimensionError("eval: dimension mismatch");
  Rational sum(0);
  for (const auto& [m, c] : f.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::uint32_t k = 0; k < m[i]; ++k) t *= x[i];
    }
    sum += t;
  }
  return sum;
}

Rational eval(const Poly& f, const Point& x) { return eval(f, x.coords()); }

NormValue eval_norm(const UnitFraction& u, const Point& x, const PrimeConfig& cfg) {
  Rational den = eval(u.denominator, x);
  if (den == 0) throw std::domain_error("eval_norm: denominator vanishes at " + x.to_string());
  Rational num = eval(u.numerator, x);
  return norm(Rational(num / den), cfg);
}

NormValue gauss_norm(const Poly& f, const PrimeConfig& cfg) {
  NormValue best = NormValue::zero();
  for (const auto& [m, c] : f.terms()) best = std::max(best, norm(c, cfg));
  return best;
}

bool is_unit_tate(const Poly& f, const PrimeConfig& cfg) {
  Rational a0 = f.constant_term();
  if (a0 == 0) return false;
  NormValue n0 = norm(a0, cfg);
  for (const auto& [m, c] : f.terms()) {
    if (!m.is_one() && !(norm(c, cfg) < n0)) return false;
  }
  return true;
}

Poly truncate(const Poly& f, Comparison cmp, const PrimeConfig& cfg) {
  if (cmp != Comparison::Le && cmp != Comparison::Lt) {
    throw std::invalid_argument("truncate: only <= and < are supported");
  }
  // Keep |a| > 1 for <=, and |a| >= 1 for <.
  const Comparison keep = cmp == Comparison::Le ? Comparison::Gt : Comparison::Ge;
  const NormValue one = NormValue::from_exponent(0);
  Poly out(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if (holds(norm(c, cfg), keep, one)) out.add_term(m, c);
  }
  return out;
}

// ---------------------------------------------------------------- division

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
  require_same_ring(f, g, "divide_exact");
  if (g.is_zero()) throw std::invalid_argument("divide_exact: division by zero");
  Poly q(f.nvars());
  Poly r = f;
  const Monomial& lg = g.leading_monomial();
  const Rational& cg = g.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial lr = r.leading_monomial();
    if (!lg.divides(lr)) return std::nullopt;
    Poly t = Poly::term(lr / lg, Rational(r.leading_coefficient() / cg));
    q += t;
    r -= t * g;
  }
  return q;
}

bool divides(const Poly& g, const Poly& f) { return divide_exact(f, g).has_value(); }

Poly make_monic(const Poly& f) {
  if (f.is_zero()) return f;
  return f * Rational(1 / f.leading_coefficient());
}

std::vector<Poly> coefficients_in(const Poly& f, std::size_t var) {
  std::vector<Poly> out(f.degree_in(var) + 1, Poly(f.nvars()));
  for (const auto& [m, c] : f.terms()) {
    Monomial rest = m;
    rest[var] = 0;
    out[m[var]].add_term(rest, c);
  }
  return out;
}

namespace {

Poly exact_quotient(const Poly& f, const Poly& g) {
  auto q = divide_exact(f, g);
  if (!q) throw std::logic_error("exact_quotient: divisor does not divide");
  return *std::move(q);
}

Poly gcd_rec(const Poly& f, const Poly& g);

// gcd of the coefficients of f with respect to var.
Poly content(const Poly& f, std::size_t var) {
  Poly c(f.nvars());
  for (const auto& coef : coefficients_in(f, var)) {
    if (coef.is_zero()) continue;
    c = c.is_zero() ? make_monic(coef) : gcd_rec(c, coef);
    if (c.is_constant()) break;
  }
  return make_monic(c);
}

// Pseudo-remainder of a by b in var, deg_var(b) > 0.
Poly prem(Poly a, const Poly& b, std::size_t var) {
  const std::uint32_t db = b.degree_in(var);
  const Poly lcb = coefficients_in(b, var)[db];
  while (!a.is_zero() && a.degree_in(var) >= db) {
    const std::uint32_t da = a.degree_in(var);
    const Poly lca = coefficients_in(a, var)[da];
    a = lcb * a - lca * Poly::term(Monomial::variable(a.nvars(), var, da - db), Rational(1)) * b;
    a = make_monic(a);
  }
  return a;
}

std::optional<std::size_t> main_variable(const Poly& f, const Poly& g) {
  for (std::size_t v = f.nvars(); v-- > 0;) {
    if (f.involves(v) || g.involves(v)) return v;
  }
  return std::nullopt;
}

// gcd up to a rational scalar.
Poly gcd_rec(const Poly& f, const Poly& g) {
  if (f.is_zero()) return make_monic(g);
  if (g.is_zero()) return make_monic(f);
  const std::size_t n = f.nvars();
  if (f.is_constant() || g.is_constant()) return Poly::constant(n, Rational(1));
  if (divides(f, g)) return make_monic(f);
  if (divides(g, f)) return make_monic(g);

  const std::size_t var = *main_variable(f, g);
  if (!f.involves(var)) return gcd_rec(f, content(g, var));
  if (!g.involves(var)) return gcd_rec(content(f, var), g);

  const Poly cf = content(f, var);
  const Poly cg = content(g, var);
  const Poly c = gcd_rec(cf, cg);
  Poly a = exact_quotient(f, cf);
  Poly b = exact_quotient(g, cg);
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);

  // Primitive polynomial remainder sequence.
  while (true) {
    Poly r = prem(a, b, var);
    if (r.is_zero()) break;
    if (!r.involves(var)) return c;
    a = std::move(b);
    b = exact_quotient(r, content(r, var));
  }
  return make_monic(c * b);
}

}  // namespace

Poly gcd(const Poly& f, const Poly& g) {
  require_same_ring(f, g, "gcd");
  if (f.is_zero() && g.is_zero()) throw std::invalid_argument("gcd: both inputs are zero");
  return make_monic(gcd_rec(f, g));
}

CommonFactor remove_common_factor(const Poly& f, const Poly& g) {
  Poly h = gcd(f, g);
  return {h, exact_quotient(f, h), exact_quotient(g, h)};
}

Poly remove_factors_dividing(const Poly& f, const Poly& g) {
  if (f.is_zero()) throw std::invalid_argument("remove_factors_dividing: f = 0");
  Poly out = f;
  while (true) {
    Poly d = gcd(out, g);
    if (d.is_constant()) return out;
    out = exact_quotient(out, d);
  }
}

Poly derivative(const Poly& f, std::size_t var) {
  Poly out(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    out.add_term(d, c * static_cast<unsigned long>(m[var]));
  }
  return out;
}

Poly squarefree(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree: f = 0");
  Poly d = f;
  for (std::size_t v = 0; v < f.nvars(); ++v) {
    if (f.involves(v)) d = gcd(d, derivative(f, v));
  }
  return make_monic(exact_quotient(f, d));
}

Poly substitute(const Poly& f, const std::vector<Poly>& images) {
  if (images.size() != f.nvars()) throw DimensionError("substitute: image count mismatch");
  if (images.empty()) return f;
  const std::size_t n = images.front().nvars();
  // powers[i][k] = images[i]^k, filled lazily.
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t i, std::uint32_t k) -> const Poly& {
    auto& row = powers[i];
    if (row.empty()) row.push_back(Poly::constant(n, Rational(1)));
    while (row.size() <= k) row.push_back(row.back() * images[i]);
    return row[k];
  };
  Poly out(n);
  for (const auto& [m, c] : f.terms()) {
    Poly t = Poly::constant(n, c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i]) t = t * power(i, m[i]);
    }
    out += t;
  }
  return out;
}

Poly translate(const Poly& f, const Point& c) {
  if (c.dim() != f.nvars()) throw DimensionError("translate: dimension mismatch");
  std::vector<Poly> images;
  images.reserve(c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i) {
    images.push_back(Poly::variable(f.nvars(), i) + Poly::constant(f.nvars(), c[i]));
  }
  return substitute(f, images);
}

std::pair<Monomial, Poly> extract_monomial(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("extract_monomial: f = 0");
  Monomial m = f.terms().begin()->first;
  for (const auto& [t, c] : f.terms()) m = min(m, t);
  Poly rest(f.nvars());
  for (const auto& [t, c] : f.terms()) rest.add_term(t / m, c);
  return {m, rest};
}

// ---------------------------------------------------------------- printing

std::string to_string(const Monomial& m, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += i < vars.size() ? vars[i] : "x" + std::to_string(i + 1);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Poly& f, const std::vector<std::string>& vars) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool integral = mag.get_den() == 1;
    const std::string num = integral ? mag.get_str() : "(" + mag.get_str() + ")";
    if (m.is_one()) {
      os << num;
    } else if (mag == 1) {
      os << to_string(m, vars);
    } else {
      os << num << '*' << to_string(m, vars);
    }
  }
  return os.str();
}

}  // namespace ultracl
