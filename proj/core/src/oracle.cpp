#include "ultracl/oracle.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <thread>

namespace ultracl {

namespace {

std::int64_t checked_pow(std::int64_t p, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
  if (!r.fits_slong_p()) throw BudgetExceeded("grid modulus overflows");
  return r.get_si();
}

}  // namespace

std::int64_t GridSpec::modulus() const { return checked_pow(cfg.p(), depth); }
std::int64_t GridSpec::class_modulus() const { return checked_pow(cfg.p(), resolution); }

std::uint64_t GridSpec::point_count() const {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(cfg.p()), depth * dims);
  if (r > Integer(static_cast<unsigned long>(budget))) return budget + 1;
  return r.get_ui();
}

void GridSpec::validate() const {
  if (resolution > depth) throw std::invalid_argument("grid: resolution exceeds depth");
  if (dims == 0) throw std::invalid_argument("grid: no dimensions");
  if (point_count() > budget) {
    throw BudgetExceeded("grid: p^(M n) points exceed the budget of " + std::to_string(budget));
  }
}

void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t, std::uint64_t)>& body) {
  if (count == 0) return;
  const std::uint64_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t workers = std::min<std::uint64_t>(hw, count / 256 + 1);
  if (workers <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t chunk = (count + workers - 1) / workers;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t b = w * chunk;
    const std::uint64_t e = std::min(count, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, b, e, w] {
      try {
        body(b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

GridPoint grid_point(const GridSpec& spec, std::uint64_t index) {
  const auto m = static_cast<std::uint64_t>(spec.modulus());
  GridPoint x(spec.dims);
  for (std::size_t i = 0; i < spec.dims; ++i) {
    x[i] = static_cast<std::int64_t>(index % m);
    index /= m;
  }
  return x;
}

std::vector<GridPoint> enumerate_points(const GridSpec& spec) {
  spec.validate();
  std::vector<GridPoint> out;
  const std::uint64_t n = spec.point_count();
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(grid_point(spec, i));
  return out;
}

Class class_of(const GridPoint& x, std::int64_t class_modulus) {
  Class c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = ((x[i] % class_modulus) + class_modulus) % class_modulus;
  return c;
}

std::vector<char> membership(const SetExpr& e, const GridSpec& spec) {
  spec.validate();
  if (e.nvars() != spec.dims) throw DimensionError("oracle: expression and grid dimensions differ");
  const std::uint64_t n = spec.point_count();
  std::vector<char> out(n, 0);
  parallel_for(n, [&](std::uint64_t b, std::uint64_t end) {
    for (std::uint64_t i = b; i < end; ++i) {
      out[i] = member(e, Point::from_integers(grid_point(spec, i)), spec.cfg) ? 1 : 0;
    }
  });
  return out;
}

namespace {

ClassSet classes_where(const std::vector<char>& mask, char want, const GridSpec& spec, std::int64_t modulus) {
  ClassSet out;
  for (std::uint64_t i = 0; i < mask.size(); ++i) {
    if (mask[i] == want) out.insert(class_of(grid_point(spec, i), modulus));
  }
  return out;
}

}  // namespace

ClassSet approx_closure(const SetExpr& e, const GridSpec& spec) {
  return classes_where(membership(e, spec), 1, spec, spec.class_modulus());
}

ClassSet approx_boundary(const SetExpr& e, const GridSpec& spec) {
  const std::vector<char> mask = membership(e, spec);
  const ClassSet in = classes_where(mask, 1, spec, spec.class_modulus());
  const ClassSet out = classes_where(mask, 0, spec, spec.class_modulus());
  ClassSet both;
  std::set_intersection(in.begin(), in.end(), out.begin(), out.end(), std::inserter(both, both.end()));
  return both;
}

VerifyReport verify_closure(const SetExpr& e, const SetExpr& claimed, const GridSpec& spec) {
  const std::vector<char> me = membership(e, spec);
  const std::vector<char> mc = membership(claimed, spec);
  const std::int64_t cm = spec.class_modulus();
  const ClassSet cl = classes_where(me, 1, spec, cm);
  const ClassSet claimed_classes = classes_where(mc, 1, spec, cm);

  VerifyReport r;
  r.points = me.size();
  r.closure_classes = cl.size();
  r.claimed_classes = claimed_classes.size();
  std::set<Class> over;
  for (std::uint64_t i = 0; i < me.size(); ++i) {
    if (me[i] && !mc[i]) {
      const GridPoint x = grid_point(spec, i);
      r.violations.push_back({1, class_of(x, cm), x});
    }
    if (mc[i]) {
      const GridPoint x = grid_point(spec, i);
      Class c = class_of(x, cm);
      if (!cl.contains(c) && over.insert(c).second) r.violations.push_back({2, c, x});
    }
  }
  for (const auto& c : cl) {
    if (!claimed_classes.contains(c)) r.violations.push_back({3, c, std::nullopt});
  }
  return r;
}

std::optional<NormValue> min_distance(const SetExpr& a, const SetExpr& b, const GridSpec& spec) {
  const std::vector<char> ma = membership(a, spec);
  const std::vector<char> mb = membership(b, spec);
  if (std::find(ma.begin(), ma.end(), 1) == ma.end() || std::find(mb.begin(), mb.end(), 1) == mb.end()) {
    return std::nullopt;
  }
  // The closest pair agrees modulo the largest possible power of p.
  for (unsigned k = spec.depth + 1; k-- > 0;) {
    const std::int64_t m = checked_pow(spec.cfg.p(), k);
    const ClassSet ca = classes_where(ma, 1, spec, m);
    const ClassSet cb = classes_where(mb, 1, spec, m);
    const bool meet = std::any_of(ca.begin(), ca.end(), [&](const Class& c) { return cb.contains(c); });
    if (meet) return k == spec.depth ? NormValue::zero() : NormValue::from_exponent(k);
  }
  return NormValue::from_exponent(0);
}

bool ball_meets(const SetExpr& e, const Point& center, unsigned radius_exponent, unsigned inner_depth,
                const PrimeConfig& cfg) {
  const std::size_t n = center.dim();
  const Rational step(Integer(checked_pow(cfg.p(), radius_exponent)));
  const std::int64_t base = checked_pow(cfg.p(), inner_depth);
  std::vector<std::int64_t> z(n, 0);
  while (true) {
    std::vector<Rational> c(center.coords());
    for (std::size_t i = 0; i < n; ++i) c[i] += step * z[i];
    if (member(e, Point::from_rationals_unchecked(std::move(c)), cfg)) return true;
    std::size_t i = 0;
    while (i < n && ++z[i] == base) z[i++] = 0;
    if (i == n) return false;
  }
}

SampleReport sample(const SetExpr& e, const GridSpec& spec, std::uint64_t count, std::uint64_t seed) {
  if (e.nvars() != spec.dims) throw DimensionError("sample: expression and grid dimensions differ");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(0, spec.modulus() - 1);
  SampleReport r;
  for (std::uint64_t s = 0; s < count; ++s) {
    GridPoint x(spec.dims);
    for (auto& c : x) c = coord(rng);
    ++r.samples;
    if (member(e, Point::from_integers(x), spec.cfg)) {
      ++r.members;
      if (r.witnesses.size() < 10) r.witnesses.push_back(std::move(x));
    }
  }
  return r;
}

}  // namespace ultracl
