#include "ultracl/blowup.hpp"

#include <set>

namespace ultracl {

namespace {

Poly one(std::size_t n) { return Poly::constant(n, Rational(1)); }

Integer ipow(const Integer& b, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// Calls visit(point) for every point of {0, ..., base-1}^n.
template <class Visit>
bool for_each_grid_point(std::size_t n, std::int64_t base, Visit&& visit) {
  std::vector<std::int64_t> c(n, 0);
  while (true) {
    if (visit(c)) return true;
    std::size_t i = 0;
    while (i < n && ++c[i] == base) c[i++] = 0;
    if (i == n) return false;
  }
}

}  // namespace

// ------------------------------------------------------------------ charts

std::vector<Poly> chart_map(std::size_t j, std::size_t n, std::size_t k) {
  if (j < 1 || j > n) throw std::out_of_range("chart_map: chart index out of range");
  const std::size_t total = n + k;
  const Poly yj = Poly::variable(total, j - 1);
  std::vector<Poly> out;
  for (std::size_t i = 0; i < total; ++i) {
    if (i == j - 1 || i >= n) {
      out.push_back(Poly::variable(total, i));
    } else {
      out.push_back(yj * Poly::variable(total, i));
    }
  }
  return out;
}

std::vector<Poly> chart_map(const Chart& c) {
  std::vector<Poly> out = chart_map(c.index, c.blowup_dims, c.passive_dims);
  if (c.translation.dim() != 0) {
    if (c.translation.dim() != c.nvars()) throw DimensionError("chart_map: translation dimension");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += Poly::constant(c.nvars(), c.translation[i]);
  }
  return out;
}

Point apply_chart(const Chart& c, const Point& y) {
  if (y.dim() != c.nvars()) throw DimensionError("apply_chart: dimension mismatch");
  std::vector<Rational> out;
  for (const auto& p : chart_map(c)) out.push_back(eval(p, y));
  return Point::from_rationals_unchecked(std::move(out));
}

std::optional<Point> chart_preimage(const Chart& c, const Point& x, const PrimeConfig& cfg) {
  if (x.dim() != c.nvars()) throw DimensionError("chart_preimage: dimension mismatch");
  std::vector<Rational> d(x.coords());
  if (c.translation.dim() != 0) {
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= c.translation[i];
  }
  const Rational dj = d[c.index - 1];
  if (dj == 0) return std::nullopt;
  std::vector<Rational> y(d);
  for (std::size_t i = 0; i < c.blowup_dims; ++i) {
    if (i == c.index - 1) continue;
    y[i] = d[i] / dj;
    const Valuation v = val(y[i], cfg);
    if (v && *v < 0) return std::nullopt;
  }
  return Point::from_rationals_unchecked(std::move(y));
}

Poly pullback_poly(const Poly& f, const Chart& c) {
  if (f.nvars() != c.nvars()) throw DimensionError("pullback_poly: dimension mismatch");
  return substitute(f, chart_map(c));
}

std::pair<std::uint32_t, Poly> strict_transform(const Poly& f, const Chart& c) {
  if (f.is_zero()) throw std::invalid_argument("strict_transform: f = 0");
  const Poly p = pullback_poly(f, c);
  const std::size_t v = c.index - 1;
  std::uint32_t m = UINT32_MAX;
  for (const auto& [mono, coef] : p.terms()) m = std::min(m, mono[v]);
  Poly out(p.nvars());
  for (const auto& [mono, coef] : p.terms()) {
    Monomial r = mono;
    r[v] -= m;
    out.add_term(r, coef);
  }
  return {m, out};
}

// ------------------------------------------------------------------- trees

BlowupSeq::BlowupSeq(std::size_t nvars) : nvars_(nvars) {
  BlowupNode root;
  for (std::size_t i = 0; i < nvars; ++i) root.to_root.push_back(Poly::variable(nvars, i));
  nodes_.push_back(std::move(root));
}

std::size_t BlowupSeq::blowup_count() const {
  std::size_t n = 0;
  for (const auto& nd : nodes_) n += nd.blowups.size();
  return n;
}

std::vector<std::size_t> BlowupSeq::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].blowups.empty()) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> BlowupSeq::blowup_at(std::size_t node, const Point& p) const {
  const auto& evs = nodes_.at(node).blowups;
  for (std::size_t i = 0; i < evs.size(); ++i) {
    if (evs[i].center == p) return i;
  }
  return std::nullopt;
}

std::size_t BlowupSeq::blowup(std::size_t node, const Point& center) {
  if (center.dim() != nvars_) throw DimensionError("blowup: center dimension mismatch");
  if (auto existing = blowup_at(node, center)) return *existing;
  const std::vector<Poly> parent_to_root = nodes_.at(node).to_root;
  const std::size_t depth = nodes_[node].depth + 1;
  BlowupEvent ev{center, {}};
  for (std::size_t j = 1; j <= nvars_; ++j) {
    BlowupNode child;
    child.parent = node;
    child.chart = Chart{j, nvars_, 0, center};
    const std::vector<Poly> images = chart_map(*child.chart);
    for (const auto& p : parent_to_root) child.to_root.push_back(substitute(p, images));
    child.depth = depth;
    ev.children.push_back(nodes_.size());
    nodes_.push_back(std::move(child));
  }
  nodes_[node].blowups.push_back(std::move(ev));
  return nodes_[node].blowups.size() - 1;
}

Poly BlowupSeq::pullback(const Poly& f, std::size_t node) const {
  return substitute(f, nodes_.at(node).to_root);
}

Point BlowupSeq::to_root(std::size_t node, const Point& y) const {
  std::vector<Rational> out;
  for (const auto& p : nodes_.at(node).to_root) out.push_back(eval(p, y));
  return Point::from_rationals_unchecked(std::move(out));
}

// -------------------------------------------------------- monomialization

bool has_normal_crossings(const Poly& f, const Point& at) {
  if (f.is_zero()) return false;
  return extract_monomial(translate(f, at)).second.constant_term() != 0;
}

namespace {

std::vector<Integer> divisors(Integer a) {
  a = abs(a);
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
  return out;
}

// Integer coefficients with the same roots, lowest degree first.
std::vector<Integer> integral(const std::vector<Rational>& c) {
  Integer l = 1;
  for (const auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& q : c) {
    out.push_back(q.get_num() * (l / q.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1) {
    for (auto& z : out) z /= g;
  }
  return out;
}

Rational horner(const std::vector<Rational>& c, const Rational& t) {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

// Divides by (X - t); c(t) must be 0.
std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& t) {
  std::vector<Rational> q(c.size() - 1);
  Rational carry = 0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    carry = carry * t + c[k];
    q[k - 1] = carry;
  }
  return q;
}

}  // namespace

RootSearch rational_roots(const Poly& f, std::size_t var) {
  std::vector<Rational> c;
  for (const auto& p : coefficients_in(f, var)) {
    if (!p.is_constant()) throw std::invalid_argument("rational_roots: polynomial is not univariate");
    c.push_back(p.constant_term());
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) throw std::invalid_argument("rational_roots: f = 0");
  std::size_t low = 0;
  while (c[low] == 0) ++low;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));

  RootSearch out;
  while (c.size() > 1) {
    const std::vector<Integer> z = integral(c);
    std::optional<Rational> found;
    for (const auto& a : divisors(z.front())) {
      for (const auto& b : divisors(z.back())) {
        for (int sign : {1, -1}) {
          Rational t(a * sign, b);
          t.canonicalize();
          if (horner(c, t) == 0) {
            found = t;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
    if (std::find(out.roots.begin(), out.roots.end(), *found) == out.roots.end()) out.roots.push_back(*found);
    c = deflate(c, *found);
  }
  out.irrational = c.size() > 1;
  return out;
}

Monomialization monomialize2(const Poly& f, const PrimeConfig& cfg, unsigned max_blowups) {
  if (f.nvars() != 2) throw DimensionError("monomialize2: two variables required");
  if (f.is_zero()) throw std::invalid_argument("monomialize2: f = 0");
  Monomialization mz;
  std::vector<Poly> reduced{squarefree(f)};
  std::vector<Poly> total{f};
  unsigned count = 0;

  std::function<void(std::size_t, const Point&)> process = [&](std::size_t node, const Point& c) {
    if (extract_monomial(translate(reduced[node], c)).second.constant_term() != 0) {
      auto [m, u] = extract_monomial(translate(total[node], c));
      mz.records.push_back({node, c, m, {u, one(2)}});
      return;
    }
    if (count >= max_blowups) {
      throw MaxIterationsExceeded("monomialize2: more than " + std::to_string(max_blowups) + " blow-ups");
    }
    ++count;
    const std::size_t ev = mz.seq.blowup(node, c);
    const std::vector<std::size_t> children = mz.seq.node(node).blowups[ev].children;
    reduced.resize(mz.seq.size());
    total.resize(mz.seq.size());
    for (std::size_t child : children) {
      const std::vector<Poly> images = chart_map(*mz.seq.node(child).chart);
      reduced[child] = substitute(reduced[node], images);
      total[child] = substitute(total[node], images);
    }
    for (std::size_t idx = 0; idx < children.size(); ++idx) {
      const std::size_t child = children[idx];
      process(child, Point::origin(2));
      // Residual restricted to the exceptional line y_j = 0.
      const Poly residual = extract_monomial(reduced[child]).second;
      std::vector<Poly> images{Poly::variable(2, 0), Poly::variable(2, 1)};
      images[idx] = Poly(2);
      const std::size_t other = 1 - idx;
      const RootSearch rs = rational_roots(substitute(residual, images), other);
      if (rs.irrational) {
        throw IrrationalSingularity("monomialize2: exceptional line meets the curve at a non-rational point");
      }
      for (const auto& t : rs.roots) {
        const Valuation v = val(t, cfg);
        if (v && *v < 0) continue;  // covered by the other chart
        std::vector<Rational> p(2);
        p[other] = t;
        process(child, Point::from_rationals_unchecked(std::move(p)));
      }
    }
  };
  process(0, Point::origin(2));
  return mz;
}

// ------------------------------------------------------ relative division

RelativeDivision relative_division_at(const Poly& f, const Poly& g, Comparison cmp) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("relative_division: zero operand");
  auto [mf, uf] = extract_monomial(f);
  auto [mg, ug] = extract_monomial(g);
  if (uf.constant_term() == 0 || ug.constant_term() == 0) {
    throw NotNormalCrossings("relative_division: operand is not monomial times unit");
  }
  if (mf == mg) return {Direction::Both, {Monomial(f.nvars()), {uf, ug}, cmp}, mf};
  if (mg.divides(mf)) return {Direction::GDividesF, {mf / mg, {uf, ug}, cmp}, mg};
  if (mf.divides(mg)) return {Direction::FDividesG, {mg / mf, {ug, uf}, mirror(cmp)}, mf};
  throw IncomparableExponents("relative_division: exponents are not comparable");
}

namespace {

Atom local_atom(const Atom& a, const BlowupSeq& seq, const NormalForm& rec) {
  return {translate(seq.pullback(a.f, rec.node), rec.point), translate(seq.pullback(a.g, rec.node), rec.point),
          a.cmp};
}

}  // namespace

std::vector<LeafRelativeDivision> relative_division(const Poly& f, const Poly& g, const Monomialization& mz) {
  std::vector<LeafRelativeDivision> out;
  for (std::size_t i = 0; i < mz.records.size(); ++i) {
    const Atom l = local_atom({f, g, Comparison::Le}, mz.seq, mz.records[i]);
    out.push_back({i, relative_division_at(l.f, l.g, Comparison::Le)});
  }
  return out;
}

LeafDecomposition decompose_local(const Atom& local) {
  const std::size_t n = local.nvars();
  LeafDecomposition d;
  d.form = is_strict(local.cmp) ? LeafDecomposition::Form::AMinusV : LeafDecomposition::Form::AUnionV;
  for (const auto& p : {local.f, local.g}) {
    if (!p.is_zero()) d.v.generators.push_back(p);
  }
  d.common = Monomial(n);
  if (local.f.is_zero() && local.g.is_zero()) {
    d.a = is_strict(local.cmp) ? SetExpr::empty(n) : SetExpr::universe(n);
    return d;
  }
  if (local.f.is_zero() || local.g.is_zero()) {
    // |h| cmp |0| or |0| cmp |h|: off V(h) the comparison is constant.
    const Atom z = local.g.is_zero() ? local : local.mirrored();
    auto [m, u] = extract_monomial(z.f);
    if (u.constant_term() == 0) throw NotNormalCrossings("decompose_local: operand is not monomial times unit");
    d.common = m;
    const bool above = z.cmp == Comparison::Ge || z.cmp == Comparison::Gt;
    d.a = above ? SetExpr::universe(n) : SetExpr::empty(n);
    return d;
  }
  const RelativeDivision rd = relative_division_at(local.f, local.g, local.cmp);
  d.common = rd.common;
  d.a = SetExpr::atom(Poly::term(rd.nu.monomial, Rational(1)) * rd.nu.unit.numerator, rd.nu.cmp,
                      rd.nu.unit.denominator);
  return d;
}

std::vector<LeafDecomposition> pullback_decompose(const Atom& a, const Monomialization& mz) {
  std::vector<LeafDecomposition> out;
  for (std::size_t i = 0; i < mz.records.size(); ++i) {
    LeafDecomposition d = decompose_local(local_atom(a, mz.seq, mz.records[i]));
    d.record = i;
    out.push_back(std::move(d));
  }
  return out;
}

SetExpr upstairs_closure(const std::vector<LeafDecomposition>& atoms) {
  if (atoms.empty()) return SetExpr::universe(2);
  const std::size_t n = atoms.front().common.size();
  if (n != 2) throw DimensionError("upstairs_closure: two variables required");

  std::vector<SetExpr> fixed;
  std::vector<const LeafDecomposition*> choice;
  Monomial z(n);
  for (const auto& d : atoms) {
    if (d.form == LeafDecomposition::Form::AMinusV) {
      fixed.push_back(d.a);
      z = z * d.common;
    } else if (d.common.is_one()) {
      fixed.push_back(d.a);
    } else {
      choice.push_back(&d);
    }
  }
  if (choice.size() > 20) throw std::length_error("upstairs_closure: too many weak atoms");
  const SetExpr z_set = analytic_or_trivial(n, {Poly::term(z, Rational(1))});

  std::vector<SetExpr> parts;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << choice.size()); ++mask) {
    std::vector<SetExpr> b = fixed;
    std::vector<Monomial> w;
    for (std::size_t i = 0; i < choice.size(); ++i) {
      if (mask >> i & 1) {
        w.push_back(choice[i]->common);
      } else {
        b.push_back(choice[i]->a);
      }
    }
    SetExpr cl = SetExpr::universe(n);
    if (!w.empty()) {
      // W = V(gcd) u V(cofactors); the cofactor part is at most the origin.
      Monomial g = w.front();
      for (const auto& m : w) g = min(g, m);
      Monomial g_star = g;
      for (std::size_t i = 0; i < n; ++i) {
        if (z[i] > 0) g_star[i] = 0;
      }
      SetExpr hyper = g.is_one() ? SetExpr::empty(n) : analytic_or_trivial(n, {Poly::term(g_star, Rational(1))});
      std::vector<Poly> cof;
      for (const auto& m : w) cof.push_back(Poly::term(m / g, Rational(1)));
      SetExpr points = difference(analytic_or_trivial(n, cof), z_set);
      cl = union_of(hyper, points);
    }
    parts.push_back(intersection(intersect_all(n, b), cl));
  }
  return union_all(n, parts);
}

// ---------------------------------------------------------- image queries

namespace {

class ImageWalker {
 public:
  ImageWalker(const BlowupSeq& seq, const UpstairsOracle& up, const PrimeConfig& cfg, unsigned depth)
      : seq_(seq), up_(up), cfg_(cfg) {
    const Integer m = ipow(cfg.prime(), depth);
    if (!m.fits_slong_p()) throw std::overflow_error("image_member: sample depth too large");
    modulus_ = m.get_si();
  }

  ClosureMembership descend(std::size_t node, const Point& x) const {
    if (auto ev = seq_.blowup_at(node, x)) return fiber(node, *ev);
    const BlowupNode& nd = seq_.node(node);
    if (nd.blowups.empty()) return {up_(node, x), false};
    bool approx = false;
    for (std::size_t child : nd.blowups.front().children) {
      auto pre = chart_preimage(*seq_.node(child).chart, x, cfg_);
      if (!pre) continue;
      const ClosureMembership r = descend(child, *pre);
      if (r.value) return r;
      approx = approx || r.approximate;
    }
    return {false, approx};
  }

 private:
  ClosureMembership fiber(std::size_t node, std::size_t ev) const {
    const auto& children = seq_.node(node).blowups[ev].children;
    const std::size_t n = seq_.nvars();
    for (std::size_t idx = 0; idx < children.size(); ++idx) {
      const bool hit = for_each_grid_point(n - 1, modulus_, [&](const std::vector<std::int64_t>& t) {
        std::vector<std::int64_t> y;
        for (std::size_t i = 0, k = 0; i < n; ++i) y.push_back(i == idx ? 0 : t[k++]);
        return descend(children[idx], Point::from_integers(y)).value;
      });
      if (hit) return {true, true};
    }
    return {false, true};
  }

  const BlowupSeq& seq_;
  const UpstairsOracle& up_;
  const PrimeConfig& cfg_;
  std::int64_t modulus_;
};

}  // namespace

ClosureMembership image_member(const BlowupSeq& seq, const UpstairsOracle& upstairs, const Point& x,
                               const PrimeConfig& cfg, unsigned sample_depth) {
  if (x.dim() != seq.nvars()) throw DimensionError("image_member: dimension mismatch");
  return ImageWalker(seq, upstairs, cfg, sample_depth).descend(0, x);
}

ClosureMembership image_member(const BlowupSeq& seq, const std::map<std::size_t, SetExpr>& upstairs,
                               const Point& x, const PrimeConfig& cfg, unsigned sample_depth) {
  const UpstairsOracle oracle = [&](std::size_t node, const Point& q) {
    auto it = upstairs.find(node);
    return it != upstairs.end() && member(it->second, q, cfg);
  };
  return image_member(seq, oracle, x, cfg, sample_depth);
}

ImageClosedReport check_image_closed(const BlowupSeq& seq, const std::map<std::size_t, SetExpr>& upstairs,
                                     const PrimeConfig& cfg, unsigned M, unsigned N) {
  if (N > M) throw std::invalid_argument("check_image_closed: resolution exceeds depth");
  const std::size_t n = seq.nvars();
  const std::int64_t base_m = ipow(cfg.prime(), M).get_si();
  const Integer mod_n = ipow(cfg.prime(), N);
  const std::int64_t step = mod_n.get_si();
  const std::int64_t inner = ipow(cfg.prime(), M - N).get_si();

  ImageClosedReport report;
  std::set<std::vector<Integer>> classes;
  for (const auto& [node, set] : upstairs) {
    for_each_grid_point(n, base_m, [&](const std::vector<std::int64_t>& c) {
      const Point y = Point::from_integers(c);
      if (!member(set, y, cfg)) return false;
      ++report.upstairs_points;
      const Point x = seq.to_root(node, y);
      std::vector<Integer> cls;
      for (const auto& q : x.coords()) cls.push_back(residue_mod(q, mod_n));
      classes.insert(std::move(cls));
      return false;
    });
  }
  report.image_classes = classes.size();
  for (const auto& cls : classes) {
    const bool found = for_each_grid_point(n, inner, [&](const std::vector<std::int64_t>& z) {
      std::vector<std::int64_t> x;
      for (std::size_t i = 0; i < n; ++i) x.push_back(cls[i].get_si() + step * z[i]);
      return image_member(seq, upstairs, Point::from_integers(x), cfg, M).value;
    });
    if (!found) report.violations.push_back(cls);
  }
  report.closed = report.violations.empty();
  return report;
}

// ------------------------------------------------- pointwise closure test

ClosureMembership basic_closure_member(const std::vector<Atom>& atoms, const Point& x, const PrimeConfig& cfg,
                                       const ClosureMemberOptions& opts) {
  const std::size_t n = x.dim();
  if (n != 2) throw UnsupportedDimension("basic_closure_member: two variables required");
  bool inside = true;
  for (const auto& a : atoms) inside = inside && member(a, x, cfg);
  if (inside) return {true, false};

  // Atoms not singular at x are constant near x.
  std::vector<Atom> kept;
  for (const auto& a : atoms) {
    Atom l{translate(a.f, x), translate(a.g, x), a.cmp};
    if (l.f.is_zero() && l.g.is_zero()) {
      if (is_strict(l.cmp)) return {false, false};
      continue;
    }
    const Rational f0 = l.f.constant_term();
    const Rational g0 = l.g.constant_term();
    if (f0 != 0 || g0 != 0) {
      if (!holds(norm(f0, cfg), l.cmp, norm(g0, cfg))) return {false, false};
      continue;
    }
    kept.push_back(std::move(l));
  }
  const Point origin = Point::origin(n);
  if (kept.empty()) return {true, false};
  const BasicSet local{kept};
  if (in_certified_fragment(split_basic(local, cfg))) {
    return {member(closure(to_expr(n, local), cfg).result, origin, cfg), false};
  }

  Poly product = one(n);
  for (const auto& a : kept) {
    for (const Poly& p : {a.f, a.g, Poly(a.f - a.g)}) {
      if (!p.is_zero()) product = product * p;
    }
  }
  const Monomialization mz = monomialize2(product, cfg, opts.max_blowups);

  std::map<std::size_t, std::vector<Atom>> pulled;
  const UpstairsOracle oracle = [&](std::size_t node, const Point& q) {
    auto it = pulled.find(node);
    if (it == pulled.end()) {
      std::vector<Atom> v;
      for (const auto& a : kept) v.push_back({mz.seq.pullback(a.f, node), mz.seq.pullback(a.g, node), a.cmp});
      it = pulled.emplace(node, std::move(v)).first;
    }
    std::vector<LeafDecomposition> decomps;
    for (const auto& a : it->second) decomps.push_back(decompose_local({translate(a.f, q), translate(a.g, q), a.cmp}));
    return member(upstairs_closure(decomps), origin, cfg);
  };
  return image_member(mz.seq, oracle, origin, cfg, opts.sample_depth);
}

}  // namespace ultracl
