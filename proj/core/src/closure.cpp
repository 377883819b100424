#include "ultracl/closure.hpp"

#include "ultracl/blowup.hpp"

namespace ultracl {

SetExpr analytic_or_trivial(std::size_t nvars, std::vector<Poly> gens) {
  std::vector<Poly> kept;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.is_constant()) return SetExpr::empty(nvars);
    kept.push_back(std::move(g));
  }
  if (kept.empty()) return SetExpr::universe(nvars);
  return SetExpr::analytic(std::move(kept));
}

BasicParts split_basic(const BasicSet& b, const PrimeConfig& cfg) {
  BasicParts parts;
  for (const auto& a : b.atoms) {
    const AtomClass c = classify_atom(a, cfg);
    switch (c.kind) {
      case AtomKind::ClopenA: parts.clopen.push_back(a); break;
      case AtomKind::WeakClosed: parts.weak.push_back(a); break;
      case AtomKind::StrictOpen: parts.strict.push_back(a); break;
      case AtomKind::Degenerate: {
        const SetExpr& r = *c.resolved;
        switch (r.kind()) {
          case SetExpr::Kind::Empty: parts.empty = true; break;
          case SetExpr::Kind::Universe: break;
          case SetExpr::Kind::Analytic: parts.zeros.push_back(r.as_analytic().generators.front()); break;
          case SetExpr::Kind::Complement:
            parts.punctures.push_back(r.operand().as_analytic().generators.front());
            break;
          default: break;
        }
        break;
      }
    }
  }
  return parts;
}

bool in_certified_fragment(const BasicParts& p) {
  if (p.empty) return true;
  const bool has_rest = !p.weak.empty() || !p.strict.empty() || !p.zeros.empty() || !p.punctures.empty();
  if (!has_rest) return true;                                       // clopen only
  if (p.strict.empty() && p.punctures.empty()) return true;         // closed leaves
  if (p.strict.size() == 1 && p.weak.empty() && p.zeros.empty() && p.punctures.empty()) return true;
  if (p.strict.empty() && p.weak.empty() && p.zeros.size() <= 1) return true;  // V(f) \ V(g)
  return false;
}

namespace {

std::vector<SetExpr> atom_exprs(const std::vector<Atom>& atoms) {
  std::vector<SetExpr> out;
  for (const auto& a : atoms) out.push_back(SetExpr::atom(a));
  return out;
}

struct StrictSplit {
  CommonFactor factor;
  Atom reduced;  // |f0| cmp |g0|, original orientation
};

StrictSplit split_strict(const Atom& a) {
  CommonFactor cf = remove_common_factor(a.f, a.g);
  Atom reduced{cf.f0, cf.g0, a.cmp};
  return {std::move(cf), std::move(reduced)};
}

// R4
SetExpr strict_closure(const Atom& a, std::vector<RuleStep>& trace) {
  StrictSplit s = split_strict(a);
  trace.push_back({"R4", {a.f, a.g, s.factor.h, s.factor.f0, s.factor.g0},
                   "strict atom: common factor removed, closure adds V(f0, g0)"});
  const std::size_t n = a.nvars();
  return union_of(SetExpr::atom(s.reduced), analytic_or_trivial(n, {s.factor.f0, s.factor.g0}));
}

Poly product(std::size_t n, const std::vector<Poly>& ps) {
  Poly acc = Poly::constant(n, Rational(1));
  for (const auto& p : ps) acc = acc * p;
  return acc;
}

// Closure of one basic set; returns whether it was certified.
bool basic_closure(const BasicSet& b, std::size_t n, const PrimeConfig& cfg, SetExpr& out,
                   std::vector<RuleStep>& trace) {
  const BasicParts p = split_basic(b, cfg);
  if (p.empty) {
    trace.push_back({"degenerate", {}, "basic set contains an empty atom"});
    out = SetExpr::empty(n);
    return true;
  }
  const SetExpr clopen = intersect_all(n, atom_exprs(p.clopen));
  if (!p.clopen.empty()) {
    std::vector<Poly> ops;
    for (const auto& a : p.clopen) {
      ops.push_back(a.f);
      ops.push_back(a.g);
    }
    trace.push_back({"R2", ops, "clopen atoms factored out"});
  }

  const bool certified = in_certified_fragment(p);
  SetExpr rest = SetExpr::universe(n);
  if (p.strict.empty() && p.punctures.empty()) {
    std::vector<SetExpr> parts = atom_exprs(p.weak);
    if (!p.zeros.empty()) parts.push_back(analytic_or_trivial(n, p.zeros));
    rest = intersect_all(n, parts);
    if (!p.weak.empty() || !p.zeros.empty()) trace.push_back({"R3", {}, "closed leaves"});
  } else if (certified && p.strict.size() == 1) {
    rest = strict_closure(p.strict.front(), trace);
  } else if (certified) {
    // Punctures only, over at most one hypersurface.
    const Poly g = product(n, p.punctures);
    if (p.zeros.empty()) {
      trace.push_back({"R5", {Poly(n), g}, "complement of a hypersurface is dense"});
      rest = SetExpr::universe(n);
    } else {
      const Poly f = p.zeros.front();
      const Poly star = remove_factors_dividing(f, g);
      trace.push_back({"R5", {f, g, star}, "components of V(f) inside V(g) discarded"});
      rest = analytic_or_trivial(n, {star});
    }
  } else {
    std::vector<SetExpr> parts = atom_exprs(p.weak);
    if (!p.zeros.empty()) parts.push_back(analytic_or_trivial(n, p.zeros));
    for (const auto& a : p.strict) parts.push_back(strict_closure(a, trace));
    trace.push_back({"approx", {},
                     "several non-clopen atoms with a strict one: intersection of atom closures"});
    rest = intersect_all(n, parts);
  }
  out = intersection(clopen, rest);
  return certified;
}

}  // namespace

ClosureResult closure(const SetExpr& e, const PrimeConfig& cfg) {
  const DNF d = to_dnf(e);
  const std::size_t n = e.nvars();
  ClosureResult r{SetExpr::empty(n), {}, true};
  if (d.disjuncts.size() > 1)
    r.trace.push_back({"R1", {}, std::to_string(d.disjuncts.size()) + " disjuncts"});
  std::vector<SetExpr> parts;
  for (const auto& b : d.disjuncts) {
    SetExpr c = SetExpr::empty(n);
    r.certified = basic_closure(b, n, cfg, c, r.trace) && r.certified;
    parts.push_back(c);
  }
  r.result = union_all(n, parts);
  return r;
}

ClosureResult interior(const SetExpr& e, const PrimeConfig& cfg) {
  ClosureResult c = closure(complement(e), cfg);
  c.result = complement(c.result);
  c.trace.push_back({"interior", {}, "complement of the closure of the complement"});
  return c;
}

namespace {

bool all_clopen(const DNF& d, const PrimeConfig& cfg) {
  for (const auto& b : d.disjuncts) {
    for (const auto& a : b.atoms) {
      const AtomClass c = classify_atom(a, cfg);
      if (c.kind == AtomKind::ClopenA) continue;
      if (c.kind == AtomKind::Degenerate &&
          (c.resolved->is_universe() || c.resolved->is_empty_leaf())) {
        continue;
      }
      return false;
    }
  }
  return true;
}

}  // namespace

ClosureResult boundary(const SetExpr& e, const PrimeConfig& cfg) {
  const std::size_t n = e.nvars();
  const DNF d = to_dnf(e);
  if (all_clopen(d, cfg)) {
    return {SetExpr::empty(n), {{"clopen", {}, "boolean combination of clopen atoms"}}, true};
  }
  if (d.disjuncts.size() == 1 && d.disjuncts.front().atoms.size() == 1) {
    Atom a = d.disjuncts.front().atoms.front();
    const AtomClass c = classify_atom(a, cfg);
    if (c.kind == AtomKind::StrictOpen || c.kind == AtomKind::WeakClosed) {
      // A weak atom shares its boundary with the complementary strict atom.
      if (c.kind == AtomKind::WeakClosed) a = a.negated();
      StrictSplit s = split_strict(a);
      ClosureResult r{SetExpr::empty(n), {}, true};
      r.trace.push_back({"boundary", {a.f, a.g, s.factor.h, s.factor.f0, s.factor.g0},
                         "V(f0, g0) u ({|f0| < |g0|} n V(h))"});
      SetExpr common = analytic_or_trivial(n, {s.factor.f0, s.factor.g0});
      SetExpr along_h = intersection(SetExpr::atom(s.reduced), analytic_or_trivial(n, {s.factor.h}));
      r.result = union_of(common, along_h);
      return r;
    }
  }
  ClosureResult cl = closure(e, cfg);
  ClosureResult clc = closure(complement(e), cfg);
  ClosureResult r{intersection(cl.result, clc.result), cl.trace, cl.certified && clc.certified};
  r.trace.insert(r.trace.end(), clc.trace.begin(), clc.trace.end());
  r.trace.push_back({"boundary", {}, "closure minus interior"});
  return r;
}

ClosureMembership closure_member(const SetExpr& e, const Point& x, const PrimeConfig& cfg,
                                 const ClosureMemberOptions& opts) {
  if (x.dim() != e.nvars()) throw DimensionError("closure_member: dimension mismatch");
  const ClosureResult r = closure(e, cfg);
  if (r.certified) return {member(r.result, x, cfg), false};

  const std::size_t n = e.nvars();
  ClosureMembership out{false, false};
  for (const auto& b : to_dnf(e).disjuncts) {
    if (in_certified_fragment(split_basic(b, cfg))) {
      std::vector<RuleStep> scratch;
      SetExpr c = SetExpr::empty(n);
      basic_closure(b, n, cfg, c, scratch);
      if (member(c, x, cfg)) return {true, false};
      continue;
    }
    if (n != 2) {
      throw UnsupportedDimension("closure_member: blow-up path requires two variables");
    }
    const ClosureMembership m = basic_closure_member(b.atoms, x, cfg, opts);
    if (m.value && !m.approximate) return m;
    if (m.value) out.value = true;
    out.approximate = out.approximate || m.approximate;
  }
  return out;
}

}  // namespace ultracl
