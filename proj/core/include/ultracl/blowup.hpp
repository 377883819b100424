#pragma once

// Point blow-ups in affine charts, plane-curve monomialization, and the
// pointwise image test used for closures outside the certified fragment.
//
// Chart j of the blow-up of R^n x R^k at a translated origin c:
//   y -> c + (y_j y_1, ..., y_j, ..., y_j y_n, t)
// The exceptional divisor is y_j = 0.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ultracl/closure.hpp"
#include "ultracl/poly.hpp"
#include "ultracl/semiset.hpp"

namespace ultracl {

class IrrationalSingularity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MaxIterationsExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IncomparableExponents : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotNormalCrossings : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Chart {
  std::size_t index = 1;  // 1-based
  std::size_t blowup_dims = 2;
  std::size_t passive_dims = 0;
  Point translation;  // empty means the origin

  std::size_t nvars() const { return blowup_dims + passive_dims; }
};

/// Images of the variables under chart j (no translation).
std::vector<Poly> chart_map(std::size_t j, std::size_t n, std::size_t k);
/// Images of the variables including the translation.
std::vector<Poly> chart_map(const Chart& c);
Point apply_chart(const Chart& c, const Point& y);
/// The unique chart point over x, if x lies in the chart's image and off the center.
std::optional<Point> chart_preimage(const Chart& c, const Point& x, const PrimeConfig& cfg);

Poly pullback_poly(const Poly& f, const Chart& c);

/// pullback_poly(f, c) = y_j^m * f'.
std::pair<std::uint32_t, Poly> strict_transform(const Poly& f, const Chart& c);

struct BlowupEvent {
  Point center;
  std::vector<std::size_t> children;  // children[j-1] is the chart-j node
};

struct BlowupNode {
  std::optional<std::size_t> parent;
  std::optional<Chart> chart;
  std::vector<Poly> to_root;  // root coordinates in this node's coordinates
  std::vector<BlowupEvent> blowups;
  std::size_t depth = 0;
};

class BlowupSeq {
 public:
  explicit BlowupSeq(std::size_t nvars);

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return nodes_.size(); }
  const BlowupNode& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t blowup_count() const;
  std::vector<std::size_t> leaves() const;

  /// Blows up `center` (in node coordinates); returns the event index.
  std::size_t blowup(std::size_t node, const Point& center);
  std::optional<std::size_t> blowup_at(std::size_t node, const Point& p) const;

  Poly pullback(const Poly& f, std::size_t node) const;
  Point to_root(std::size_t node, const Point& y) const;

 private:
  std::size_t nvars_;
  std::vector<BlowupNode> nodes_;
};

/// Monomial times unit at a point of a node, in coordinates centered there.
struct NormalForm {
  std::size_t node = 0;
  Point point;
  Monomial monomial;
  UnitFraction unit;
};

struct Monomialization {
  BlowupSeq seq{2};
  std::vector<NormalForm> records;
};

/// translate + extract_monomial leaves a residual that is nonzero at `at`.
bool has_normal_crossings(const Poly& f, const Point& at);

/// Nonzero rational roots of a univariate polynomial (in variable `var`),
/// each listed once. `irrational` is set when other roots remain.
struct RootSearch {
  std::vector<Rational> roots;
  bool irrational = false;
};
RootSearch rational_roots(const Poly& f, std::size_t var);

Monomialization monomialize2(const Poly& f, const PrimeConfig& cfg, unsigned max_blowups = 30);

enum class Direction { FDividesG, GDividesF, Both };

struct TransformedAtom {
  Monomial monomial;
  UnitFraction unit;
  Comparison cmp = Comparison::Le;
};

/// Off V(f, g) the atom |f| cmp |g| is {|nu| nu.cmp 1}.
struct RelativeDivision {
  Direction direction;
  TransformedAtom nu;
  Monomial common;  // the smaller of the two monomials
};

/// f and g nonzero with normal crossings at the origin of their ring.
RelativeDivision relative_division_at(const Poly& f, const Poly& g, Comparison cmp);

struct LeafRelativeDivision {
  std::size_t record;
  RelativeDivision division;
};
std::vector<LeafRelativeDivision> relative_division(const Poly& f, const Poly& g,
                                                    const Monomialization& mz);

struct LeafDecomposition {
  enum class Form { AUnionV, AMinusV };
  std::size_t record = 0;
  Form form = Form::AUnionV;
  SetExpr a = SetExpr::universe(2);
  AnalyticSet v;
  Monomial common;  // near the record point V(v) = V(common)
};

/// Decomposition of an atom whose polynomials are already local at the origin.
LeafDecomposition decompose_local(const Atom& local);
std::vector<LeafDecomposition> pullback_decompose(const Atom& a, const Monomialization& mz);

/// Closure near the origin of the intersection of the decomposed atoms
/// (one basic set, all at the same point). Two variables.
SetExpr upstairs_closure(const std::vector<LeafDecomposition>& atoms);

using UpstairsOracle = std::function<bool(std::size_t node, const Point& q)>;

ClosureMembership image_member(const BlowupSeq& seq, const UpstairsOracle& upstairs, const Point& x,
                               const PrimeConfig& cfg, unsigned sample_depth);
/// Upstairs sets per node, in node coordinates; missing nodes are empty.
ClosureMembership image_member(const BlowupSeq& seq, const std::map<std::size_t, SetExpr>& upstairs,
                               const Point& x, const PrimeConfig& cfg, unsigned sample_depth);

struct ImageClosedReport {
  bool closed = true;
  std::size_t upstairs_points = 0;
  std::size_t image_classes = 0;
  std::vector<std::vector<Integer>> violations;  // classes mod p^N
};

ImageClosedReport check_image_closed(const BlowupSeq& seq, const std::map<std::size_t, SetExpr>& upstairs,
                                     const PrimeConfig& cfg, unsigned M, unsigned N);

/// Pointwise closure membership for one basic set in two variables.
ClosureMembership basic_closure_member(const std::vector<Atom>& atoms, const Point& x, const PrimeConfig& cfg,
                                       const ClosureMemberOptions& opts);

}  // namespace ultracl
