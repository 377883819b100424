#pragma once

// Brute-force ground truth over the residue grid {0, ..., p^M - 1}^n.
//
// A class is a residue tuple mod p^N; classes are the closed balls of radius
// p^(-N). Membership at grid points is exact, so the only approximation is
// which points of a class get looked at.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "ultracl/semiset.hpp"

namespace ultracl {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  std::size_t dims = 2;
  PrimeConfig cfg;
  unsigned depth = 3;       // M
  unsigned resolution = 1;  // N
  std::uint64_t budget = 1'000'000;

  std::int64_t modulus() const;        // p^M
  std::int64_t class_modulus() const;  // p^N
  std::uint64_t point_count() const;
  /// Throws std::invalid_argument when N > M, BudgetExceeded over budget.
  void validate() const;
};

using GridPoint = std::vector<std::int64_t>;
using Class = std::vector<std::int64_t>;
using ClassSet = std::set<Class>;

/// Splits [0, count) into contiguous ranges run on worker threads.
void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t begin, std::uint64_t end)>& body);

GridPoint grid_point(const GridSpec& spec, std::uint64_t index);
std::vector<GridPoint> enumerate_points(const GridSpec& spec);
Class class_of(const GridPoint& x, std::int64_t class_modulus);

/// Membership of every grid point, in enumeration order.
std::vector<char> membership(const SetExpr& e, const GridSpec& spec);

ClassSet approx_closure(const SetExpr& e, const GridSpec& spec);
ClassSet approx_boundary(const SetExpr& e, const GridSpec& spec);

struct Violation {
  int direction;  // 1: extensivity, 2: over-claiming, 3: under-claiming
  Class cls;
  std::optional<GridPoint> witness;
};

struct VerifyReport {
  std::uint64_t points = 0;
  std::size_t closure_classes = 0;
  std::size_t claimed_classes = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

VerifyReport verify_closure(const SetExpr& e, const SetExpr& claimed, const GridSpec& spec);

/// Minimum distance between enumerated members; nullopt when either is empty.
std::optional<NormValue> min_distance(const SetExpr& a, const SetExpr& b, const GridSpec& spec);

/// Whether some point center + p^R z, z in {0, ..., p^D - 1}^n, lies in e.
bool ball_meets(const SetExpr& e, const Point& center, unsigned radius_exponent, unsigned inner_depth,
                const PrimeConfig& cfg);

struct SampleReport {
  std::uint64_t samples = 0;
  std::uint64_t members = 0;
  std::vector<GridPoint> witnesses;  // first few members
};

/// Uniform random grid points; exploration only.
SampleReport sample(const SetExpr& e, const GridSpec& spec, std::uint64_t count, std::uint64_t seed);

}  // namespace ultracl
