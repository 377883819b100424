#include <benchmark/benchmark.h>

#include "ultracl/blowup.hpp"
#include "ultracl/closure.hpp"
#include "ultracl/oracle.hpp"
#include "ultracl/syntax.hpp"

using namespace ultracl;

namespace {

const std::vector<std::string> kVars{"x", "y"};
const PrimeConfig kP3(3);

void BM_Gcd(benchmark::State& state) {
  const Poly h = parse_poly("(y^2 - x^3)*(x - 2*y + 1)", kVars);
  const Poly f = h * parse_poly("x^4 + 3*y", kVars);
  const Poly g = h * parse_poly("y^3 - x*y + 5", kVars);
  for (auto _ : state) benchmark::DoNotOptimize(gcd(f, g));
}
BENCHMARK(BM_Gcd);

void BM_Closure(benchmark::State& state) {
  const SetExpr e = parse_set("(abs(x^3) < abs(x*y) and abs(x) <= abs(1 + 3*y)) or (V(x*y) diff V(x))", kVars);
  for (auto _ : state) benchmark::DoNotOptimize(closure(e, kP3));
}
BENCHMARK(BM_Closure);

void BM_Monomialize(benchmark::State& state) {
  const Poly f = parse_poly("y^2 - x^3", kVars);
  for (auto _ : state) benchmark::DoNotOptimize(monomialize2(f, kP3));
}
BENCHMARK(BM_Monomialize);

void BM_ApproxClosure(benchmark::State& state) {
  const SetExpr e = parse_set("abs(x) < abs(y)", kVars);
  GridSpec g;
  g.depth = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(approx_closure(e, g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.point_count()));
}
BENCHMARK(BM_ApproxClosure)->DenseRange(2, 4);

void BM_ClosureMember(benchmark::State& state) {
  const SetExpr e = parse_set("abs(x^2) < abs(y) and abs(y) < abs(x)", kVars);
  for (auto _ : state) benchmark::DoNotOptimize(closure_member(e, Point::origin(2), kP3));
}
BENCHMARK(BM_ClosureMember);

}  // namespace

BENCHMARK_MAIN();
