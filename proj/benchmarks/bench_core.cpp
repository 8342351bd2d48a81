#include "dyncubic/multipoly.hpp"

#include <benchmark/benchmark.h>

using namespace dyncubic::algebra;

namespace {

MultiPoly cubic() { return parse_poly("z^3 + a*z + b", {"a", "b", "z"}); }

void BM_iterate_cubic(benchmark::State& state) {
  MultiPoly f = cubic();
  long n = state.range(0);
  for (auto _ : state) {
    MultiPoly g = MultiPoly::variable("z", {"a", "b", "z"});
    for (long i = 0; i < n; ++i) g = f.substitute("z", g);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_iterate_cubic)->Arg(2)->Arg(3)->Arg(4);

void BM_poly_mul(benchmark::State& state) {
  MultiPoly f = cubic();
  MultiPoly g = f.substitute("z", f);
  MultiPoly h = g.substitute("z", f);
  for (auto _ : state) benchmark::DoNotOptimize(g * h);
}
BENCHMARK(BM_poly_mul);

void BM_resultant_phi2(benchmark::State& state) {
  MultiPoly f = cubic();
  MultiPoly z = MultiPoly::variable("z", {"a", "b", "z"});
  MultiPoly f2 = f.substitute("z", f);
  MultiPoly phi2 = (f2 - z).exact_div(f - z);
  MultiPoly mult = f2.derivative("z") - MultiPoly::variable("l", {"a", "b", "z", "l"});
  for (auto _ : state) benchmark::DoNotOptimize(resultant(phi2, mult, "z"));
}
BENCHMARK(BM_resultant_phi2);

void BM_gcd_univariate(benchmark::State& state) {
  MultiPoly p = parse_poly("(t^8 - 3*t + 1)*(t^6 + 5*t^2 - 7)", {"t"});
  MultiPoly q = parse_poly("(t^8 - 3*t + 1)*(t^5 + 2)", {"t"});
  for (auto _ : state) benchmark::DoNotOptimize(poly_gcd(p, q));
}
BENCHMARK(BM_gcd_univariate);

}  // namespace

BENCHMARK_MAIN();
