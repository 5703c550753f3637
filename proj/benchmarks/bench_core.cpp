// microbenchmarks for the hot paths: factoring, fiber classification,
// integral point search and the canonical height engine.

#include <benchmark/benchmark.h>

#include "ellsurf/basechange.hpp"
#include "ellsurf/kodaira.hpp"
#include "ellsurf/mwrank.hpp"
#include "ellsurf/qtarith.hpp"
#include "ellsurf/weierstrass.hpp"

namespace {

using namespace ellsurf;

// y^2 = x^3 + t x^2 - (t+3) x + 1, the rank-jump workhorse
WeierstrassModel washington_surface() {
  WeierstrassModel m;
  m.a2 = UniPoly({0, 1});
  m.a4 = UniPoly({-3, -1});
  m.a6 = UniPoly({1});
  return m;
}

void bm_factor_disc(benchmark::State& state) {
  const auto inv = invariants(washington_surface());
  for (auto _ : state) {
    auto f = factor_q(inv.disc);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(bm_factor_disc);

void bm_classify_all(benchmark::State& state) {
  const auto m = washington_surface();
  for (auto _ : state) {
    auto rep = classify_all(m);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(bm_classify_all);

void bm_pullback_verify(benchmark::State& state) {
  const auto m = washington_surface();
  QuadraticCover cover;  // branched at 0 and infinity
  for (auto _ : state) {
    auto chk = verify_basechange(m, cover);
    benchmark::DoNotOptimize(chk);
  }
}
BENCHMARK(bm_pullback_verify);

void bm_point_search(benchmark::State& state) {
  const auto e = specialize(washington_surface(), Rational(5));
  SearchOptions opt;
  opt.height_bound = state.range(0);
  for (auto _ : state) {
    auto pts = point_search(e, opt);
    benchmark::DoNotOptimize(pts);
  }
}
BENCHMARK(bm_point_search)->Arg(100)->Arg(1000)->Arg(10000);

void bm_canonical_height(benchmark::State& state) {
  const auto e = specialize(washington_surface(), Rational(5));
  const auto pts = point_search(e, SearchOptions{200});
  // pick an affine point; the fiber at t=5 has small generators
  CurvePoint p;
  for (const auto& q : pts) {
    if (!q.infinite) {
      p = q;
      break;
    }
  }
  for (auto _ : state) {
    auto h = canonical_height(e, p);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(bm_canonical_height);

}  // namespace

BENCHMARK_MAIN();
