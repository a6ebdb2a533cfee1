#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "permdyn/block_systems.hpp"
#include "permdyn/catalog.hpp"
#include "permdyn/fppoly.hpp"
#include "permdyn/perm_group.hpp"
#include "permdyn/permutation.hpp"
#include "permdyn/ratpoly.hpp"
#include "permdyn/stability.hpp"

namespace {

using namespace permdyn;

// splitmix-style filler so every run benches identical inputs
std::vector<std::int64_t> pseudo_coeffs(int n, std::uint64_t seed) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(n));
  std::uint64_t x = seed;
  for (auto& v : c) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    v = static_cast<std::int64_t>((z ^ (z >> 31)) & 0x7fffffffffffffffull);
  }
  c.back() |= 1;  // keep the degree
  return c;
}

void BM_PermCompose(benchmark::State& state) {
  PermGroup m23 = catalog_group("M23");
  Permutation a = m23.generators()[0];
  Permutation b = m23.generators()[1];
  for (auto _ : state) {
    a = compose(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_PermCompose);

void BM_SchreierSims(benchmark::State& state) {
  PermGroup s8 = catalog_group("S8");
  std::vector<Permutation> gens = s8.generators();
  for (auto _ : state) {
    // order-only rebuild: chain construction without the 40320-element closure
    PermGroup g = PermGroup::generate(gens, 1);
    benchmark::DoNotOptimize(g.order());
  }
}
BENCHMARK(BM_SchreierSims);

void BM_FullCycleCensus(benchmark::State& state) {
  PermGroup g = catalog_group("S7");
  for (auto _ : state) benchmark::DoNotOptimize(full_cycle_census(g).full_cycles);
}
BENCHMARK(BM_FullCycleCensus);

void BM_VerifyBound(benchmark::State& state) {
  PermGroup g = catalog_group("S6");
  for (auto _ : state) benchmark::DoNotOptimize(verify_bound(g).violated);
}
BENCHMARK(BM_VerifyBound);

void BM_FpMulNtt(benchmark::State& state) {
  const std::uint64_t p = 99991;  // small enough for the CRT transform window
  int n = static_cast<int>(state.range(0));
  FpPoly a = fp_poly(p, pseudo_coeffs(n, 1));
  FpPoly b = fp_poly(p, pseudo_coeffs(n, 2));
  for (auto _ : state) benchmark::DoNotOptimize(fp_mul(a, b));
  state.SetComplexityN(n);
}
BENCHMARK(BM_FpMulNtt)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_FpMulWide(benchmark::State& state) {
  const std::uint64_t p = 2305843009213693951ull;  // 2^61 - 1, integer-pack path
  int n = static_cast<int>(state.range(0));
  FpPoly a = fp_poly(p, pseudo_coeffs(n, 3));
  FpPoly b = fp_poly(p, pseudo_coeffs(n, 4));
  for (auto _ : state) benchmark::DoNotOptimize(fp_mul(a, b));
}
BENCHMARK(BM_FpMulWide)->RangeMultiplier(4)->Range(256, 4096);

void BM_MulMod(benchmark::State& state) {
  const std::uint64_t p = 99991;
  int n = static_cast<int>(state.range(0));
  auto mc = pseudo_coeffs(n + 1, 5);
  mc.back() = 1;
  FpModulus m(fp_poly(p, mc));
  FpPoly a = fp_poly(p, pseudo_coeffs(n, 6));
  FpPoly b = fp_poly(p, pseudo_coeffs(n, 7));
  for (auto _ : state) benchmark::DoNotOptimize(fp_mulmod(a, b, m));
}
BENCHMARK(BM_MulMod)->RangeMultiplier(4)->Range(256, 4096);

void BM_Frobenius(benchmark::State& state) {
  const std::uint64_t p = 99991;
  int n = static_cast<int>(state.range(0));
  auto mc = pseudo_coeffs(n + 1, 8);
  mc.back() = 1;
  FpModulus m(fp_poly(p, mc));
  for (auto _ : state) benchmark::DoNotOptimize(fp_powmod(fp_x(p), p, m));
}
BENCHMARK(BM_Frobenius)->RangeMultiplier(4)->Range(256, 4096);

void BM_IsIrreducible(benchmark::State& state) {
  const std::uint64_t p = 99991;
  int n = static_cast<int>(state.range(0));
  // fixed scan until one irreducible poly of degree n turns up
  FpPoly f;
  for (std::uint64_t s = 1;; ++s) {
    auto mc = pseudo_coeffs(n + 1, s * 11);
    mc.back() = 1;
    f = fp_poly(p, mc);
    if (is_irreducible(f)) break;
  }
  for (auto _ : state) benchmark::DoNotOptimize(is_irreducible(f));
}
BENCHMARK(BM_IsIrreducible)->RangeMultiplier(4)->Range(64, 1024);

void BM_StableDepth(benchmark::State& state) {
  PolySequence seq = make_pair_sequence(rat_poly_from_string("-2 0 1"), 0);
  for (auto _ : state) {
    // 101 = 5 mod 8, so the sequence stays irreducible through all 8 levels
    benchmark::DoNotOptimize(stable_depth(seq, 101, 8).depth);
  }
}
BENCHMARK(BM_StableDepth);

void BM_DensityScan(benchmark::State& state) {
  PolySequence seq = make_pair_sequence(rat_poly_from_string("1 0 1"), 0);
  for (auto _ : state) benchmark::DoNotOptimize(density_scan(seq, 1000, 3).survival[2]);
}
BENCHMARK(BM_DensityScan);

}  // namespace

BENCHMARK_MAIN();
