#include "qfmod/blockdiag.hpp"
#include "qfmod/counting.hpp"
#include "qfmod/sampling.hpp"
#include "qfmod/sqroots.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace qfmod;

// Dense symmetric form with unit diagonal so every prime sees a mix of orders.
QuadraticForm dense_form(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g{seed};
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Integer v{static_cast<unsigned long>(g() % 1000)};
      m(i, j) = v;
      m(j, i) = v;
    }
  return QuadraticForm{std::move(m)};
}

const Integer kBigPrime{"1000000007"};

void BM_BlockDiagonalize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PrimePower pp{2UL, 64};
  const auto q = dense_form(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(block_diagonalize(q, pp));
}
BENCHMARK(BM_BlockDiagonalize)->RangeMultiplier(2)->Range(2, 32);

void BM_CountOddByExponent(benchmark::State& state) {
  const PrimePower pp{kBigPrime, static_cast<Exponent>(state.range(0))};
  const auto q = dense_form(6, 2);
  for (auto _ : state) benchmark::DoNotOptimize(count_form(q, pp, Integer{12345}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountOddByExponent)->RangeMultiplier(2)->Range(1, 64)->Complexity();

void BM_CountTwoByExponent(benchmark::State& state) {
  const PrimePower pp{2UL, static_cast<Exponent>(state.range(0))};
  const auto q = dense_form(6, 3);
  for (auto _ : state) benchmark::DoNotOptimize(count_form(q, pp, Integer{12345}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountTwoByExponent)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_SampleAfterSetup(benchmark::State& state) {
  const PrimePower pp{kBigPrime, static_cast<Exponent>(state.range(0))};
  const auto q = dense_form(4, 4);
  FormSampler sampler{q, pp};
  RandomSource rng{5};
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(Integer{12345}, RepKind::Primitive, rng));
}
BENCHMARK(BM_SampleAfterSetup)->RangeMultiplier(2)->Range(1, 32);

void BM_SampleTwoAdic(benchmark::State& state) {
  const PrimePower pp{2UL, static_cast<Exponent>(state.range(0))};
  const auto q = dense_form(4, 6);
  FormSampler sampler{q, pp};
  RandomSource rng{7};
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(Integer{12344}, RepKind::Any, rng));
}
BENCHMARK(BM_SampleTwoAdic)->RangeMultiplier(2)->Range(4, 32);

void BM_LiftSqrtOdd(benchmark::State& state) {
  const PrimePower pp{kBigPrime, static_cast<Exponent>(state.range(0))};
  RandomSource rng{8};
  const Integer t = pp.reduce(Integer{"98765432123456789"} * Integer{"98765432123456789"});
  for (auto _ : state) benchmark::DoNotOptimize(lift_sqrt_odd(pp, t, rng));
}
BENCHMARK(BM_LiftSqrtOdd)->RangeMultiplier(4)->Range(1, 256);

void BM_SqrtMod2k(benchmark::State& state) {
  const auto k = static_cast<Exponent>(state.range(0));
  const Integer t = mod(Integer{"98765432123456789"} * Integer{"98765432123456789"}, ipow(Integer{2}, k));
  for (auto _ : state) benchmark::DoNotOptimize(sqrt_unit_mod_2k(k, t));
}
BENCHMARK(BM_SqrtMod2k)->RangeMultiplier(4)->Range(4, 1024);

void BM_SampleSplitLargePrime(benchmark::State& state) {
  const PrimePower pp{kBigPrime, 4};
  RandomSource rng{9};
  SamplerStats stats;
  const PkSymbol plus{Order{0}, 1};
  const PkSymbol minus{Order{0}, -1};
  for (auto _ : state) benchmark::DoNotOptimize(sample_split(pp, Integer{3}, plus, minus, rng, &stats));
  state.counters["rejection_rate"] = stats.split_rejection_rate();
}
BENCHMARK(BM_SampleSplitLargePrime);

}  // namespace

BENCHMARK_MAIN();
