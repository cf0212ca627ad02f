// Hot-path microbenchmarks: rank over small fields, exact distance
// enumeration, and spectrum-free counting.

#include <benchmark/benchmark.h>

#include "ferro/code.hpp"
#include "ferro/construct.hpp"
#include "ferro/genericity.hpp"
#include "ferro/matrix.hpp"
#include "ferro/prng.hpp"

namespace {

using namespace ferro;

GfMatrix random_matrix(const FieldCtxPtr& ctx, std::size_t r, std::size_t c,
                       std::uint64_t trial) {
  TrialRng rng(42, trial);
  GfMatrix a(ctx, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a.set(i, j, rng.below(ctx->order()));
  return a;
}

void BM_rank(benchmark::State& state) {
  const auto ctx = make_field_of_order(state.range(0));
  const unsigned n = static_cast<unsigned>(state.range(1));
  std::vector<GfMatrix> pool;
  for (std::uint64_t t = 0; t < 64; ++t)
    pool.push_back(random_matrix(ctx, n, n, t));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pool[i++ & 63].rank());
  }
}
BENCHMARK(BM_rank)->Args({2, 8})->Args({2, 16})->Args({3, 8})->Args({256, 8});

void BM_spectrum_free(benchmark::State& state) {
  const auto ctx = make_field_of_order(state.range(0));
  const unsigned n = static_cast<unsigned>(state.range(1));
  std::vector<GfMatrix> pool;
  for (std::uint64_t t = 0; t < 64; ++t)
    pool.push_back(random_matrix(ctx, n, n, t));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pool[i++ & 63].spectrum_free());
  }
}
BENCHMARK(BM_spectrum_free)->Args({2, 4})->Args({3, 4})->Args({5, 4});

void BM_exact_distance(benchmark::State& state) {
  const auto code = construct_f1334(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_rank_distance_exact(code, 1ull << 24));
  }
}
BENCHMARK(BM_exact_distance)->Arg(2)->Arg(3)->Arg(5);

void BM_mrd_trials(benchmark::State& state) {
  const std::uint64_t q = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mrd_proportion_normalized(4, 3, 3, q, 1000, seed++, 1));
  }
}
BENCHMARK(BM_mrd_trials)->Arg(2)->Arg(3);

void BM_s_n_exact(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(s_n_exact(8, state.range(0)));
  }
}
BENCHMARK(BM_s_n_exact)->Arg(2)->Arg(11);

}  // namespace

BENCHMARK_MAIN();
