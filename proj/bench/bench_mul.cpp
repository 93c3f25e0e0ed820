// Serial reference product against the OpenMP product on dense series.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "hasse/series_ops.hpp"
#include "hasse/trunc_series.hpp"
#include "hasse/weierstrass.hpp"

using namespace hasse;

namespace {

Series dense(const PrimeField& fp, std::size_t n, std::uint32_t prec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> c(0, fp.characteristic() - 1);
  Series s(fp, n, prec);
  for (const auto& a : multi_indices_up_to(n, prec - 1)) s.add_term(a, {c(rng)});
  return s;
}

void args(benchmark::internal::Benchmark* b) {
  for (int n : {2, 3}) {
    for (int prec : {16, 24, 32}) b->Args({n, prec});
  }
}

void BM_mul_serial(benchmark::State& state) {
  const PrimeField fp(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto prec = static_cast<std::uint32_t>(state.range(1));
  const auto f = dense(fp, n, prec, 1), g = dense(fp, n, prec, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul_serial(f, g));
  state.counters["terms"] = static_cast<double>(f.size());
}

void BM_mul_openmp(benchmark::State& state) {
  const PrimeField fp(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto prec = static_cast<std::uint32_t>(state.range(1));
  const auto f = dense(fp, n, prec, 1), g = dense(fp, n, prec, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul(f, g));
  state.counters["terms"] = static_cast<double>(f.size());
  state.counters["threads"] = omp_get_max_threads();
}

void BM_weierstrass_divide(benchmark::State& state) {
  const PrimeField fp(2);
  const auto prec = static_cast<std::uint32_t>(state.range(0));
  auto g = dense(fp, 2, prec, 3);
  g = sub(g, restrict_to_axis(g, 1));
  g.add_term(MultiIndex{0, 1}, fp.one());
  const auto f = dense(fp, 2, prec, 4);
  for (auto _ : state) benchmark::DoNotOptimize(weierstrass_divide(f, g));
}

}  // namespace

BENCHMARK(BM_mul_serial)->Apply(args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mul_openmp)->Apply(args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_weierstrass_divide)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
