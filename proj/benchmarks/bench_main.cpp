#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "gcache/channel.hpp"
#include "gcache/combinatorics.hpp"
#include "gcache/delivery.hpp"
#include "gcache/scheme_params.hpp"

namespace {

void BM_Binomial(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(gcache::binomial(n, n / 2));
}
BENCHMARK(BM_Binomial)->Arg(100)->Arg(1000)->Arg(10000);

void BM_EffectiveK(benchmark::State& state) {
  const gcache::BigInt s_max = gcache::parse_big("1e9");
  for (auto _ : state) {
    benchmark::DoNotOptimize(gcache::effective_K(gcache::Rational(1, 20), s_max, state.range(0)));
  }
}
BENCHMARK(BM_EffectiveK)->Arg(1)->Arg(4)->Arg(16);

void BM_ZeroForcing(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto channel = gcache::draw_channel(L, L, 7);
  gcache::CMatrix out;
  for (auto _ : state) {
    gcache::zero_forcing_precoder(channel.H, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ZeroForcing)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_RunDelivery(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const int L = static_cast<int>(state.range(1));
  std::vector<int> requests(static_cast<std::size_t>(K));
  std::iota(requests.begin(), requests.end(), 1);
  gcache::DeliveryOptions options;
  options.keep_records = false;
  for (auto _ : state) {
    auto report = gcache::run_delivery(K, L, gcache::Rational(3, 10), K, requests, 1, options);
    benchmark::DoNotOptimize(report.max_error);
  }
}
BENCHMARK(BM_RunDelivery)->Args({20, 1})->Args({50, 5})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
