// Serial reference paths against the OpenMP/FFT paths.

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "logmeans/analysis.hpp"
#include "logmeans/log_kernels.hpp"
#include "logmeans/serial_reference.hpp"
#include "logmeans/spectral.hpp"

using namespace logmeans;

namespace {

std::vector<double> points(std::size_t m) {
  std::vector<double> u(m);
  for (std::size_t k = 0; k < m; ++k) u[k] = -std::numbers::pi + 2.0 * std::numbers::pi * k / m;
  return u;
}

void BM_TabulateNorlund_Serial(benchmark::State& state) {
  const auto u = points(4096);
  std::vector<double> out(u.size());
  for (auto _ : state) {
    serial::tabulate_norlund(state.range(0), u, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_TabulateNorlund_OpenMP(benchmark::State& state) {
  const auto u = points(4096);
  std::vector<double> out(u.size());
  for (auto _ : state) {
    tabulate_norlund(state.range(0), u, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_Synthesize_Direct(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const auto f = random_real_trig({n, n}, 1);
  const auto res = default_resolution(f.degrees());
  for (auto _ : state) benchmark::DoNotOptimize(serial::synthesize_direct(f, res));
}

void BM_Synthesize_FFT(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const auto f = random_real_trig({n, n}, 1);
  const auto res = default_resolution(f.degrees());
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(f, res));
}

void BM_L1_Serial(benchmark::State& state) {
  const auto f = synthesize(random_real_trig({64}, 2), {state.range(0)});
  for (auto _ : state) benchmark::DoNotOptimize(serial::l1_norm(f));
}

void BM_L1_OpenMP(benchmark::State& state) {
  const auto f = synthesize(random_real_trig({64}, 2), {state.range(0)});
  for (auto _ : state) benchmark::DoNotOptimize(l1_norm(f));
}

void BM_Means_Serial(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const auto f = random_real_trig({n, n}, 3);
  const AxisPlan plan(AxisPlan::parse_tags("LR"), {n, n});
  const std::vector<std::size_t> order{0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(serial::apply_mixed_means(f, plan, order));
}

void BM_Means_OpenMP(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const auto f = random_real_trig({n, n}, 3);
  const AxisPlan plan(AxisPlan::parse_tags("LR"), {n, n});
  for (auto _ : state) benchmark::DoNotOptimize(apply_mixed_means(f, plan));
}

}  // namespace

BENCHMARK(BM_TabulateNorlund_Serial)->Arg(64)->Arg(1024);
BENCHMARK(BM_TabulateNorlund_OpenMP)->Arg(64)->Arg(1024);
BENCHMARK(BM_Synthesize_Direct)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Synthesize_FFT)->Arg(8)->Arg(24)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_L1_Serial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_L1_OpenMP)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Means_Serial)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Means_OpenMP)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
