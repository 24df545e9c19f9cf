#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "twist/aperture.hpp"
#include "twist/kernels.hpp"

using namespace twist;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_KirchhoffSum(benchmark::State& st) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-200e-9, 200e-9);
  std::vector<kernels::Source> src(static_cast<size_t>(st.range(1)));
  for (auto& s : src) s = {u(rng), u(rng), {1.0, 0.5}};
  const Grid2D targets = Grid2D::centered(64, 0.5e-6);
  const kernels::KirchhoffParams p{1.7e12, 1.7e12, 0.2};
  std::vector<std::complex<double>> out(64 * 64);
  for (auto _ : st) {
    kernels::kirchhoff_sum(src, targets, p, out.data(), exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(1) * 64 * 64);
}

void BM_DriftPhase(benchmark::State& st) {
  const int n = static_cast<int>(st.range(1));
  std::vector<std::complex<double>> spec(static_cast<size_t>(n) * n, {1.0, 0.0});
  for (auto _ : st) {
    kernels::drift_phase(spec.data(), n, n, 0.3, 0.3, exec_of(st));
    benchmark::DoNotOptimize(spec.data());
  }
  st.SetItemsProcessed(st.iterations() * n * n);
}

void BM_SampleMask(benchmark::State& st) {
  const int n = static_cast<int>(st.range(1));
  const Aperture ap = TriangleAperture::equilateral(400e-9, 0.0, {});
  const Grid2D g = Grid2D::centered(n, 1e-6 / n);
  std::vector<double> mask(static_cast<size_t>(n) * n);
  for (auto _ : st) {
    kernels::sample_mask(ap, g, 0.0, 4, mask.data(), exec_of(st));
    benchmark::DoNotOptimize(mask.data());
  }
  st.SetItemsProcessed(st.iterations() * n * n);
}

}  // namespace

BENCHMARK(BM_KirchhoffSum)->ArgsProduct({{0, 1}, {256, 2048}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DriftPhase)->ArgsProduct({{0, 1}, {512, 2048}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleMask)->ArgsProduct({{0, 1}, {256, 1024}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
