#include <benchmark/benchmark.h>

#include <cmath>

#include "sldg/limiter.hpp"
#include "sldg/poisson.hpp"

namespace {

using namespace sldg;

void BM_Poisson1D(benchmark::State& st) {
  const int r = static_cast<int>(st.range(0));
  const Mesh1D m = build_mesh_1d(0.0, 4 * M_PI, 200);
  const Solution1D rho = project_1d([](double x) { return 0.5 * std::cos(0.5 * x); }, m, r);
  for (auto _ : st) benchmark::DoNotOptimize(solve_poisson_1d(rho, r));
}
BENCHMARK(BM_Poisson1D)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_Poisson2D(benchmark::State& st) {
  const int r = static_cast<int>(st.range(0)), n = static_cast<int>(st.range(1));
  const Mesh2D m = build_mesh_2d(0.0, 2 * M_PI, n, 0.0, 2 * M_PI, n);
  const Solution2D w = project_2d([](double x, double y) { return -2.0 * std::sin(x) * std::sin(y); }, m, Space::P, r);
  for (auto _ : st) benchmark::DoNotOptimize(solve_poisson_2d(w, PoissonSign::euler, r));
}
BENCHMARK(BM_Poisson2D)->ArgsProduct({{1, 2, 3}, {64, 128}})->Unit(benchmark::kMillisecond);

void BM_Limiter(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const Mesh2D m = build_mesh_2d(0.0, 1.0, 100, 0.0, 1.0, 100);
  // Steep Gaussian: many cells undershoot.
  const Solution2D u0 = project_2d(
      [](double x, double y) { return std::exp(-400.0 * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5))); }, m,
      Space::Q, k);
  for (auto _ : st) {
    st.PauseTiming();
    Solution2D u = u0;
    st.ResumeTiming();
    benchmark::DoNotOptimize(apply_positivity_limiter(u));
  }
}
BENCHMARK(BM_Limiter)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace
