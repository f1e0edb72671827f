// One time step of each transport driver on a smooth periodic problem.

#include <benchmark/benchmark.h>

#include <cmath>

#include "sldg/nonsplit2d.hpp"
#include "sldg/sldg1d.hpp"
#include "sldg/split2d.hpp"

namespace {

using namespace sldg;

double bump(double x, double y) { return std::sin(x) * std::cos(y) + 2.0; }

Vec2 swirl(double x, double y, double t) {
  const double g = std::cos(M_PI * t / 1.5) * M_PI;
  const double sx = std::sin(0.5 * x), sy = std::sin(0.5 * y);
  return {sx * sx * std::sin(y) * g, -sy * sy * std::sin(x) * g};
}

void BM_Step1D(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const Mesh1D m = build_mesh_1d(0.0, 2 * M_PI, 1000);
  const Solution1D u = project_1d([](double x) { return std::sin(x); }, m, k);
  const LineVelocity a = LineVelocity::constant(1.0);
  for (auto _ : st) benchmark::DoNotOptimize(step_1d(u, a, 2.5 * m.dx, 1));
  st.SetItemsProcessed(st.iterations() * m.n);
}
BENCHMARK(BM_Step1D)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_StrangStep(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0)), n = static_cast<int>(st.range(1));
  const Mesh2D m = build_mesh_2d(-M_PI, M_PI, n, -M_PI, M_PI, n);
  const Solution2D u = project_2d(bump, m, Space::Q, k);
  const Scalar2D a = [](double x, double y, double t) { return swirl(x, y, t).x; };
  const Scalar2D b = [](double x, double y, double t) { return swirl(x, y, t).y; };
  for (auto _ : st) benchmark::DoNotOptimize(strang_step(u, a, b, 0.0, 0.02, 1));
  st.SetItemsProcessed(st.iterations() * m.ncells());
}
BENCHMARK(BM_StrangStep)->ArgsProduct({{1, 2}, {40, 80}})->Unit(benchmark::kMillisecond);

void BM_NonsplitStep(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0)), n = static_cast<int>(st.range(1));
  const UpstreamMode mode = st.range(2) ? UpstreamMode::qc : UpstreamMode::quad;
  const Mesh2D m = build_mesh_2d(-M_PI, M_PI, n, -M_PI, M_PI, n);
  const Solution2D u = project_2d(bump, m, Space::P, k);
  const VelocityField2D f = VelocityField2D::analytic(swirl);
  for (auto _ : st) benchmark::DoNotOptimize(step_2d(u, f, 0.02, {mode, 1}));
  st.SetItemsProcessed(st.iterations() * m.ncells());
}
BENCHMARK(BM_NonsplitStep)
    ->Args({1, 40, 0})
    ->Args({1, 80, 0})
    ->Args({2, 40, 0})
    ->Args({2, 40, 1})
    ->Args({2, 80, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace
