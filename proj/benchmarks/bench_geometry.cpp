#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sldg/nonsplit2d.hpp"
#include "sldg/upstream.hpp"

namespace {

using namespace sldg;

std::vector<std::vector<Piece>> random_quads(int count, double size) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3), shift(0.0, 50.0);
  std::vector<std::vector<Piece>> out;
  for (int t = 0; t < count; ++t) {
    const double ox = shift(rng), oy = shift(rng);
    Point c[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    std::vector<Piece> chain;
    for (Point& p : c) p = {ox + size * (p.x + jitter(rng)), oy + size * (p.y + jitter(rng))};
    for (int e = 0; e < 4; ++e) chain.push_back(line_piece(c[e], c[(e + 1) % 4]));
    out.push_back(chain);
  }
  return out;
}

// Upstream quadrilaterals about one cell in size, as at moderate CFL.
void BM_ClipQuad(benchmark::State& st) {
  const auto quads = random_quads(256, 1.0);
  ClipWorkspace ws;
  size_t i = 0;
  for (auto _ : st) {
    clip_chain(quads[i++ % quads.size()], 64, 64, ws);
    benchmark::DoNotOptimize(ws.nregions);
  }
}
BENCHMARK(BM_ClipQuad);

void BM_RegionMoments(benchmark::State& st) {
  const int D = static_cast<int>(st.range(0));
  const auto quads = random_quads(64, 0.5);
  std::vector<SubRegion> regions;
  for (const auto& q : quads)
    for (const SubRegion& r : clip_chain(q, 64, 64)) regions.push_back(r);
  double M[49];
  size_t i = 0;
  for (auto _ : st) {
    const SubRegion& r = regions[i++ % regions.size()];
    region_moments(r.boundary, r.lx, r.ly, D, M);
    benchmark::DoNotOptimize(M[0]);
  }
}
BENCHMARK(BM_RegionMoments)->Arg(2)->Arg(4);

}  // namespace
