#include <benchmark/benchmark.h>

#include <random>

#include "glyphga/deviation.hpp"
#include "glyphga/extract.hpp"
#include "glyphga/genetic.hpp"
#include "glyphga/render.hpp"
#include "glyphga/synthetic.hpp"

using namespace glyphga;

namespace {

const Params kP;

Glyph extracted(char32_t letter, int style) {
  const Glyph ideal = letter_styles(letter, kP)[style];
  return extract_graph(normalize_raster(thin(render_glyph(ideal, kP)), kP).first, kP);
}

void BM_ExtractGraph(benchmark::State& state) {
  const BinaryRaster img = normalize_raster(thin(render_glyph(letter_styles(U'B', kP)[0], kP)), kP).first;
  for (auto _ : state) benchmark::DoNotOptimize(extract_graph(img, kP));
}
BENCHMARK(BM_ExtractGraph);

void BM_Thin(benchmark::State& state) {
  const BinaryRaster img = render_glyph(letter_styles(U'W', kP)[0], kP);
  for (auto _ : state) benchmark::DoNotOptimize(thin(img));
}
BENCHMARK(BM_Thin);

void BM_GraphDeviation(benchmark::State& state) {
  const Glyph a = extracted(U'B', 0);
  const Glyph b = extracted(U'R', 0);
  for (auto _ : state) benchmark::DoNotOptimize(graph_deviation(a, b, kP));
}
BENCHMARK(BM_GraphDeviation);

void BM_Crossover(benchmark::State& state) {
  const Glyph a = extracted(U'B', 0);
  const Glyph b = extracted(U'B', 1);
  std::mt19937_64 rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(crossover(a, b, kP, rng));
}
BENCHMARK(BM_Crossover);

void BM_EvolvePool(benchmark::State& state) {
  const Glyph a = extracted(U'B', 0);
  const Glyph b = extracted(U'B', 1);
  const Glyph input = extracted(U'B', 2);
  Params p = kP;
  p.ga_generations = 4;
  p.pool_cap = 8;
  for (auto _ : state) {
    std::mt19937_64 rng(1);
    benchmark::DoNotOptimize(evolve_pool({a, b}, input, p, rng));
  }
}
BENCHMARK(BM_EvolvePool);

}  // namespace

BENCHMARK_MAIN();
