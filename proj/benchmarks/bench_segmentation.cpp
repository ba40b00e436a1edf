#include <benchmark/benchmark.h>

#include <random>

#include "rgbdseg/depth_prep.hpp"
#include "rgbdseg/graphseg.hpp"
#include "rgbdseg/integral_image.hpp"
#include "rgbdseg/pipeline.hpp"
#include "rgbdseg/saliency.hpp"
#include "rgbdseg/synth.hpp"

namespace {

using namespace rgbdseg;

SynthScene make_scene(int w, int h) {
  SynthSceneSpec spec;
  spec.width = w;
  spec.height = h;
  spec.intrinsics = {525.0 * w / 640.0, 525.0 * w / 640.0, (w - 1) / 2.0, (h - 1) / 2.0};
  std::mt19937 rng(12345);
  SynthSceneSpec objects = random_scene_spec(rng, 3, 3);
  spec.objects = objects.objects;
  return synth_scene(spec);
}

WeightedGridGraph make_graph(int w, int h) {
  WeightedGridGraph g;
  g.width = w;
  g.height = h;
  std::mt19937 rng(99);
  std::uniform_real_distribution<float> weight(0.f, 1.f);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) g.edges.push_back({y * w + x, y * w + x + 1, weight(rng)});
      if (y + 1 < h) g.edges.push_back({y * w + x, (y + 1) * w + x, weight(rng)});
      if (x + 1 < w && y + 1 < h) g.edges.push_back({y * w + x, (y + 1) * w + x + 1, weight(rng)});
      if (x > 0 && y + 1 < h) g.edges.push_back({y * w + x, (y + 1) * w + x - 1, weight(rng)});
    }
  }
  return g;
}

void BM_IntegralImage(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MapF map(n, n, 1.5f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_integral(map));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_IntegralImage)->Arg(480)->Arg(960);

void BM_SmoothDepth(benchmark::State& state) {
  const SynthScene scene = make_scene(640, 480);
  const DepthPrepConfig cfg;
  const SmoothingAreaMap area = smoothing_area_map(scene.frame.depth, cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smooth_depth(scene.frame.depth, area));
  }
}
BENCHMARK(BM_SmoothDepth);

void BM_Saliency(benchmark::State& state) {
  const SynthScene scene = make_scene(640, 480);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_saliency(scene.frame.rgb, SaliencyConfig{}));
  }
}
BENCHMARK(BM_Saliency);

void BM_SegmentGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightedGridGraph g = make_graph(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(segment_graph(g, 0.0016, 50));
  }
  state.SetItemsProcessed(state.iterations() * g.edges.size());
}
BENCHMARK(BM_SegmentGraph)->Arg(320)->Arg(480)->Arg(640);

void BM_FullPipeline(benchmark::State& state) {
  const SynthScene scene = make_scene(640, 480);
  const PipelineConfig cfg = profile_rgbd_scenes();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pipeline(scene.frame, cfg));
  }
}
BENCHMARK(BM_FullPipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
