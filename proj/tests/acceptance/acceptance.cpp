// Acceptance suite. Each criterion prints exactly one [PASS]/[FAIL] line
// (or [SKIP] for the optional external-dataset reproduction) and the binary
// exits nonzero if any gating criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rgbdseg/boundary.hpp"
#include "rgbdseg/depth_prep.hpp"
#include "rgbdseg/graphseg.hpp"
#include "rgbdseg/integral_image.hpp"
#include "rgbdseg/pipeline.hpp"
#include "rgbdseg/synth.hpp"
#include "support/oracles.hpp"

namespace {

using namespace rgbdseg;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criterion 1: segmentation core vs naive reference ---------------------

WeightedGridGraph random_lattice(std::mt19937& rng, int w, int h) {
  WeightedGridGraph g;
  g.width = w;
  g.height = h;
  std::uniform_real_distribution<float> weight(0.f, 1.f);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto add = [&](int y, int x, int ny, int nx) {
    const float wv = unit(rng) < 0.25 ? 0.f : weight(rng);
    g.edges.push_back({y * w + x, ny * w + nx, wv});
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) add(y, x, y, x + 1);
      if (y + 1 < h) add(y, x, y + 1, x);
      if (x + 1 < w && y + 1 < h) add(y, x, y + 1, x + 1);
      if (x > 0 && y + 1 < h) add(y, x, y + 1, x - 1);
    }
  }
  return g;
}

void criterion1() {
  const auto start = Clock::now();
  std::mt19937 rng(20240101);
  std::uniform_int_distribution<int> dim(2, 12);
  std::uniform_real_distribution<double> gamma_dist(0.0, 3.0);

  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const WeightedGridGraph g = random_lattice(rng, dim(rng), dim(rng));
    const double gamma = gamma_dist(rng);
    const int min_size = trial % 4 == 0 ? 5 : 0;

    const Segmentation seg = segment_graph(g, gamma, min_size);
    const std::vector<int> got = oracles::normalize_partition(
        std::vector<int>(seg.labels.data().begin(), seg.labels.data().end()));
    const std::vector<int> expected = oracles::naive_segment(g, gamma, min_size);
    if (got != expected) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof detail, "200 random lattices, %d mismatches, %.2f s (< 10 s)",
                mismatches, elapsed);
  report(1, "segmentation matches the full-rescan reference", mismatches == 0 && elapsed < 10.0,
         detail);
}

// --- criterion 2: integral images vs naive sums -----------------------------

void criterion2() {
  std::mt19937 rng(20240202);
  std::uniform_int_distribution<int> dim(1, 16);
  std::uniform_real_distribution<float> val(0.f, 4.f);

  double max_err = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int w = dim(rng);
    const int h = dim(rng);
    MapF map(w, h);
    for (auto& v : map.data()) v = val(rng);
    const IntegralImage ii = build_integral(map);
    for (int r = 1; r <= 3; ++r) {
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const auto [sum, count] = oracles::naive_box_sum(map, y, x, r);
          const auto box = ii.box_sum(y, x, r);
          max_err = std::max(max_err, std::abs(box.sum - sum));
          if (box.count != count) max_err = 1e9;
        }
      }
    }
  }

  // Shadow-free maps: the zero-count correction must be numerically
  // identical to the plain box mean.
  double max_smooth_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 2 + trial;
    const int h = 18 - trial % 9;
    DepthMap d(w, h);
    std::uniform_real_distribution<float> depth(0.3f, 4.f);
    for (auto& v : d.data()) v = depth(rng);
    SmoothingAreaMap area(w, h);
    std::uniform_int_distribution<int> radius(0, 3);
    for (auto& r : area.data()) r = radius(rng);

    const SmoothedDepthMap smoothed = smooth_depth(d, area);
    const MapF reference = oracles::naive_box_mean(d, area);
    for (std::size_t i = 0; i < smoothed.pixel_count(); ++i) {
      max_smooth_err =
          std::max(max_smooth_err, std::abs(double(smoothed[i]) - double(reference[i])));
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "box sums max err %.2e (<= 1e-9); shadow-free smoothing max err %.2e (<= 1e-12)",
                max_err, max_smooth_err);
  report(2, "integral-image sums match naive summation", max_err <= 1e-9 && max_smooth_err <= 1e-12,
         detail);
}

// --- criterion 3: weight range property -------------------------------------

void criterion3() {
  struct ParamSet {
    const char* name;
    double k_x, k_y, k_s, k_b;
  };
  const ParamSet sets[] = {
      {"rutgers", 1.05, 1.5, 0.5, 0.66},
      {"rgbd_scenes", 7.5, 1.5, 0.5, 0.66},
      {"multi_instance", 1.2, 1.5, 0.5, 0.05},
  };

  std::mt19937 rng(20240303);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool in_range = true;
  for (const auto& ps : sets) {
    for (int i = 0; i < 100000; ++i) {
      const double h = unit(rng), d = unit(rng), s = unit(rng);
      const double bound = unit(rng) < 0.5 ? 0.0 : 1.0;
      const double w1 = weight_w1(h, d, s, ps.k_x, ps.k_y, ps.k_s);
      const double w2 = weight_w2(h, d, bound, ps.k_x, ps.k_b);
      if (!(w1 >= 0.0 && w1 <= 1.0 && w2 >= 0.0 && w2 <= 1.0)) in_range = false;
    }
  }

  bool exact = true;
  for (const auto& ps : sets) {
    if (weight_w1(0, 0, 0, ps.k_x, ps.k_y, ps.k_s) != 0.0) exact = false;
    if (weight_w1(1, 1, 1, ps.k_x, ps.k_y, ps.k_s) != 1.0) exact = false;
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "3 x 1e5 cue tuples in [0,1]: %s; w1(0)=0 and w1(1)=1 exact: %s",
                in_range ? "yes" : "NO", exact ? "yes" : "NO");
  report(3, "cost functions map cues into [0,1]", in_range && exact, detail);
}

// --- criterion 4: synthetic end-to-end detection -----------------------------

void criterion4() {
  const auto start = Clock::now();
  const PipelineConfig cfg = profile_rgbd_scenes();

  int clean_objects = 0, clean_detected = 0;
  int noisy_objects = 0, noisy_detected = 0;

  std::mt19937 rng(20240404);
  for (int i = 0; i < 20; ++i) {
    SynthSceneSpec spec = random_scene_spec(rng, 1, 4);
    spec.seed = 1000 + i;

    {
      const SynthScene scene = synth_scene(spec);
      const PipelineResult result = run_pipeline(scene.frame, cfg);
      const FrameEval eval = evaluate_frame(result.regions, result.verdicts, scene.gt);
      clean_objects += eval.objects;
      clean_detected += eval.detected;
    }
    {
      SynthSceneSpec noisy = spec;
      noisy.noise_sigma_m = 0.005;
      noisy.hole_fraction = 0.01;
      const SynthScene scene = synth_scene(noisy);
      const PipelineResult result = run_pipeline(scene.frame, cfg);
      const FrameEval eval = evaluate_frame(result.regions, result.verdicts, scene.gt);
      noisy_objects += eval.objects;
      noisy_detected += eval.detected;
    }
  }
  const double elapsed = seconds_since(start);
  const double noisy_rate = 100.0 * noisy_detected / noisy_objects;
  const bool pass =
      clean_detected == clean_objects && noisy_rate >= 90.0 && elapsed < 60.0;
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "clean %d/%d (need all); noisy %d/%d = %.1f%% (need >= 90%%); %.1f s (< 60 s)",
                clean_detected, clean_objects, noisy_detected, noisy_objects, noisy_rate, elapsed);
  report(4, "synthetic scenes detected at 70% overlap", pass, detail);
}

// --- criterion 5: contact angles and texture-edge rejection ------------------

void criterion5() {
  // Box on the plane: median contact angle along the silhouette base.
  SynthSceneSpec spec;
  SynthObjectSpec box;
  box.kind = SynthObjectSpec::Kind::kBox;
  box.x = 0.02;
  box.y = 1.05;
  box.size_x = 0.14;
  box.size_y = 0.10;
  box.height = 0.12;
  box.color = {205, 65, 60};
  spec.objects.push_back(box);
  const SynthScene scene = synth_scene(spec);

  const DepthPrepConfig dp;
  const BoundaryParams bp;

  // The angle check runs on the analytic render: the contact line lies
  // between the last object row and the first ground row, so both flanking
  // pixels count as base edge pixels.
  const DepthMap& depth = scene.frame.depth;
  const MaskU8& mask = scene.gt.masks[0];
  std::vector<double> base_angles;
  for (int y = 1; y + 2 < mask.height(); ++y) {
    for (int x = 1; x + 1 < mask.width(); ++x) {
      // silhouette base: lowest mask rows where depth continues onto the
      // supporting plane
      if (!mask.at(y, x) || mask.at(y + 1, x)) continue;
      if (depth.missing(y, x) || depth.missing(y + 1, x)) continue;
      if (std::abs(depth.at(y + 1, x) - depth.at(y, x)) > 0.01f) continue;
      for (int row : {y, y + 1}) {
        const auto theta =
            signed_contact_angle_deg(depth, scene.frame.intrinsics, row, x, 2, bp.eps_e);
        if (theta) base_angles.push_back(*theta);
      }
    }
  }
  bool median_ok = false;
  double median = 0.0;
  if (base_angles.size() >= 10) {
    std::sort(base_angles.begin(), base_angles.end());
    const std::size_t n = base_angles.size();
    median = n % 2 ? base_angles[n / 2]
                   : 0.5 * (base_angles[n / 2 - 1] + base_angles[n / 2]);
    median_ok = median >= 85.0 && median <= 95.0;
  }

  // Textured flat plane: virtually all detected edges must classify as
  // texture, not depth boundaries. Steeper pitch keeps the whole visible
  // plane inside the gradient threshold.
  SynthSceneSpec plane;
  plane.camera_pitch_deg = 50.0;
  const SynthScene plane_scene = synth_scene(plane);
  const SmoothedDepthMap plane_ds =
      smooth_depth(plane_scene.frame.depth, smoothing_area_map(plane_scene.frame.depth, dp));
  const EdgeMap edges = scharr_canny(plane_scene.frame.rgb, bp);
  const MaskU8 eb = depth_boundary_map(edges, plane_ds, bp);

  long edge_count = 0, texture_count = 0;
  for (std::size_t i = 0; i < edges.edges.pixel_count(); ++i) {
    if (!edges.edges[i]) continue;
    if (plane_ds[i] == DepthMap::kMissing) continue;
    ++edge_count;
    if (!eb[i]) ++texture_count;
  }
  const double texture_rate = edge_count > 0 ? 100.0 * texture_count / edge_count : 0.0;
  const bool texture_ok = texture_rate >= 95.0;

  char detail[200];
  std::snprintf(detail, sizeof detail,
                "base-edge median theta %.1f deg over %zu px (in [85,95]); "
                "texture edges flat: %.1f%% of %ld (need >= 95%%)",
                median, base_angles.size(), texture_rate, edge_count);
  report(5, "contact-angle geometry and texture rejection", median_ok && texture_ok, detail);
}

// --- criterion 6: frame-time budget and asymptotic scaling -------------------

double time_segment_graph(const WeightedGridGraph& g) {
  double best = 1e9;
  for (int i = 0; i < 3; ++i) {
    const auto start = Clock::now();
    const Segmentation seg = segment_graph(g, 0.0016, 50);
    best = std::min(best, seconds_since(start));
    if (seg.region_count < 0) std::abort();  // keep the call alive
  }
  return best;
}

void criterion6() {
  std::mt19937 rng(20240606);
  SynthSceneSpec spec = random_scene_spec(rng, 3, 3);
  spec.seed = 7;
  const SynthScene scene = synth_scene(spec);
  const PipelineConfig cfg = profile_rgbd_scenes();

  double frame_best = 1e9;
  for (int i = 0; i < 3; ++i) {
    const auto start = Clock::now();
    const PipelineResult result = run_pipeline(scene.frame, cfg);
    frame_best = std::min(frame_best, seconds_since(start));
    if (result.segmentation.region_count <= 0) std::abort();
  }

  // Doubling the pixel count may grow partitioning time by at most 2.4x.
  std::mt19937 graph_rng(20240607);
  const WeightedGridGraph g1 = random_lattice(graph_rng, 640, 480);
  const WeightedGridGraph g2 = random_lattice(graph_rng, 905, 679);  // ~2x pixels
  const double t1 = time_segment_graph(g1);
  const double t2 = time_segment_graph(g2);
  const double ratio = t2 / t1;

  const bool pass = frame_best <= 1.5 && ratio <= 2.4;
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "640x480 frame %.3f s (<= 1.5 s); partition scaling x%.2f for 2x pixels (<= 2.4)",
                frame_best, ratio);
  report(6, "single-thread frame budget and O(N log N) scaling", pass, detail);
}

// --- criterion 8: determinism ------------------------------------------------

void criterion8() {
  std::mt19937 rng(20240808);
  SynthSceneSpec spec = random_scene_spec(rng, 2, 3);
  spec.seed = 21;
  const SynthScene scene = synth_scene(spec);
  const PipelineConfig cfg = profile_rgbd_scenes();

  const PipelineResult a = run_pipeline(scene.frame, cfg);
  const PipelineResult b = run_pipeline(scene.frame, cfg);
  const bool rerun_identical = a.segmentation.labels == b.segmentation.labels;

  // Frame-level worker pools must not change per-frame results.
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "rgbdseg_acceptance_pool";
  fs::remove_all(dir);
  std::mt19937 ds_rng(22);
  for (int i = 0; i < 4; ++i) {
    SynthSceneSpec s = random_scene_spec(ds_rng, 1, 2);
    s.frame_id = "frame" + std::to_string(i);
    s.seed = 500 + i;
    write_scene_dataset(synth_scene(s), dir.string());
  }
  const EvalResult serial = evaluate_dataset(dir.string(), cfg, 0.70, OverlapMetric::kRecall, 1);
  const EvalResult pooled = evaluate_dataset(dir.string(), cfg, 0.70, OverlapMetric::kRecall, 4);
  bool pool_identical = serial.frames.size() == pooled.frames.size();
  if (pool_identical) {
    for (std::size_t i = 0; i < serial.frames.size(); ++i) {
      if (serial.frames[i].detected != pooled.frames[i].detected ||
          serial.frames[i].objects != pooled.frames[i].objects) {
        pool_identical = false;
      }
    }
  }
  fs::remove_all(dir);

  char detail[160];
  std::snprintf(detail, sizeof detail, "rerun label maps identical: %s; pool sizes 1 vs 4 agree: %s",
                rerun_identical ? "yes" : "NO", pool_identical ? "yes" : "NO");
  report(8, "bit-identical results across runs and worker pools", rerun_identical && pool_identical,
         detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  std::printf(
      "[SKIP] criterion 7: dataset reproduction — optional, needs the external RGB-D datasets; "
      "not a gating criterion (see README)\n");
  criterion8();

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all gating criteria passed\n");
  return 0;
}
