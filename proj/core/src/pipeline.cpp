#include "rgbdseg/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <stdexcept>
#include <thread>

#include "rgbdseg/saliency.hpp"

namespace rgbdseg {

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& out) : out_(out) {}

  template <typename F>
  auto run(const char* name, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(name, start);
    } else {
      auto result = f();
      record(name, start);
      return result;
    }
  }

 private:
  void record(const char* name, std::chrono::steady_clock::time_point start) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    out_.push_back({name, elapsed.count()});
  }

  std::vector<StageTiming>& out_;
};

}  // namespace

std::vector<int> PipelineResult::accepted_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    if (verdicts[i].accepted) out.push_back(static_cast<int>(i));
  }
  return out;
}

PipelineResult run_pipeline(const FramePair& frame, const PipelineConfig& cfg) {
  if (frame.rgb.width() != frame.depth.width() || frame.rgb.height() != frame.depth.height()) {
    throw std::invalid_argument("run_pipeline: unregistered frame pair");
  }
  const auto t0 = std::chrono::steady_clock::now();

  PipelineResult result;
  StageClock clock(result.timings);

  const SmoothingAreaMap area =
      clock.run("smoothing_area", [&] { return smoothing_area_map(frame.depth, cfg.depth_prep); });
  result.smoothed_depth = clock.run("smooth_depth", [&] { return smooth_depth(frame.depth, area); });

  result.shadow = clock.run("shadow_stats", [&] { return shadow_stats(frame.depth); });

  WeightMode mode = cfg.seg.weight_mode;
  if (mode == WeightMode::kAuto) {
    const bool shadow_heavy = result.shadow.shadow_fraction > cfg.depth_prep.shadow_fraction_w1 ||
                              result.shadow.largest_hole_area > cfg.depth_prep.max_hole_area;
    mode = shadow_heavy ? WeightMode::kW1 : WeightMode::kW2;
  }
  result.mode_used = mode;

  if (mode == WeightMode::kW2) {
    result.smoothed_depth = clock.run("inpaint", [&] {
      return inpaint_small_holes(result.smoothed_depth, cfg.depth_prep.max_hole_area,
                                 cfg.depth_prep.inpaint_tol_m);
    });
    result.inpainted = true;
    result.boundaries = clock.run("boundary", [&] {
      return classify_boundaries(frame.rgb, result.smoothed_depth, frame.intrinsics,
                                 cfg.boundary);
    });
  } else {
    result.saliency_map = clock.run("saliency", [&] {
      return power_law(compute_saliency(frame.rgb, cfg.saliency));
    });
  }

  const ImageHSV hsv = clock.run("rgb_to_hsv", [&] { return rgb_to_hsv(frame.rgb); });

  FrameCues cues;
  cues.hsv = &hsv;
  cues.depth = &result.smoothed_depth;
  cues.saliency = mode == WeightMode::kW1 ? &result.saliency_map : nullptr;
  cues.boundary = mode == WeightMode::kW2 ? &result.boundaries.final_boundary : nullptr;

  const WeightedGridGraph graph = clock.run(
      "build_graph", [&] { return build_grid_graph(cues, cfg.seg, cfg.depth_prep.d_max_m, mode); });

  result.segmentation = clock.run(
      "segment", [&] { return segment_graph(graph, cfg.seg.gamma, cfg.seg.min_region_size); });

  clock.run("postprocess", [&] {
    result.regions = extract_regions(result.segmentation);
    result.stats.reserve(result.regions.size());
    for (const Region& r : result.regions) {
      result.stats.push_back(
          compute_region_stats(r, frame.rgb.width(), hsv, result.smoothed_depth));
    }
    result.verdicts = reject_regions(result.stats, cfg.rejection, result.inpainted);
  });

  const std::chrono::duration<double> total = std::chrono::steady_clock::now() - t0;
  result.total_seconds = total.count();
  return result;
}

OverlapMetric metric_from_string(const std::string& s) {
  if (s == "overlap") return OverlapMetric::kRecall;
  if (s == "iou") return OverlapMetric::kIoU;
  throw std::invalid_argument("unknown metric: " + s);
}

FrameEval evaluate_frame(const std::vector<Region>& regions,
                         const std::vector<RegionVerdict>& verdicts, const GroundTruth& gt,
                         double threshold, OverlapMetric metric) {
  FrameEval eval;
  eval.objects = gt.object_count();
  eval.matches.resize(gt.object_count());
  for (int o = 0; o < gt.object_count(); ++o) eval.matches[o].object_id = gt.object_ids[o];
  if (regions.empty() || gt.object_count() == 0) return eval;

  struct Candidate {
    double score;
    int region;
    int object;
  };
  std::vector<Candidate> candidates;

  for (int o = 0; o < gt.object_count(); ++o) {
    const MaskU8& mask = gt.masks[o];
    std::size_t mask_size = 0;
    for (std::size_t i = 0; i < mask.pixel_count(); ++i) mask_size += mask[i] ? 1 : 0;
    if (mask_size == 0) continue;

    for (std::size_t r = 0; r < regions.size(); ++r) {
      if (!verdicts[r].accepted) continue;
      std::size_t inter = 0;
      for (std::int32_t p : regions[r].pixels) inter += mask[p] ? 1 : 0;
      if (inter == 0) continue;
      double score;
      if (metric == OverlapMetric::kRecall) {
        score = static_cast<double>(inter) / static_cast<double>(mask_size);
      } else {
        const std::size_t uni = regions[r].pixels.size() + mask_size - inter;
        score = static_cast<double>(inter) / static_cast<double>(uni);
      }
      candidates.push_back({score, static_cast<int>(r), o});
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.object != b.object) return a.object < b.object;
    return a.region < b.region;
  });

  std::vector<bool> region_used(regions.size(), false);
  std::vector<bool> object_used(gt.object_count(), false);
  for (const Candidate& c : candidates) {
    if (region_used[c.region] || object_used[c.object]) continue;
    region_used[c.region] = true;
    object_used[c.object] = true;
    ObjectMatch& m = eval.matches[c.object];
    m.region_index = c.region;
    m.overlap = c.score;
    m.detected = c.score > threshold;
    if (m.detected) ++eval.detected;
  }
  return eval;
}

std::vector<std::string> dataset_frame_ids(const std::string& dataset_dir) {
  namespace fs = std::filesystem;
  const fs::path rgb_dir = fs::path(dataset_dir) / "rgb";
  if (!fs::is_directory(rgb_dir)) throw IoError("no rgb/ directory under " + dataset_dir);

  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(rgb_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".png") continue;
    const std::string id = entry.path().stem().string();
    if (fs::exists(fs::path(dataset_dir) / "depth" / (id + ".png"))) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

FramePair load_dataset_frame(const std::string& dataset_dir, const std::string& frame_id) {
  namespace fs = std::filesystem;
  const fs::path base(dataset_dir);
  const fs::path intr = base / "intrinsics.txt";
  return load_frame((base / "rgb" / (frame_id + ".png")).string(),
                    (base / "depth" / (frame_id + ".png")).string(),
                    fs::exists(intr) ? intr.string() : std::string{});
}

EvalResult evaluate_dataset(const std::string& dataset_dir, const PipelineConfig& cfg,
                            double threshold, OverlapMetric metric, int jobs) {
  const std::vector<std::string> ids = dataset_frame_ids(dataset_dir);
  EvalResult result;
  result.frames.resize(ids.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ids.size()) break;
      const FramePair frame = load_dataset_frame(dataset_dir, ids[i]);
      const GroundTruth gt =
          load_ground_truth((std::filesystem::path(dataset_dir) / "gt").string(), ids[i]);
      const PipelineResult pr = run_pipeline(frame, cfg);
      FrameEval fe = evaluate_frame(pr.regions, pr.verdicts, gt, threshold, metric);
      fe.frame_id = ids[i];
      fe.seconds = pr.total_seconds;
      result.frames[i] = std::move(fe);
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int n = std::min<int>(jobs, static_cast<int>(ids.size()));
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  double time_sum = 0.0;
  for (const FrameEval& fe : result.frames) {
    result.total_objects += fe.objects;
    result.total_detected += fe.detected;
    time_sum += fe.seconds;
  }
  result.mean_frame_seconds = ids.empty() ? 0.0 : time_sum / ids.size();
  return result;
}

}  // namespace rgbdseg
