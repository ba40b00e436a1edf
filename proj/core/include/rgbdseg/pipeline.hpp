#pragma once

#include <string>
#include <vector>

#include "rgbdseg/boundary.hpp"
#include "rgbdseg/config.hpp"
#include "rgbdseg/graphseg.hpp"
#include "rgbdseg/io.hpp"
#include "rgbdseg/postproc.hpp"

namespace rgbdseg {

struct StageTiming {
  std::string name;
  double seconds = 0.0;
};

struct PipelineResult {
  Segmentation segmentation;
  std::vector<Region> regions;
  std::vector<RegionStats> stats;
  std::vector<RegionVerdict> verdicts;

  WeightMode mode_used = WeightMode::kW2;  // resolved, never auto
  bool inpainted = false;
  ShadowStats shadow;

  SmoothedDepthMap smoothed_depth;  // map the graph was built on
  MapF saliency_map;                // populated in w1 mode
  EdgeClassification boundaries;    // populated in w2 mode

  std::vector<StageTiming> timings;
  double total_seconds = 0.0;

  std::vector<int> accepted_indices() const;
};

/// Full pass over one frame: shadow-aware smoothing, cue preparation for
/// the selected cost function, graph partitioning, and region rejection.
/// Deterministic: identical frame and config give an identical label map.
PipelineResult run_pipeline(const FramePair& frame, const PipelineConfig& cfg);

// --- evaluation harness ----------------------------------------------------

enum class OverlapMetric { kRecall, kIoU };

OverlapMetric metric_from_string(const std::string& s);

struct ObjectMatch {
  int object_id = -1;
  int region_index = -1;  // index into the accepted regions list
  double overlap = 0.0;
  bool detected = false;
};

struct FrameEval {
  std::string frame_id;
  std::vector<ObjectMatch> matches;  // one per annotated object
  int objects = 0;
  int detected = 0;
  double seconds = 0.0;
};

/// Greedy one-to-one matching by descending overlap. An object counts as
/// detected when its matched accepted region covers more than `threshold`
/// of the object pixels (or of the union, with the IoU metric).
FrameEval evaluate_frame(const std::vector<Region>& regions,
                         const std::vector<RegionVerdict>& verdicts, const GroundTruth& gt,
                         double threshold = 0.70,
                         OverlapMetric metric = OverlapMetric::kRecall);

struct EvalResult {
  std::vector<FrameEval> frames;
  int total_objects = 0;
  int total_detected = 0;
  double mean_frame_seconds = 0.0;

  double detection_rate_percent() const {
    return total_objects > 0 ? 100.0 * total_detected / total_objects : 0.0;
  }
};

/// Frame ids present in a dataset directory (rgb/<id>.png with a matching
/// depth/<id>.png), sorted.
std::vector<std::string> dataset_frame_ids(const std::string& dataset_dir);

FramePair load_dataset_frame(const std::string& dataset_dir, const std::string& frame_id);

/// Runs the pipeline over every frame of the dataset. jobs > 1 processes
/// frames in a worker pool; per-frame results are independent of the pool
/// size.
EvalResult evaluate_dataset(const std::string& dataset_dir, const PipelineConfig& cfg,
                            double threshold = 0.70,
                            OverlapMetric metric = OverlapMetric::kRecall, int jobs = 1);

}  // namespace rgbdseg
