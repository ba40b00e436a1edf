#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rgbdseg/depth_prep.hpp"
#include "rgbdseg/image.hpp"

namespace rgbdseg {

enum class WeightMode { kW1, kW2, kAuto };

const char* to_string(WeightMode mode);
WeightMode weight_mode_from_string(const std::string& s);

struct SegParams {
  double gamma = 0.0016;     // region-size scale constant
  double k_dv = 4.5;         // HSV value weight
  double k_ds = 0.1;         // HSV saturation weight
  double k_x = 7.5;          // depth cue weight
  double k_y = 1.5;          // color cue weight (first cost function)
  double k_s = 0.5;          // saliency cue weight (first cost function)
  double k_b = 0.66;         // boundary bias (second cost function)
  WeightMode weight_mode = WeightMode::kAuto;
  int min_region_size = 50;  // 0 disables the small-region merge pass
  bool eight_connected = true;
};

/// Cylindrical HSV distance in [0,1] between two pixels. Value and
/// saturation differences are weighted by k_dv and k_ds; hue enters through
/// the chroma term. The normalizer can be exceeded by a fraction of a
/// percent, so the result is clamped.
double color_difference(const PixelHSV& a, const PixelHSV& b, double k_dv, double k_ds);

/// First cost function: color, depth and saliency cues with depth-coupled
/// terms. All cues in [0,1]; result in [0,1].
double weight_w1(double d_hsv, double d_depth, double d_sal, double k_x, double k_y,
                 double k_s);

/// Second cost function: depth-gated color plus a boundary bias.
/// All cues in [0,1]; result in [0,1].
double weight_w2(double d_hsv, double d_depth, double d_bound, double k_x, double k_b);

struct GraphEdge {
  std::int32_t a = 0;
  std::int32_t b = 0;
  float w = 0.f;
};

/// Undirected pixel-lattice graph with weights in [0,1].
struct WeightedGridGraph {
  int width = 0;
  int height = 0;
  std::vector<GraphEdge> edges;

  std::int32_t vertex_count() const { return static_cast<std::int32_t>(width) * height; }
};

/// Per-frame cue maps consumed by the graph builder. saliency is required
/// for the first cost function, boundary for the second; the unused one may
/// be null.
struct FrameCues {
  const ImageHSV* hsv = nullptr;
  const SmoothedDepthMap* depth = nullptr;
  const MapF* saliency = nullptr;
  const MaskU8* boundary = nullptr;
};

/// One edge per neighboring pixel pair (8-connected by default), weighted
/// by the selected cost function. Vertex cues (saliency, boundary) enter an
/// edge as the maximum over its two endpoints.
WeightedGridGraph build_grid_graph(const FrameCues& cues, const SegParams& params,
                                   double d_max_m, WeightMode mode);

/// Union-find forest carrying per-root region size and the largest weight
/// merged inside the region so far.
class DisjointSetForest {
 public:
  explicit DisjointSetForest(std::int32_t n);

  std::int32_t find(std::int32_t v);
  /// Joins the two roots; keeps edge_weight as the new internal difference.
  void unite(std::int32_t root_a, std::int32_t root_b, double edge_weight);

  std::int32_t size(std::int32_t root) const { return size_[root]; }
  double internal_diff(std::int32_t root) const { return internal_[root]; }
  std::int32_t set_count() const { return sets_; }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int8_t> rank_;
  std::vector<std::int32_t> size_;
  std::vector<double> internal_;
  std::int32_t sets_ = 0;
};

struct Segmentation {
  LabelMap labels;
  std::int32_t region_count = 0;
};

/// Greedy merge over edges in non-decreasing weight order (ties broken by
/// edge index). Two regions merge when the connecting weight is within both
/// internal differences plus gamma over the region size; afterwards regions
/// below min_region_size are folded into their lowest-weight neighbor.
/// Labels are compacted in row-major first-touch order, so identical inputs
/// give identical label maps.
Segmentation segment_graph(const WeightedGridGraph& g, double gamma, int min_region_size);

struct Region {
  std::int32_t id = 0;
  std::vector<std::int32_t> pixels;  // linear indices, row-major ascending
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;

  int size() const { return static_cast<int>(pixels.size()); }
};

/// Pixel sets and bounding boxes per label, ordered by label id.
std::vector<Region> extract_regions(const Segmentation& seg);

}  // namespace rgbdseg
