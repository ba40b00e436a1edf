#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rgbdseg/graphseg.hpp"
#include "rgbdseg/image.hpp"

namespace rgbdseg {

/// Shape of a region's pixel-coordinate covariance ellipse.
struct PcaShape {
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  double lambda1 = 0.0;  // major eigenvalue, pixels^2
  double lambda2 = 0.0;  // minor eigenvalue, lambda1 >= lambda2 >= 0
  double eccentricity = 0.0;  // sqrt(1 - lambda2/lambda1)
};

struct RegionStats {
  PcaShape shape;
  double missing_depth_fraction = 0.0;
  std::array<int, 32> brightness_hist{};  // value channel scaled to [0,255], bins of 8
  double mean_depth_m = 0.0;              // over valid depth pixels; 0 if none
};

enum class RejectReason : std::uint8_t {
  kShape,
  kMissingDepth,
  kDark,
  kDistance,
};

const char* to_string(RejectReason reason);

struct RejectionConfig {
  double lambda1_max = 20000.0;
  double lambda2_max = 12000.0;
  double eccentricity_max = 0.98;
  double missing_max = 0.30;   // active only when in-painting is off
  int dark_bins = 3;           // first bins of the 32-bin histogram
  double dark_fraction = 0.30;
  double reach_max_m = 1.5;
};

struct RegionVerdict {
  bool accepted = true;
  std::vector<RejectReason> reasons;
};

/// Covariance eigen-decomposition of the region's pixel coordinates.
/// Regions smaller than two pixels degenerate to all-zero shape.
PcaShape region_pca(std::span<const std::int32_t> pixels, int map_width);

/// Shape, brightness histogram, missing-depth fraction and mean depth of
/// one region.
RegionStats compute_region_stats(const Region& region, int map_width, const ImageHSV& hsv,
                                 const DepthMap& depth);

/// Pure, order-independent gates: covariance shape, missing-depth fraction
/// (skipped when in-painting filled the map), darkness, and reach.
std::vector<RegionVerdict> reject_regions(std::span<const RegionStats> stats,
                                          const RejectionConfig& cfg,
                                          bool inpainting_enabled);

}  // namespace rgbdseg
