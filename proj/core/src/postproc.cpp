#include "rgbdseg/postproc.hpp"

#include <algorithm>
#include <cmath>

namespace rgbdseg {

const char* to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kShape: return "shape";
    case RejectReason::kMissingDepth: return "missing-depth";
    case RejectReason::kDark: return "dark";
    case RejectReason::kDistance: return "distance";
  }
  return "unknown";
}

PcaShape region_pca(std::span<const std::int32_t> pixels, int map_width) {
  PcaShape out;
  const std::size_t n = pixels.size();
  if (n == 0) return out;

  double sx = 0.0, sy = 0.0;
  for (std::int32_t p : pixels) {
    sx += p % map_width;
    sy += p / map_width;
  }
  out.centroid_x = sx / n;
  out.centroid_y = sy / n;
  if (n < 2) return out;

  double cxx = 0.0, cyy = 0.0, cxy = 0.0;
  for (std::int32_t p : pixels) {
    const double dx = (p % map_width) - out.centroid_x;
    const double dy = (p / map_width) - out.centroid_y;
    cxx += dx * dx;
    cyy += dy * dy;
    cxy += dx * dy;
  }
  cxx /= n;
  cyy /= n;
  cxy /= n;

  // Closed-form eigenvalues of the 2x2 symmetric covariance.
  const double tr = cxx + cyy;
  const double det = cxx * cyy - cxy * cxy;
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  out.lambda1 = tr / 2.0 + disc;
  out.lambda2 = std::max(0.0, tr / 2.0 - disc);
  out.eccentricity =
      out.lambda1 > 0.0 ? std::sqrt(std::max(0.0, 1.0 - out.lambda2 / out.lambda1)) : 0.0;
  return out;
}

RegionStats compute_region_stats(const Region& region, int map_width, const ImageHSV& hsv,
                                 const DepthMap& depth) {
  RegionStats stats;
  stats.shape = region_pca(region.pixels, map_width);

  int missing = 0;
  double depth_sum = 0.0;
  int depth_n = 0;
  for (std::int32_t p : region.pixels) {
    const float d = depth[p];
    if (d == DepthMap::kMissing) {
      ++missing;
    } else {
      depth_sum += d;
      ++depth_n;
    }
    const int brightness = static_cast<int>(std::lround(hsv[p].v * 255.f));
    const int bin = std::clamp(brightness / 8, 0, 31);
    ++stats.brightness_hist[bin];
  }
  stats.missing_depth_fraction =
      region.pixels.empty() ? 0.0 : static_cast<double>(missing) / region.pixels.size();
  stats.mean_depth_m = depth_n > 0 ? depth_sum / depth_n : 0.0;
  return stats;
}

std::vector<RegionVerdict> reject_regions(std::span<const RegionStats> stats,
                                          const RejectionConfig& cfg,
                                          bool inpainting_enabled) {
  std::vector<RegionVerdict> out(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const RegionStats& s = stats[i];
    RegionVerdict& v = out[i];

    if (s.shape.lambda1 > cfg.lambda1_max || s.shape.lambda2 > cfg.lambda2_max ||
        s.shape.eccentricity > cfg.eccentricity_max) {
      v.reasons.push_back(RejectReason::kShape);
    }
    if (!inpainting_enabled && s.missing_depth_fraction > cfg.missing_max) {
      v.reasons.push_back(RejectReason::kMissingDepth);
    }
    long total = 0;
    long dark = 0;
    for (int b = 0; b < 32; ++b) {
      total += s.brightness_hist[b];
      if (b < cfg.dark_bins) dark += s.brightness_hist[b];
    }
    if (total > 0 && static_cast<double>(dark) / total >= cfg.dark_fraction) {
      v.reasons.push_back(RejectReason::kDark);
    }
    if (s.mean_depth_m > cfg.reach_max_m) {
      v.reasons.push_back(RejectReason::kDistance);
    }
    v.accepted = v.reasons.empty();
  }
  return out;
}

}  // namespace rgbdseg
