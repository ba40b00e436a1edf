#pragma once

#include <vector>

#include "rgbdseg/image.hpp"

namespace rgbdseg {

/// Center-surround saliency over integral images.
struct SaliencyConfig {
  double sigma = 8.0;               // surround half-width at scale 0
  std::vector<int> scales = {0, 1, 2};  // surround half-width = sigma * 2^s
};

/// Per-pixel conspicuity in [0,1]. Contrast |pixel - surround mean| is
/// accumulated over an intensity channel and two color-opponency channels
/// (R-G, B-Y) across the configured scales, then min-max normalized. A
/// constant image maps to all zeros.
MapF compute_saliency(const ImageRGB& img, const SaliencyConfig& cfg);

/// Fourth-power transform. Keeps values near one, suppresses mid grays;
/// never increases a value in [0,1].
MapF power_law(const MapF& v);

}  // namespace rgbdseg
