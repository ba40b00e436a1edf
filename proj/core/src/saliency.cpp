#include "rgbdseg/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rgbdseg/integral_image.hpp"

namespace rgbdseg {

MapF compute_saliency(const ImageRGB& img, const SaliencyConfig& cfg) {
  const int w = img.width();
  const int h = img.height();

  // Intensity plus R-G and B-Y opponency.
  MapF channels[3] = {MapF(w, h), MapF(w, h), MapF(w, h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::uint8_t* p = img.px(y, x);
      const float r = p[0], g = p[1], b = p[2];
      channels[0].at(y, x) = (r + g + b) / 3.f;
      channels[1].at(y, x) = r - g;
      channels[2].at(y, x) = b - (r + g) / 2.f;
    }
  }

  MapF acc(w, h, 0.f);
  for (const MapF& ch : channels) {
    const IntegralImage integral = build_integral(ch);
    for (int s : cfg.scales) {
      const int surround = std::max(1, static_cast<int>(std::lround(cfg.sigma * (1 << s))));
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const IntegralImage::Box box = integral.box_sum(y, x, surround);
          const float center = ch.at(y, x);
          if (box.count <= 1) continue;
          const double mean = (box.sum - center) / (box.count - 1);
          acc.at(y, x) += static_cast<float>(std::abs(center - mean));
        }
      }
    }
  }

  float lo = std::numeric_limits<float>::max();
  float hi = std::numeric_limits<float>::lowest();
  for (std::size_t i = 0; i < acc.pixel_count(); ++i) {
    lo = std::min(lo, acc[i]);
    hi = std::max(hi, acc[i]);
  }
  MapF out(w, h, 0.f);
  const float range = hi - lo;
  if (range > 0.f) {
    for (std::size_t i = 0; i < acc.pixel_count(); ++i) {
      out[i] = (acc[i] - lo) / range;
    }
  }
  return out;
}

MapF power_law(const MapF& v) {
  MapF out(v.width(), v.height());
  for (std::size_t i = 0; i < v.pixel_count(); ++i) {
    const float sq = v[i] * v[i];
    out[i] = sq * sq;
  }
  return out;
}

}  // namespace rgbdseg
