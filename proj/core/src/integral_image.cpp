#include "rgbdseg/integral_image.hpp"

#include <algorithm>

namespace rgbdseg {

void IntegralImage::init(int width, int height) {
  width_ = width;
  height_ = height;
  table_.assign(static_cast<std::size_t>(width + 1) * (height + 1), 0.0);
}

IntegralImage::Box IntegralImage::box_sum(int cy, int cx, int r) const {
  const int y0 = std::max(0, cy - r);
  const int x0 = std::max(0, cx - r);
  const int y1 = std::min(height_, cy + r + 1);
  const int x1 = std::min(width_, cx + r + 1);
  Box b;
  if (y1 <= y0 || x1 <= x0) return b;
  b.sum = rect_sum(y0, x0, y1, x1);
  b.count = (y1 - y0) * (x1 - x0);
  return b;
}

IntegralImage build_zero_mask_integral(const DepthMap& d) {
  IntegralImage out;
  out.init(d.width(), d.height());
  for (int y = 0; y < d.height(); ++y) {
    double row = 0.0;
    for (int x = 0; x < d.width(); ++x) {
      row += d.at(y, x) == DepthMap::kMissing ? 1.0 : 0.0;
      out.cell(y + 1, x + 1) = out.entry(y, x + 1) + row;
    }
  }
  return out;
}

}  // namespace rgbdseg
