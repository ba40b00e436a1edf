#pragma once

#include <cstdint>
#include <vector>

#include "rgbdseg/image.hpp"

namespace rgbdseg {

/// Summed-area table with one extra zero row and column, accumulated in
/// double precision. entry(y, x) = sum of the source over [0,y) x [0,x).
class IntegralImage {
 public:
  struct Box {
    double sum = 0.0;
    int count = 0;  // pixels actually covered after border clamping
  };

  IntegralImage() = default;

  int width() const { return width_; }
  int height() const { return height_; }

  /// Raw table entry, y in [0,height], x in [0,width].
  double entry(int y, int x) const {
    return table_[static_cast<std::size_t>(y) * (width_ + 1) + x];
  }

  /// Sum over the half-open rectangle [y0,y1) x [x0,x1). No clamping.
  double rect_sum(int y0, int x0, int y1, int x1) const {
    return entry(y1, x1) - entry(y1, x0) - entry(y0, x1) + entry(y0, x0);
  }

  /// Sum over the square window of half-width r centered at (cy, cx).
  /// The window is shrunk at image borders; count reports the effective
  /// number of covered pixels.
  Box box_sum(int cy, int cx, int r) const;

  template <typename T>
  friend IntegralImage build_integral(const Map2D<T>& src);
  friend IntegralImage build_zero_mask_integral(const DepthMap& d);

 private:
  void init(int width, int height);
  double& cell(int y, int x) {
    return table_[static_cast<std::size_t>(y) * (width_ + 1) + x];
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> table_;
};

/// Build the summed-area table of a scalar map.
template <typename T>
IntegralImage build_integral(const Map2D<T>& src) {
  IntegralImage out;
  out.init(src.width(), src.height());
  for (int y = 0; y < src.height(); ++y) {
    double row = 0.0;
    for (int x = 0; x < src.width(); ++x) {
      row += static_cast<double>(src.at(y, x));
      out.cell(y + 1, x + 1) = out.entry(y, x + 1) + row;
    }
  }
  return out;
}

/// Integral of the indicator of missing pixels: counts zeros per window.
IntegralImage build_zero_mask_integral(const DepthMap& d);

}  // namespace rgbdseg
