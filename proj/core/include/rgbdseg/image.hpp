#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace rgbdseg {

/// Dense row-major 2D grid of values. Base container for masks, depth
/// maps, label maps and scalar feature maps.
template <typename T>
class Map2D {
 public:
  Map2D() = default;
  Map2D(int width, int height, T fill = T{})
      : width_(width),
        height_(height),
        data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
    assert(width > 0 && height > 0);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }
  std::size_t pixel_count() const { return data_.size(); }

  bool in_bounds(int y, int x) const {
    return y >= 0 && y < height_ && x >= 0 && x < width_;
  }

  T& at(int y, int x) {
    assert(in_bounds(y, x));
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  const T& at(int y, int x) const {
    assert(in_bounds(y, x));
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  void fill(T value) { data_.assign(data_.size(), value); }

  bool operator==(const Map2D&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using MaskU8 = Map2D<std::uint8_t>;
using MapF = Map2D<float>;
using LabelMap = Map2D<std::int32_t>;

/// Interleaved 8-bit RGB image, row-major.
class ImageRGB {
 public:
  ImageRGB() = default;
  ImageRGB(int width, int height)
      : width_(width),
        height_(height),
        data_(static_cast<std::size_t>(width) * height * 3, 0) {
    assert(width > 0 && height > 0);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }

  bool in_bounds(int y, int x) const {
    return y >= 0 && y < height_ && x >= 0 && x < width_;
  }

  std::uint8_t* px(int y, int x) {
    assert(in_bounds(y, x));
    return data_.data() + (static_cast<std::size_t>(y) * width_ + x) * 3;
  }
  const std::uint8_t* px(int y, int x) const {
    assert(in_bounds(y, x));
    return data_.data() + (static_cast<std::size_t>(y) * width_ + x) * 3;
  }

  void set(int y, int x, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    std::uint8_t* p = px(y, x);
    p[0] = r;
    p[1] = g;
    p[2] = b;
  }

  std::vector<std::uint8_t>& data() { return data_; }
  const std::vector<std::uint8_t>& data() const { return data_; }

  bool operator==(const ImageRGB&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// HSV pixel: h in degrees [0,360), s and v in [0,1].
struct PixelHSV {
  float h = 0.f;
  float s = 0.f;
  float v = 0.f;
};

using ImageHSV = Map2D<PixelHSV>;

/// Per-pixel range in meters. Zero is the only sentinel for a missing
/// measurement (depth shadow).
class DepthMap : public Map2D<float> {
 public:
  static constexpr float kMissing = 0.f;

  DepthMap() = default;
  DepthMap(int width, int height, float fill = kMissing) : Map2D<float>(width, height, fill) {}

  bool missing(int y, int x) const { return at(y, x) == kMissing; }
};

/// Hexcone HSV conversion. Hue of achromatic pixels is defined as 0.
ImageHSV rgb_to_hsv(const ImageRGB& img);

PixelHSV rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Brightness channel (HSV value scaled back to [0,255]) of one pixel.
inline std::uint8_t value_u8(const std::uint8_t* rgb) {
  std::uint8_t m = rgb[0] > rgb[1] ? rgb[0] : rgb[1];
  return m > rgb[2] ? m : rgb[2];
}

}  // namespace rgbdseg
