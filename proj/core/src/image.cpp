#include "rgbdseg/image.hpp"

namespace rgbdseg {

PixelHSV rgb_to_hsv(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  const float r = r8 / 255.f;
  const float g = g8 / 255.f;
  const float b = b8 / 255.f;

  const float mx = std::max(r, std::max(g, b));
  const float mn = std::min(r, std::min(g, b));
  const float delta = mx - mn;

  PixelHSV out;
  out.v = mx;
  out.s = mx > 0.f ? delta / mx : 0.f;

  if (delta <= 0.f) {
    out.h = 0.f;  // achromatic
    return out;
  }
  float h;
  if (mx == r) {
    h = 60.f * ((g - b) / delta);
    if (h < 0.f) h += 360.f;
  } else if (mx == g) {
    h = 60.f * ((b - r) / delta + 2.f);
  } else {
    h = 60.f * ((r - g) / delta + 4.f);
  }
  if (h >= 360.f) h -= 360.f;
  out.h = h;
  return out;
}

ImageHSV rgb_to_hsv(const ImageRGB& img) {
  ImageHSV out(img.width(), img.height());
  const std::uint8_t* src = img.data().data();
  for (std::size_t i = 0; i < out.pixel_count(); ++i, src += 3) {
    out[i] = rgb_to_hsv(src[0], src[1], src[2]);
  }
  return out;
}

}  // namespace rgbdseg
