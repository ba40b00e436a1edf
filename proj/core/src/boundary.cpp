#include "rgbdseg/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace rgbdseg {

namespace {

// Scharr pair per color channel, keeping for each pixel the channel with
// the strongest response. Normalized by the kernel weight sum so a step of
// N gray levels reads as a gradient magnitude of about N. Single-channel
// gradients miss chromatic boundaries between isoluminant colors.
void scharr_gradients(const ImageRGB& img, MapF& gx, MapF& gy) {
  const int w = img.width();
  const int h = img.height();
  for (int y = 1; y + 1 < h; ++y) {
    for (int x = 1; x + 1 < w; ++x) {
      float best = -1.f;
      for (int c = 0; c < 3; ++c) {
        const float a = img.px(y - 1, x - 1)[c], b = img.px(y - 1, x)[c],
                    cc = img.px(y - 1, x + 1)[c];
        const float d = img.px(y, x - 1)[c], f = img.px(y, x + 1)[c];
        const float g = img.px(y + 1, x - 1)[c], i = img.px(y + 1, x)[c],
                    j = img.px(y + 1, x + 1)[c];
        const float cgx = (3.f * (cc - a) + 10.f * (f - d) + 3.f * (j - g)) / 16.f;
        const float cgy = (3.f * (g - a) + 10.f * (i - b) + 3.f * (j - cc)) / 16.f;
        const float mag2 = cgx * cgx + cgy * cgy;
        if (mag2 > best) {
          best = mag2;
          gx.at(y, x) = cgx;
          gy.at(y, x) = cgy;
        }
      }
    }
  }
}

// Gradient angle folded to [0, 180) and binned to 0/45/90/135 degrees.
inline int theta_to_bin(float gx, float gy) {
  float deg = std::atan2(gy, gx) * 180.f / std::numbers::pi_v<float>;
  if (deg < 0.f) deg += 180.f;
  const int bin = static_cast<int>(std::lround(deg / 45.f)) & 3;
  return bin;
}

// Neighbor offsets along the gradient line used by non-maximum suppression.
constexpr int kNmsStep[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};

}  // namespace

EdgeMap scharr_canny(const ImageRGB& img, const BoundaryParams& p) {
  const int w = img.width();
  const int h = img.height();

  MapF gx(w, h, 0.f), gy(w, h, 0.f);
  scharr_gradients(img, gx, gy);

  MapF mag(w, h, 0.f);
  Map2D<std::uint8_t> bin(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float vx = gx.at(y, x);
      const float vy = gy.at(y, x);
      mag.at(y, x) = std::sqrt(vx * vx + vy * vy);
      bin.at(y, x) = static_cast<std::uint8_t>(theta_to_bin(vx, vy));
    }
  }

  // Non-maximum suppression; the plateau tie goes to the first pixel along
  // the positive step so step edges thin to one pixel.
  // status: 0 none, 1 weak candidate, 2 strong seed
  Map2D<std::uint8_t> status(w, h, 0);
  std::vector<std::int32_t> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float m = mag.at(y, x);
      if (m <= p.canny_low) continue;
      const int* step = kNmsStep[bin.at(y, x)];
      const int yb = y - step[1], xb = x - step[0];
      const int yf = y + step[1], xf = x + step[0];
      const float before = mag.in_bounds(yb, xb) ? mag.at(yb, xb) : 0.f;
      const float after = mag.in_bounds(yf, xf) ? mag.at(yf, xf) : 0.f;
      if (m > before && m >= after) {
        if (m > p.canny_high) {
          status.at(y, x) = 2;
          stack.push_back(y * w + x);
        } else {
          status.at(y, x) = 1;
        }
      }
    }
  }

  // Hysteresis: grow strong seeds over weak candidates, 8-connected.
  EdgeMap out{MaskU8(w, h, 0), Map2D<std::uint8_t>(w, h, 0)};
  while (!stack.empty()) {
    const std::int32_t pix = stack.back();
    stack.pop_back();
    const int y = pix / w;
    const int x = pix % w;
    if (out.edges.at(y, x)) continue;
    out.edges.at(y, x) = 1;
    out.theta_bin.at(y, x) = bin.at(y, x);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dy == 0 && dx == 0) continue;
        const int ny = y + dy;
        const int nx = x + dx;
        if (!status.in_bounds(ny, nx)) continue;
        if (status.at(ny, nx) >= 1 && !out.edges.at(ny, nx)) {
          stack.push_back(ny * w + nx);
        }
      }
    }
  }
  return out;
}

MaskU8 depth_boundary_map(const EdgeMap& edges, const SmoothedDepthMap& ds,
                          const BoundaryParams& p) {
  const int w = edges.edges.width();
  const int h = edges.edges.height();
  MaskU8 out(w, h, 0);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!edges.edges.at(y, x)) continue;
      const int* n = kGradientStep[edges.theta_bin.at(y, x)];

      // A sample without depth cannot prove the edge is texture, so it
      // counts as exceeding the threshold and the edge survives.
      bool texture = true;
      if (ds.missing(y, x)) {
        texture = false;
      } else {
        const double center = ds.at(y, x);
        for (int sgn = -1; sgn <= 1 && texture; sgn += 2) {
          const int sy = y + sgn * p.eps_rho * n[1];
          const int sx = x + sgn * p.eps_rho * n[0];
          if (!ds.in_bounds(sy, sx) || ds.missing(sy, sx)) {
            texture = false;
            break;
          }
          const double rho = center - ds.at(sy, sx);
          if (std::abs(rho) >= p.t_rho_m) texture = false;
        }
      }
      out.at(y, x) = texture ? 0 : 1;
    }
  }
  return out;
}

std::optional<double> signed_contact_angle_deg(const SmoothedDepthMap& ds,
                                               const CameraIntrinsics& k, int y, int x,
                                               int theta_bin, int eps_e) {
  const int* n = kGradientStep[theta_bin];
  const int yp = y + eps_e * n[1], xp = x + eps_e * n[0];
  const int ym = y - eps_e * n[1], xm = x - eps_e * n[0];

  if (!ds.in_bounds(yp, xp) || !ds.in_bounds(ym, xm)) return std::nullopt;
  if (ds.missing(y, x) || ds.missing(yp, xp) || ds.missing(ym, xm)) return std::nullopt;

  const Vec3 pe = backproject(y, x, ds.at(y, x), k);
  const Vec3 pp = backproject(yp, xp, ds.at(yp, xp), k);
  const Vec3 pm = backproject(ym, xm, ds.at(ym, xm), k);

  const Vec3 dp = pp - pe;
  const Vec3 dm = pm - pe;
  if (dp.norm() == 0.0 || dm.norm() == 0.0) return std::nullopt;

  const Vec3 vp = dp.normalized();
  const Vec3 vm = dm.normalized();
  const Vec3 crs = vp.cross(vm);
  double theta = std::atan2(crs.norm(), vp.dot(vm)) * 180.0 / std::numbers::pi;
  if (crs.x < 0.0) theta = -theta;
  return theta;
}

MaskU8 contact_boundary_map(const EdgeMap& edges, const SmoothedDepthMap& ds,
                            const CameraIntrinsics& k, const BoundaryParams& p) {
  const int w = edges.edges.width();
  const int h = edges.edges.height();
  MaskU8 out(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!edges.edges.at(y, x)) continue;
      const std::optional<double> theta =
          signed_contact_angle_deg(ds, k, y, x, edges.theta_bin.at(y, x), p.eps_e);
      if (!theta) continue;  // cannot assert contact without depth
      if (*theta >= p.theta_low_deg && *theta <= p.theta_high_deg) out.at(y, x) = 1;
    }
  }
  return out;
}

MaskU8 final_boundary_map(const MaskU8& depth_boundary, const MaskU8& contact_boundary) {
  MaskU8 out(depth_boundary.width(), depth_boundary.height());
  for (std::size_t i = 0; i < out.pixel_count(); ++i) {
    out[i] = (depth_boundary[i] || contact_boundary[i]) ? 1 : 0;
  }
  return out;
}

EdgeClassification classify_boundaries(const ImageRGB& img, const SmoothedDepthMap& ds,
                                       const CameraIntrinsics& k, const BoundaryParams& p) {
  EdgeClassification out;
  out.edges = scharr_canny(img, p);
  out.depth_boundary = depth_boundary_map(out.edges, ds, p);
  out.contact_boundary = contact_boundary_map(out.edges, ds, k, p);
  out.final_boundary = final_boundary_map(out.depth_boundary, out.contact_boundary);
  return out;
}

}  // namespace rgbdseg
