#pragma once

#include <cmath>
#include <stdexcept>

namespace rgbdseg {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    return n > 0.0 ? Vec3{x / n, y / n, z / n} : Vec3{};
  }
};

/// Pinhole intrinsics in pixels. The camera frame has the Z axis pointing
/// outwards along the optical axis, X to the right and Y down.
struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  bool valid() const { return fx > 0.0 && fy > 0.0; }
};

/// Kinect-era VGA defaults, used when no intrinsics file is given.
inline CameraIntrinsics default_vga_intrinsics() { return {525.0, 525.0, 319.5, 239.5}; }

/// Lift pixel (y, x) with a range measurement to a camera-frame point.
/// Throws std::invalid_argument for a no-depth pixel.
inline Vec3 backproject(double y, double x, double depth_m, const CameraIntrinsics& k) {
  if (depth_m <= 0.0) throw std::invalid_argument("backproject: no-depth pixel");
  return {(x - k.cx) * depth_m / k.fx, (y - k.cy) * depth_m / k.fy, depth_m};
}

struct PixelF {
  double x = 0.0;
  double y = 0.0;
};

/// Forward pinhole projection of a camera-frame point with z > 0.
inline PixelF project(const Vec3& p, const CameraIntrinsics& k) {
  return {p.x * k.fx / p.z + k.cx, p.y * k.fy / p.z + k.cy};
}

}  // namespace rgbdseg
