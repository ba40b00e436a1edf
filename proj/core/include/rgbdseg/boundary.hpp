#pragma once

#include <cstdint>
#include <optional>

#include "rgbdseg/camera.hpp"
#include "rgbdseg/depth_prep.hpp"
#include "rgbdseg/image.hpp"

namespace rgbdseg {

struct BoundaryParams {
  double canny_low = 40.0;    // hysteresis thresholds on 8-bit gradient scale
  double canny_high = 90.0;
  int eps_rho = 3;            // sampling offset (pixels) for the depth gradient test
  double t_rho_m = 0.04;      // depth step below which an edge is texture
  int eps_e = 8;              // sampling offset (pixels) for the contact angle;
                              // long enough to clear the smoothing blur radius
  double theta_low_deg = 50.0;   // contact angle acceptance band
  double theta_high_deg = 130.0;
};

/// Binary Canny edge map plus the gradient direction of each edge pixel
/// discretized to {0,45,90,135} degrees (stored as bin index 0..3).
struct EdgeMap {
  MaskU8 edges;
  Map2D<std::uint8_t> theta_bin;
};

/// Edge classification of one frame.
/// depth_boundary and contact_boundary are subsets of edges; the final map
/// is their union and feeds the per-vertex boundary cue.
struct EdgeClassification {
  EdgeMap edges;
  MaskU8 depth_boundary;
  MaskU8 contact_boundary;
  MaskU8 final_boundary;
};

/// Unit grid step along the discretized gradient direction, oriented so the
/// positive sample lies on the upper side of the image where one exists.
/// Index by theta bin; pair is (dx, dy).
constexpr int kGradientStep[4][2] = {{1, 0}, {-1, -1}, {0, -1}, {1, -1}};

/// Canny on the brightness channel with 3x3 Scharr gradients (normalized to
/// the 8-bit intensity scale), non-maximum suppression along the discretized
/// direction and hysteresis thresholding.
EdgeMap scharr_canny(const ImageRGB& img, const BoundaryParams& p);

/// Marks edge pixels with a significant depth step on either side; edges
/// whose both-side gradients stay below t_rho_m are texture and dropped.
/// Samples falling out of bounds or on missing depth keep the edge.
MaskU8 depth_boundary_map(const EdgeMap& edges, const SmoothedDepthMap& ds,
                          const BoundaryParams& p);

/// Signed angle (degrees) between the two back-projected neighbor vectors of
/// an edge pixel, negative when the x component of their cross product is
/// negative (an internal crease). Empty when any sample misses depth data.
std::optional<double> signed_contact_angle_deg(const SmoothedDepthMap& ds,
                                               const CameraIntrinsics& k, int y, int x,
                                               int theta_bin, int eps_e);

/// Marks edge pixels whose contact angle falls inside the acceptance band.
MaskU8 contact_boundary_map(const EdgeMap& edges, const SmoothedDepthMap& ds,
                            const CameraIntrinsics& k, const BoundaryParams& p);

/// Pixelwise union of depth and contact boundaries.
MaskU8 final_boundary_map(const MaskU8& depth_boundary, const MaskU8& contact_boundary);

/// Full classification pass: Canny, texture-edge rejection, contact edges,
/// final union.
EdgeClassification classify_boundaries(const ImageRGB& img, const SmoothedDepthMap& ds,
                                       const CameraIntrinsics& k, const BoundaryParams& p);

}  // namespace rgbdseg
