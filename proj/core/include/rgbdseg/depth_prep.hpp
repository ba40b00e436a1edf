#pragma once

#include <cstdint>

#include "rgbdseg/image.hpp"

namespace rgbdseg {

/// Per-pixel smoothing kernel half-width. Zero on missing-depth pixels.
using SmoothingAreaMap = Map2D<std::int32_t>;

/// Same layout as DepthMap; missing pixels stay missing after smoothing.
using SmoothedDepthMap = DepthMap;

struct DepthPrepConfig {
  double alpha_px_per_m = 3.0;  // kernel half-width per meter of range
  int r_max = 10;               // half-width ceiling
  double t_step_m = 0.05;       // neighbor step treated as a discontinuity
  double d_max_m = 10.0;        // normalization constant for the depth cue
  int max_hole_area = 400;      // largest hole, in pixels, still in-painted
  double inpaint_tol_m = 1e-4;  // diffusion convergence tolerance
  double shadow_fraction_w1 = 0.02;  // above this the shadow-tolerant weights are used
};

struct ShadowStats {
  double shadow_fraction = 0.0;
  int largest_hole_area = 0;
};

/// Indicator of missing depth: 1 where the map reads zero, else 0.
MaskU8 binary_depth_mask(const DepthMap& d);

/// Kernel half-widths grow with range (alpha_px_per_m) and are cut down to
/// the Chebyshev distance to the nearest missing pixel or depth step larger
/// than t_step_m, so object edges and shadow borders are not smeared.
SmoothingAreaMap smoothing_area_map(const DepthMap& d, const DepthPrepConfig& cfg);

/// Box average over the per-pixel window, counting only pixels that carry
/// depth. A window with no valid pixel leaves the input value unchanged.
SmoothedDepthMap smooth_depth(const DepthMap& d, const SmoothingAreaMap& area);

/// Fills missing components of at most max_hole_area pixels by iterative
/// neighbor-average diffusion; larger holes are left untouched. Never
/// modifies a pixel that had valid depth.
SmoothedDepthMap inpaint_small_holes(const SmoothedDepthMap& d, int max_hole_area,
                                     double tol_m = 1e-4);

/// Fraction of missing pixels plus the largest 8-connected hole.
ShadowStats shadow_stats(const DepthMap& d);

/// Pairwise depth cue in [0,1]: |d_i - d_j| / d_max, clamped. Exactly zero
/// when either pixel is missing, since a shadow border is not necessarily
/// an object border.
double depth_difference(const SmoothedDepthMap& ds, int yi, int xi, int yj, int xj,
                        double d_max_m);

}  // namespace rgbdseg
