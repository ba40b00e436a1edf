#include "rgbdseg/depth_prep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rgbdseg/integral_image.hpp"

namespace rgbdseg {

MaskU8 binary_depth_mask(const DepthMap& d) {
  MaskU8 out(d.width(), d.height());
  for (std::size_t i = 0; i < out.pixel_count(); ++i) {
    out[i] = d[i] == DepthMap::kMissing ? 1 : 0;
  }
  return out;
}

namespace {

// Chebyshev distance transform to the set mask==1, two chamfer passes.
Map2D<std::int32_t> chebyshev_distance(const MaskU8& mask) {
  const int w = mask.width();
  const int h = mask.height();
  const std::int32_t inf = std::numeric_limits<std::int32_t>::max() / 2;
  Map2D<std::int32_t> dist(w, h, inf);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (mask.at(y, x)) {
        dist.at(y, x) = 0;
        continue;
      }
      std::int32_t best = dist.at(y, x);
      if (x > 0) best = std::min(best, dist.at(y, x - 1) + 1);
      if (y > 0) {
        best = std::min(best, dist.at(y - 1, x) + 1);
        if (x > 0) best = std::min(best, dist.at(y - 1, x - 1) + 1);
        if (x + 1 < w) best = std::min(best, dist.at(y - 1, x + 1) + 1);
      }
      dist.at(y, x) = best;
    }
  }
  for (int y = h - 1; y >= 0; --y) {
    for (int x = w - 1; x >= 0; --x) {
      std::int32_t best = dist.at(y, x);
      if (x + 1 < w) best = std::min(best, dist.at(y, x + 1) + 1);
      if (y + 1 < h) {
        best = std::min(best, dist.at(y + 1, x) + 1);
        if (x > 0) best = std::min(best, dist.at(y + 1, x - 1) + 1);
        if (x + 1 < w) best = std::min(best, dist.at(y + 1, x + 1) + 1);
      }
      dist.at(y, x) = best;
    }
  }
  return dist;
}

}  // namespace

SmoothingAreaMap smoothing_area_map(const DepthMap& d, const DepthPrepConfig& cfg) {
  const int w = d.width();
  const int h = d.height();

  // Pixels that must not be smoothed across: missing depth, or a depth step
  // to some valid 8-neighbor above t_step_m.
  MaskU8 blocking(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float dv = d.at(y, x);
      if (dv == DepthMap::kMissing) {
        blocking.at(y, x) = 1;
        continue;
      }
      bool step = false;
      for (int dy = -1; dy <= 1 && !step; ++dy) {
        for (int dx = -1; dx <= 1 && !step; ++dx) {
          if (dy == 0 && dx == 0) continue;
          const int ny = y + dy;
          const int nx = x + dx;
          if (!d.in_bounds(ny, nx)) continue;
          const float nv = d.at(ny, nx);
          if (nv != DepthMap::kMissing && std::abs(nv - dv) > cfg.t_step_m) step = true;
        }
      }
      if (step) blocking.at(y, x) = 1;
    }
  }

  const Map2D<std::int32_t> dist = chebyshev_distance(blocking);

  SmoothingAreaMap area(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (d.missing(y, x)) continue;  // r = 0 on shadow pixels
      const int r_depth = static_cast<int>(std::lround(cfg.alpha_px_per_m * d.at(y, x)));
      const int r = std::min({r_depth, cfg.r_max, dist.at(y, x)});
      area.at(y, x) = std::max(0, r);
    }
  }
  return area;
}

SmoothedDepthMap smooth_depth(const DepthMap& d, const SmoothingAreaMap& area) {
  const IntegralImage depth_sums = build_integral(d);
  const IntegralImage zero_counts = build_zero_mask_integral(d);

  SmoothedDepthMap out(d.width(), d.height());
  for (int y = 0; y < d.height(); ++y) {
    for (int x = 0; x < d.width(); ++x) {
      const int r = area.at(y, x);
      const IntegralImage::Box box = depth_sums.box_sum(y, x, r);
      const IntegralImage::Box zeros = zero_counts.box_sum(y, x, r);
      const int denom = box.count - static_cast<int>(std::lround(zeros.sum));
      if (denom <= 0) {
        // whole window is shadow: averaging has no meaning
        out.at(y, x) = d.at(y, x);
      } else {
        out.at(y, x) = static_cast<float>(box.sum / denom);
      }
    }
  }
  return out;
}

namespace {

// 8-connected components of missing pixels. Returns component id per pixel
// (-1 for valid depth) and the component areas.
std::pair<Map2D<std::int32_t>, std::vector<int>> missing_components(const DepthMap& d) {
  const int w = d.width();
  const int h = d.height();
  Map2D<std::int32_t> comp(w, h, -1);
  std::vector<int> areas;
  std::vector<std::int32_t> stack;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!d.missing(y, x) || comp.at(y, x) >= 0) continue;
      const std::int32_t id = static_cast<std::int32_t>(areas.size());
      int count = 0;
      comp.at(y, x) = id;
      stack.push_back(y * w + x);
      while (!stack.empty()) {
        const std::int32_t p = stack.back();
        stack.pop_back();
        ++count;
        const int py = p / w;
        const int px = p % w;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dy == 0 && dx == 0) continue;
            const int ny = py + dy;
            const int nx = px + dx;
            if (!d.in_bounds(ny, nx)) continue;
            if (!d.missing(ny, nx) || comp.at(ny, nx) >= 0) continue;
            comp.at(ny, nx) = id;
            stack.push_back(ny * w + nx);
          }
        }
      }
      areas.push_back(count);
    }
  }
  return {std::move(comp), std::move(areas)};
}

}  // namespace

SmoothedDepthMap inpaint_small_holes(const SmoothedDepthMap& d, int max_hole_area,
                                     double tol_m) {
  auto [comp, areas] = missing_components(d);
  SmoothedDepthMap out = d;

  const int w = d.width();
  // Collect fillable pixels grouped by component.
  std::vector<std::vector<std::int32_t>> holes(areas.size());
  for (int y = 0; y < d.height(); ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t id = comp.at(y, x);
      if (id >= 0 && areas[id] <= max_hole_area) holes[id].push_back(y * w + x);
    }
  }

  static constexpr int kOffsets[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  for (const auto& hole : holes) {
    if (hole.empty()) continue;

    // Seed with the mean of the valid pixels bordering the hole.
    double border_sum = 0.0;
    int border_n = 0;
    for (std::int32_t p : hole) {
      const int py = p / w;
      const int px = p % w;
      for (const auto& o : kOffsets) {
        const int ny = py + o[0];
        const int nx = px + o[1];
        if (d.in_bounds(ny, nx) && !d.missing(ny, nx)) {
          border_sum += d.at(ny, nx);
          ++border_n;
        }
      }
    }
    if (border_n == 0) continue;  // nothing to diffuse from
    const float seed = static_cast<float>(border_sum / border_n);
    for (std::int32_t p : hole) out[p] = seed;

    // Jacobi diffusion against the fixed valid boundary.
    std::vector<float> next(hole.size());
    const int max_iters = 40 + 4 * static_cast<int>(hole.size());
    for (int it = 0; it < max_iters; ++it) {
      double max_change = 0.0;
      for (std::size_t i = 0; i < hole.size(); ++i) {
        const int py = hole[i] / w;
        const int px = hole[i] % w;
        double sum = 0.0;
        int n = 0;
        for (const auto& o : kOffsets) {
          const int ny = py + o[0];
          const int nx = px + o[1];
          if (!out.in_bounds(ny, nx)) continue;
          const float v = out.at(ny, nx);
          if (v != DepthMap::kMissing) {
            sum += v;
            ++n;
          }
        }
        next[i] = n > 0 ? static_cast<float>(sum / n) : out[hole[i]];
        max_change = std::max(max_change, std::abs(static_cast<double>(next[i]) - out[hole[i]]));
      }
      for (std::size_t i = 0; i < hole.size(); ++i) out[hole[i]] = next[i];
      if (max_change < tol_m) break;
    }
  }
  return out;
}

ShadowStats shadow_stats(const DepthMap& d) {
  ShadowStats stats;
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < d.pixel_count(); ++i) {
    if (d[i] == DepthMap::kMissing) ++zeros;
  }
  stats.shadow_fraction = static_cast<double>(zeros) / static_cast<double>(d.pixel_count());

  auto [comp, areas] = missing_components(d);
  for (int a : areas) stats.largest_hole_area = std::max(stats.largest_hole_area, a);
  return stats;
}

double depth_difference(const SmoothedDepthMap& ds, int yi, int xi, int yj, int xj,
                        double d_max_m) {
  const float di = ds.at(yi, xi);
  const float dj = ds.at(yj, xj);
  if (di == DepthMap::kMissing || dj == DepthMap::kMissing) return 0.0;
  const double delta = std::abs(static_cast<double>(di) - static_cast<double>(dj)) / d_max_m;
  return std::min(delta, 1.0);
}

}  // namespace rgbdseg
