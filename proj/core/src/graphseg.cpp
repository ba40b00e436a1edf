#include "rgbdseg/graphseg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace rgbdseg {

const char* to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::kW1: return "w1";
    case WeightMode::kW2: return "w2";
    case WeightMode::kAuto: return "auto";
  }
  return "auto";
}

WeightMode weight_mode_from_string(const std::string& s) {
  if (s == "w1") return WeightMode::kW1;
  if (s == "w2") return WeightMode::kW2;
  if (s == "auto") return WeightMode::kAuto;
  throw std::invalid_argument("unknown weight mode: " + s);
}

double color_difference(const PixelHSV& a, const PixelHSV& b, double k_dv, double k_ds) {
  const double dv = k_dv * std::abs(static_cast<double>(a.v) - b.v);
  double dh = std::abs(static_cast<double>(a.h) - b.h);
  if (dh >= 180.0) dh = 360.0 - dh;
  const double theta = dh * std::numbers::pi / 180.0;
  const double chroma2 = static_cast<double>(a.s) * a.s + static_cast<double>(b.s) * b.s -
                         2.0 * a.s * b.s * std::cos(theta);
  const double dsat = k_ds * std::sqrt(std::max(0.0, chroma2));
  const double d =
      std::sqrt(dv * dv + dsat * dsat) / std::sqrt(k_dv * k_dv + k_ds * k_ds);
  return std::min(d, 1.0);
}

namespace {

// Depth-gated coupled term; 0^p with p >= 1 evaluates to 0.
inline double coupled(double gate, double base, double exponent) {
  return gate * std::pow(base, exponent);
}

}  // namespace

double weight_w1(double d_hsv, double d_depth, double d_sal, double k_x, double k_y,
                 double k_s) {
  const double num = k_y * std::log2(1.0 + d_hsv) + k_x * std::log2(1.0 + d_depth) +
                     coupled(d_depth, d_sal, 1.0 + d_depth) +
                     coupled(d_depth, d_hsv, 1.0 + d_depth) + k_s * std::log2(1.0 + d_sal);
  // Denominator written in the same term order as the numerator so the
  // all-ones cue tuple evaluates to exactly 1.
  const double den = k_y + k_x + 1.0 + 1.0 + k_s;
  return num / den;
}

double weight_w2(double d_hsv, double d_depth, double d_bound, double k_x, double k_b) {
  const double num = k_x * (d_depth * std::log2(1.0 + d_hsv)) + k_b * d_bound;
  const double den = k_x + k_b;
  return num / den;
}

WeightedGridGraph build_grid_graph(const FrameCues& cues, const SegParams& params,
                                   double d_max_m, WeightMode mode) {
  if (mode == WeightMode::kAuto) throw std::invalid_argument("mode must be resolved to w1 or w2");
  const ImageHSV& hsv = *cues.hsv;
  const SmoothedDepthMap& depth = *cues.depth;
  const int w = hsv.width();
  const int h = hsv.height();

  WeightedGridGraph g;
  g.width = w;
  g.height = h;
  // Forward neighbors only, so each undirected pair appears once.
  static constexpr int kAxis[2][2] = {{1, 0}, {0, 1}};        // (dx, dy): E, S
  static constexpr int kDiag[2][2] = {{1, 1}, {-1, 1}};       // SE, SW
  std::size_t per_pixel = params.eight_connected ? 4 : 2;
  g.edges.reserve(per_pixel * static_cast<std::size_t>(w) * h);

  auto vertex_cue_max = [](const auto& map, std::int32_t i, std::int32_t j) {
    return std::max(static_cast<double>(map[i]), static_cast<double>(map[j]));
  };

  // Boundary cue per edge. Diagonal edges also look at the two pixels they
  // cross between: a one-pixel 8-connected boundary curve would otherwise
  // be permeable to diagonal graph edges through its staircase corners.
  auto boundary_cue = [&](int y, int x, int ny, int nx) {
    const MaskU8& bound = *cues.boundary;
    double v = std::max<double>(bound.at(y, x), bound.at(ny, nx));
    if (y != ny && x != nx) {
      v = std::max({v, static_cast<double>(bound.at(y, nx)), static_cast<double>(bound.at(ny, x))});
    }
    return v;
  };

  auto add_edge = [&](int y, int x, int ny, int nx) {
    const std::int32_t i = y * w + x;
    const std::int32_t j = ny * w + nx;
    const double d_hsv = color_difference(hsv[i], hsv[j], params.k_dv, params.k_ds);
    const double d_depth = depth_difference(depth, y, x, ny, nx, d_max_m);
    double weight;
    if (mode == WeightMode::kW1) {
      const double d_sal = vertex_cue_max(*cues.saliency, i, j);
      weight = weight_w1(d_hsv, d_depth, d_sal, params.k_x, params.k_y, params.k_s);
    } else {
      const double d_bound = boundary_cue(y, x, ny, nx);
      weight = weight_w2(d_hsv, d_depth, d_bound, params.k_x, params.k_b);
    }
    g.edges.push_back({i, j, static_cast<float>(weight)});
  };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (const auto& d : kAxis) {
        const int nx = x + d[0];
        const int ny = y + d[1];
        if (nx >= 0 && nx < w && ny < h) add_edge(y, x, ny, nx);
      }
      if (params.eight_connected) {
        for (const auto& d : kDiag) {
          const int nx = x + d[0];
          const int ny = y + d[1];
          if (nx >= 0 && nx < w && ny < h) add_edge(y, x, ny, nx);
        }
      }
    }
  }
  return g;
}

DisjointSetForest::DisjointSetForest(std::int32_t n)
    : parent_(n), rank_(n, 0), size_(n, 1), internal_(n, 0.0), sets_(n) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

std::int32_t DisjointSetForest::find(std::int32_t v) {
  std::int32_t root = v;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[v] != root) {
    const std::int32_t next = parent_[v];
    parent_[v] = root;
    v = next;
  }
  return root;
}

void DisjointSetForest::unite(std::int32_t a, std::int32_t b, double edge_weight) {
  const double merged = std::max({internal_[a], internal_[b], edge_weight});
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  internal_[a] = merged;
  if (rank_[a] == rank_[b]) ++rank_[a];
  --sets_;
}

Segmentation segment_graph(const WeightedGridGraph& g, double gamma, int min_region_size) {
  const std::int32_t n = g.vertex_count();
  std::vector<std::uint32_t> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t lhs, std::uint32_t rhs) {
    const float wl = g.edges[lhs].w;
    const float wr = g.edges[rhs].w;
    return wl < wr || (wl == wr && lhs < rhs);
  });

  DisjointSetForest forest(n);
  for (std::uint32_t idx : order) {
    const GraphEdge& e = g.edges[idx];
    const std::int32_t a = forest.find(e.a);
    const std::int32_t b = forest.find(e.b);
    if (a == b) continue;
    const double limit_a = forest.internal_diff(a) + gamma / forest.size(a);
    const double limit_b = forest.internal_diff(b) + gamma / forest.size(b);
    if (e.w <= std::min(limit_a, limit_b)) {
      forest.unite(a, b, e.w);
    }
  }

  if (min_region_size > 0) {
    // Scanning in ascending weight order folds each small region into the
    // neighbor it connects to most cheaply.
    for (std::uint32_t idx : order) {
      const GraphEdge& e = g.edges[idx];
      const std::int32_t a = forest.find(e.a);
      const std::int32_t b = forest.find(e.b);
      if (a == b) continue;
      if (forest.size(a) < min_region_size || forest.size(b) < min_region_size) {
        forest.unite(a, b, e.w);
      }
    }
  }

  Segmentation seg;
  seg.labels = LabelMap(g.width, g.height, -1);
  std::vector<std::int32_t> root_label(n, -1);
  std::int32_t next = 0;
  for (std::int32_t v = 0; v < n; ++v) {
    const std::int32_t root = forest.find(v);
    if (root_label[root] < 0) root_label[root] = next++;
    seg.labels[v] = root_label[root];
  }
  seg.region_count = next;
  return seg;
}

std::vector<Region> extract_regions(const Segmentation& seg) {
  std::vector<Region> regions(seg.region_count);
  const int w = seg.labels.width();
  for (std::int32_t id = 0; id < seg.region_count; ++id) regions[id].id = id;

  for (int y = 0; y < seg.labels.height(); ++y) {
    for (int x = 0; x < w; ++x) {
      Region& r = regions[seg.labels.at(y, x)];
      if (r.pixels.empty()) {
        r.min_x = r.max_x = x;
        r.min_y = r.max_y = y;
      } else {
        r.min_x = std::min(r.min_x, x);
        r.max_x = std::max(r.max_x, x);
        r.min_y = std::min(r.min_y, y);
        r.max_y = std::max(r.max_y, y);
      }
      r.pixels.push_back(y * w + x);
    }
  }
  return regions;
}

}  // namespace rgbdseg
