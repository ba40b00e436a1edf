#include <random>
#include <set>

#include "doctest.h"
#include "rgbdseg/graphseg.hpp"
#include "support/oracles.hpp"

using namespace rgbdseg;

namespace {

// Random weighted grid graph over a wxh lattice, 8-connected.
WeightedGridGraph random_graph(std::mt19937& rng, int w, int h, double zero_fraction = 0.2) {
  WeightedGridGraph g;
  g.width = w;
  g.height = h;
  std::uniform_real_distribution<float> weight(0.f, 1.f);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto add = [&](int y, int x, int ny, int nx) {
    const float wv = unit(rng) < zero_fraction ? 0.f : weight(rng);
    g.edges.push_back({y * w + x, ny * w + nx, wv});
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) add(y, x, y, x + 1);
      if (y + 1 < h) add(y, x, y + 1, x);
      if (x + 1 < w && y + 1 < h) add(y, x, y + 1, x + 1);
      if (x > 0 && y + 1 < h) add(y, x, y + 1, x - 1);
    }
  }
  return g;
}

std::vector<int> labels_vector(const Segmentation& seg) {
  return std::vector<int>(seg.labels.data().begin(), seg.labels.data().end());
}

}  // namespace

TEST_CASE("color_difference examples") {
  const double k_dv = 4.5, k_ds = 0.1;

  const PixelHSV a{120.f, 0.7f, 0.4f};
  CHECK(color_difference(a, a, k_dv, k_ds) == doctest::Approx(0.0));

  // Opposite hues at full saturation with a full value step: the raw metric
  // slightly exceeds its normalizer and must clamp to 1.
  const PixelHSV red{0.f, 1.f, 1.f};
  const PixelHSV cyan_dark{180.f, 1.f, 0.f};
  CHECK(color_difference(red, cyan_dark, k_dv, k_ds) == doctest::Approx(1.0));

  // Hue is irrelevant at zero saturation.
  const PixelHSV g1{0.f, 0.f, 0.5f};
  const PixelHSV g2{90.f, 0.f, 0.5f};
  CHECK(color_difference(g1, g2, k_dv, k_ds) == doctest::Approx(0.0));
}

TEST_CASE("color_difference unclamped value exceeds 1 by under 0.1%") {
  // Checks the clamp is actually doing work on the extreme pair.
  const double k_dv = 4.5, k_ds = 0.1;
  const double dv = k_dv * 1.0;
  const double ds = k_ds * 2.0;  // s_i = s_j = 1, theta = 180 deg
  const double raw = std::sqrt(dv * dv + ds * ds) / std::sqrt(k_dv * k_dv + k_ds * k_ds);
  CHECK(raw > 1.0);
  CHECK(raw < 1.001);
}

TEST_CASE("weight_w1 reference points") {
  const double k_x = 1.05, k_y = 1.5, k_s = 0.5;
  CHECK(weight_w1(0, 0, 0, k_x, k_y, k_s) == 0.0);
  CHECK(weight_w1(1, 1, 1, k_x, k_y, k_s) == 1.0);
  // Coupled terms vanish without depth.
  CHECK(weight_w1(1, 0, 0, k_x, k_y, k_s) == doctest::Approx(1.5 / 5.05).epsilon(1e-12));
}

TEST_CASE("weight_w2 reference points") {
  const double k_x = 7.5, k_b = 0.66;
  CHECK(weight_w2(0, 1, 0, k_x, k_b) == 0.0);
  CHECK(weight_w2(1, 1, 1, k_x, k_b) == 1.0);
  CHECK(weight_w2(0, 1, 1, k_x, k_b) == doctest::Approx(0.66 / 8.16).epsilon(1e-12));
}

TEST_CASE("weight functions stay in [0,1] over random cues") {
  struct ParamSet {
    double k_x, k_y, k_s, k_b;
  };
  const ParamSet sets[] = {{1.05, 1.5, 0.5, 0.66}, {7.5, 1.5, 0.5, 0.66}, {1.2, 1.5, 0.5, 0.05}};

  std::mt19937 rng(101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& ps : sets) {
    for (int i = 0; i < 20000; ++i) {
      const double h = unit(rng), d = unit(rng), s = unit(rng);
      const double w1 = weight_w1(h, d, s, ps.k_x, ps.k_y, ps.k_s);
      const double w2 = weight_w2(h, d, s > 0.5 ? 1.0 : 0.0, ps.k_x, ps.k_b);
      CHECK(w1 >= 0.0);
      CHECK(w1 <= 1.0);
      CHECK(w2 >= 0.0);
      CHECK(w2 <= 1.0);
    }
  }
}

TEST_CASE("weight_w1 is non-decreasing in the depth cue") {
  const double k_x = 1.05, k_y = 1.5, k_s = 0.5;
  for (double h = 0.0; h <= 1.0; h += 0.25) {
    for (double s = 0.0; s <= 1.0; s += 0.25) {
      double prev = -1.0;
      for (double d = 0.0; d <= 1.0; d += 0.02) {
        const double w = weight_w1(h, d, s, k_x, k_y, k_s);
        CHECK(w >= prev - 1e-12);
        prev = w;
      }
    }
  }
}

TEST_CASE("build_grid_graph edge counts and zero cues") {
  ImageHSV hsv2(2, 2);
  SmoothedDepthMap d2(2, 2, 1.0f);
  MaskU8 bound2(2, 2, 0);
  FrameCues cues{&hsv2, &d2, nullptr, &bound2};
  SegParams params;

  const WeightedGridGraph g2 = build_grid_graph(cues, params, 10.0, WeightMode::kW2);
  CHECK(g2.edges.size() == 6);

  ImageHSV hsv3(3, 3);
  SmoothedDepthMap d3(3, 3, 1.0f);
  MaskU8 bound3(3, 3, 0);
  FrameCues cues3{&hsv3, &d3, nullptr, &bound3};
  const WeightedGridGraph g3 = build_grid_graph(cues3, params, 10.0, WeightMode::kW2);
  CHECK(g3.edges.size() == 20);

  for (const auto& e : g3.edges) CHECK(e.w == 0.f);  // uniform everything

  params.eight_connected = false;
  const WeightedGridGraph g4 = build_grid_graph(cues3, params, 10.0, WeightMode::kW2);
  CHECK(g4.edges.size() == 12);
}

TEST_CASE("disjoint-set forest bookkeeping") {
  DisjointSetForest forest(6);
  CHECK(forest.set_count() == 6);
  for (int v = 0; v < 6; ++v) {
    CHECK(forest.find(v) == v);
    CHECK(forest.size(v) == 1);
    CHECK(forest.internal_diff(v) == 0.0);
  }

  forest.unite(forest.find(0), forest.find(1), 0.1);
  forest.unite(forest.find(2), forest.find(3), 0.2);
  forest.unite(forest.find(0), forest.find(2), 0.3);

  const std::int32_t root = forest.find(0);
  CHECK(forest.find(root) == root);  // find of a root is itself
  CHECK(forest.find(1) == root);
  CHECK(forest.find(3) == root);
  CHECK(forest.size(root) == 4);
  CHECK(forest.internal_diff(root) == 0.3);
  CHECK(forest.set_count() == 3);

  // sizes over all roots partition the elements
  int total = 0;
  for (int v = 0; v < 6; ++v) {
    if (forest.find(v) == v) total += forest.size(v);
  }
  CHECK(total == 6);
}

TEST_CASE("grid graphs carry no duplicate edges, no self-loops, weights in [0,1]") {
  std::mt19937 rng(808);
  std::uniform_int_distribution<int> byte(0, 255);
  const int w = 9, h = 7;
  ImageRGB img(w, h);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(byte(rng));
  const ImageHSV hsv = rgb_to_hsv(img);
  SmoothedDepthMap depth(w, h);
  std::uniform_real_distribution<float> dval(0.f, 3.f);
  for (auto& v : depth.data()) v = dval(rng);
  MaskU8 bound(w, h, 0);
  bound.at(3, 3) = 1;

  FrameCues cues{&hsv, &depth, nullptr, &bound};
  const WeightedGridGraph g = build_grid_graph(cues, SegParams{}, 10.0, WeightMode::kW2);

  std::set<std::pair<std::int32_t, std::int32_t>> seen;
  for (const auto& e : g.edges) {
    CHECK(e.a != e.b);
    CHECK(e.w >= 0.f);
    CHECK(e.w <= 1.f);
    CHECK(std::isfinite(e.w));
    const auto key = std::minmax(e.a, e.b);
    CHECK(seen.insert(key).second);
  }
}

TEST_CASE("one-pixel staircase boundaries are not permeable to diagonal edges") {
  // Identical color and depth everywhere; the only cue is a diagonal
  // boundary line. The regions on either side must stay separate even
  // though diagonal graph edges hop across the staircase corners.
  const int n = 12;
  ImageHSV hsv(n, n);
  SmoothedDepthMap depth(n, n, 1.0f);
  MaskU8 boundary(n, n, 0);
  for (int i = 0; i < n; ++i) boundary.at(i, i) = 1;

  FrameCues cues{&hsv, &depth, nullptr, &boundary};
  SegParams params;
  params.gamma = 1e-6;
  const WeightedGridGraph g = build_grid_graph(cues, params, 10.0, WeightMode::kW2);
  const Segmentation seg = segment_graph(g, params.gamma, 0);

  CHECK(seg.labels.at(0, n - 1) != seg.labels.at(n - 1, 0));
}

TEST_CASE("segment_graph matches the naive reference on random graphs") {
  std::mt19937 rng(202);
  std::uniform_int_distribution<int> dim(2, 10);
  std::uniform_real_distribution<double> gamma_dist(0.0, 2.0);

  for (int trial = 0; trial < 60; ++trial) {
    const int w = dim(rng);
    const int h = dim(rng);
    const WeightedGridGraph g = random_graph(rng, w, h);
    const double gamma = gamma_dist(rng);
    const int min_size = (trial % 3 == 0) ? 4 : 0;

    const Segmentation seg = segment_graph(g, gamma, min_size);
    const std::vector<int> expected = oracles::naive_segment(g, gamma, min_size);
    CHECK(oracles::normalize_partition(labels_vector(seg)) == expected);
  }
}

TEST_CASE("zero gamma yields the zero-weight connected components") {
  std::mt19937 rng(303);
  for (int trial = 0; trial < 20; ++trial) {
    const WeightedGridGraph g = random_graph(rng, 8, 8, 0.35);
    const Segmentation seg = segment_graph(g, 0.0, 0);
    CHECK(oracles::normalize_partition(labels_vector(seg)) == oracles::zero_weight_components(g));
  }
}

TEST_CASE("huge gamma merges everything") {
  std::mt19937 rng(404);
  const WeightedGridGraph g = random_graph(rng, 8, 6, 0.0);
  const Segmentation seg = segment_graph(g, 1e6, 0);
  CHECK(seg.region_count == 1);
}

TEST_CASE("two blocks at different depths split into two regions") {
  // 20x10 lattice, left and right halves internally zero-weight, the
  // columns across the middle carry a strong weight.
  const int w = 20, h = 10;
  WeightedGridGraph g;
  g.width = w;
  g.height = h;
  auto side = [&](int x) { return x < 10 ? 0 : 1; };
  auto add = [&](int y, int x, int ny, int nx) {
    const float wv = side(x) == side(nx) ? 0.f : 0.8f;
    g.edges.push_back({y * w + x, ny * w + nx, wv});
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) add(y, x, y, x + 1);
      if (y + 1 < h) add(y, x, y + 1, x);
      if (x + 1 < w && y + 1 < h) add(y, x, y + 1, x + 1);
      if (x > 0 && y + 1 < h) add(y, x, y + 1, x - 1);
    }
  }
  const Segmentation seg = segment_graph(g, 0.5, 0);
  CHECK(seg.region_count == 2);
  CHECK(seg.labels.at(0, 0) != seg.labels.at(0, 19));
}

TEST_CASE("region count is non-increasing in gamma") {
  std::mt19937 rng(505);
  const WeightedGridGraph g = random_graph(rng, 10, 10, 0.1);
  int prev = std::numeric_limits<int>::max();
  for (double gamma : {0.0, 0.01, 0.05, 0.2, 0.5, 1.0, 5.0, 100.0}) {
    const Segmentation seg = segment_graph(g, gamma, 0);
    CHECK(seg.region_count <= prev);
    prev = seg.region_count;
  }
}

TEST_CASE("segmentation is always a partition") {
  std::mt19937 rng(606);
  const WeightedGridGraph g = random_graph(rng, 12, 9, 0.25);
  const Segmentation seg = segment_graph(g, 0.3, 6);
  const std::vector<Region> regions = extract_regions(seg);

  std::size_t total = 0;
  for (const Region& r : regions) total += r.pixels.size();
  CHECK(total == seg.labels.pixel_count());
  CHECK(static_cast<std::int32_t>(regions.size()) == seg.region_count);
}

TEST_CASE("extract_regions matches flood fill on segment_graph output") {
  std::mt19937 rng(707);
  const WeightedGridGraph g = random_graph(rng, 10, 8, 0.3);
  const Segmentation seg = segment_graph(g, 0.4, 0);
  const std::vector<Region> regions = extract_regions(seg);

  for (const Region& r : regions) {
    // Every region from the forest is a single connected component.
    const auto components = oracles::flood_fill_components(seg.labels, r.id);
    REQUIRE(components.size() == 1);
    std::vector<std::int32_t> pixels = r.pixels;
    std::sort(pixels.begin(), pixels.end());
    CHECK(pixels == components[0]);
  }
}

TEST_CASE("single region extraction") {
  Segmentation seg;
  seg.labels = LabelMap(5, 4, 0);
  seg.region_count = 1;
  const auto regions = extract_regions(seg);
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].size() == 20);
  CHECK(regions[0].min_x == 0);
  CHECK(regions[0].max_x == 4);
  CHECK(regions[0].min_y == 0);
  CHECK(regions[0].max_y == 3);
}
