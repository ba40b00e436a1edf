#include "rgbdseg/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

namespace rgbdseg {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;

  PngReader() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png) info = png_create_info_struct(png);
  }
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
  bool ok() const { return png && info; }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;

  PngWriter() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png) info = png_create_info_struct(png);
  }
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
  bool ok() const { return png && info; }
};

FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open " + path);
  return f;
}

}  // namespace

ImageRGB load_png_rgb(const std::string& path) {
  FilePtr f = open_file(path, "rb");
  PngReader r;
  if (!r.ok()) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(r.png))) throw IoError("failed to decode " + path);

  png_init_io(r.png, f.get());
  png_read_info(r.png, r.info);

  const int color = png_get_color_type(r.png, r.info);
  const int depth = png_get_bit_depth(r.png, r.info);
  if (depth == 16) png_set_strip_16(r.png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
    if (depth < 8) png_set_expand_gray_1_2_4_to_8(r.png);
    png_set_gray_to_rgb(r.png);
  }
  if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
  png_set_strip_alpha(r.png);
  png_read_update_info(r.png, r.info);

  const int w = static_cast<int>(png_get_image_width(r.png, r.info));
  const int h = static_cast<int>(png_get_image_height(r.png, r.info));
  if (png_get_rowbytes(r.png, r.info) != static_cast<std::size_t>(w) * 3) {
    throw IoError("unexpected row layout in " + path);
  }

  ImageRGB img(w, h);
  std::vector<png_bytep> rows(h);
  for (int y = 0; y < h; ++y) rows[y] = img.data().data() + static_cast<std::size_t>(y) * w * 3;
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);
  return img;
}

Map2D<std::uint16_t> load_png_gray16(const std::string& path) {
  FilePtr f = open_file(path, "rb");
  PngReader r;
  if (!r.ok()) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(r.png))) throw IoError("failed to decode " + path);

  png_init_io(r.png, f.get());
  png_read_info(r.png, r.info);

  if (png_get_color_type(r.png, r.info) != PNG_COLOR_TYPE_GRAY ||
      png_get_bit_depth(r.png, r.info) != 16) {
    throw IoError(path + ": expected 16-bit single-channel PNG");
  }
  png_set_swap(r.png);  // PNG stores 16-bit big-endian
  png_read_update_info(r.png, r.info);

  const int w = static_cast<int>(png_get_image_width(r.png, r.info));
  const int h = static_cast<int>(png_get_image_height(r.png, r.info));

  Map2D<std::uint16_t> map(w, h);
  std::vector<png_bytep> rows(h);
  for (int y = 0; y < h; ++y) {
    rows[y] = reinterpret_cast<png_bytep>(map.data().data() + static_cast<std::size_t>(y) * w);
  }
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);
  return map;
}

void save_png_rgb(const std::string& path, const ImageRGB& img) {
  FilePtr f = open_file(path, "wb");
  PngWriter wtr;
  if (!wtr.ok()) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(wtr.png))) throw IoError("failed to encode " + path);

  png_init_io(wtr.png, f.get());
  png_set_IHDR(wtr.png, wtr.info, img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(wtr.png, wtr.info);

  for (int y = 0; y < img.height(); ++y) {
    png_write_row(wtr.png, const_cast<png_bytep>(img.data().data() +
                                                 static_cast<std::size_t>(y) * img.width() * 3));
  }
  png_write_end(wtr.png, nullptr);
}

void save_png_gray16(const std::string& path, const Map2D<std::uint16_t>& map) {
  FilePtr f = open_file(path, "wb");
  PngWriter wtr;
  if (!wtr.ok()) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(wtr.png))) throw IoError("failed to encode " + path);

  png_init_io(wtr.png, f.get());
  png_set_IHDR(wtr.png, wtr.info, map.width(), map.height(), 16, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(wtr.png, wtr.info);
  png_set_swap(wtr.png);

  for (int y = 0; y < map.height(); ++y) {
    auto* row = const_cast<std::uint16_t*>(map.data().data() + static_cast<std::size_t>(y) * map.width());
    png_write_row(wtr.png, reinterpret_cast<png_bytep>(row));
  }
  png_write_end(wtr.png, nullptr);
}

void save_png_gray8(const std::string& path, const MaskU8& map) {
  FilePtr f = open_file(path, "wb");
  PngWriter wtr;
  if (!wtr.ok()) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(wtr.png))) throw IoError("failed to encode " + path);

  png_init_io(wtr.png, f.get());
  png_set_IHDR(wtr.png, wtr.info, map.width(), map.height(), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(wtr.png, wtr.info);
  for (int y = 0; y < map.height(); ++y) {
    auto* row = const_cast<std::uint8_t*>(map.data().data() + static_cast<std::size_t>(y) * map.width());
    png_write_row(wtr.png, row);
  }
  png_write_end(wtr.png, nullptr);
}

CameraIntrinsics load_intrinsics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  CameraIntrinsics k;
  if (!(in >> k.fx >> k.fy >> k.cx >> k.cy)) {
    throw IoError(path + ": expected four numbers (fx fy cx cy)");
  }
  if (!k.valid()) throw IoError(path + ": focal lengths must be positive");
  return k;
}

void save_intrinsics(const std::string& path, const CameraIntrinsics& k) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out.precision(17);
  out << k.fx << " " << k.fy << " " << k.cx << " " << k.cy << "\n";
}

FramePair load_frame(const std::string& rgb_path, const std::string& depth_path,
                     const std::string& intrinsics_path) {
  FramePair frame;
  frame.rgb = load_png_rgb(rgb_path);

  const Map2D<std::uint16_t> depth_mm = load_png_gray16(depth_path);
  if (depth_mm.width() != frame.rgb.width() || depth_mm.height() != frame.rgb.height()) {
    throw IoError("unregistered pair: " + rgb_path + " vs " + depth_path);
  }
  frame.depth = DepthMap(depth_mm.width(), depth_mm.height());
  for (std::size_t i = 0; i < frame.depth.pixel_count(); ++i) {
    frame.depth[i] = depth_mm[i] * 1e-3f;
  }

  if (!intrinsics_path.empty()) {
    frame.intrinsics = load_intrinsics(intrinsics_path);
  } else {
    std::cerr << "warning: no intrinsics file, using VGA defaults\n";
    frame.intrinsics = default_vga_intrinsics();
  }
  frame.frame_id = std::filesystem::path(rgb_path).stem().string();
  return frame;
}

GroundTruth load_ground_truth(const std::string& dir, const std::string& frame_id) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);

  GroundTruth gt;
  const std::string prefix = frame_id + "_obj";
  std::vector<std::pair<int, fs::path>> found;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".png") continue;
    const std::string stem = entry.path().stem().string();
    if (stem.rfind(prefix, 0) != 0) continue;
    try {
      found.emplace_back(std::stoi(stem.substr(prefix.size())), entry.path());
    } catch (const std::exception&) {
      continue;  // not a mask index
    }
  }
  std::sort(found.begin(), found.end());

  for (const auto& [id, path] : found) {
    const ImageRGB img = load_png_rgb(path.string());
    MaskU8 mask(img.width(), img.height(), 0);
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        const std::uint8_t* p = img.px(y, x);
        mask.at(y, x) = (p[0] || p[1] || p[2]) ? 1 : 0;
      }
    }
    gt.masks.push_back(std::move(mask));
    gt.object_ids.push_back(id);
  }
  if (gt.masks.empty()) {
    std::cerr << "warning: no ground-truth masks for frame " << frame_id << " under " << dir
              << "\n";
  }
  return gt;
}

void region_color(std::int32_t id, std::uint8_t rgb_out[3]) {
  // Golden-ratio hue walk, full saturation/value.
  const double hue = std::fmod(0.61803398875 * (id + 1), 1.0) * 360.0;
  const double c = 1.0;
  const double hp = hue / 60.0;
  const double xval = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c; g = xval; break;
    case 1: r = xval; g = c; break;
    case 2: g = c; b = xval; break;
    case 3: g = xval; b = c; break;
    case 4: r = xval; b = c; break;
    default: r = c; b = xval; break;
  }
  rgb_out[0] = static_cast<std::uint8_t>(55 + 200 * r);
  rgb_out[1] = static_cast<std::uint8_t>(55 + 200 * g);
  rgb_out[2] = static_cast<std::uint8_t>(55 + 200 * b);
}

void save_label_map(const std::string& path, const LabelMap& labels) {
  Map2D<std::uint16_t> raw(labels.width(), labels.height());
  for (std::size_t i = 0; i < labels.pixel_count(); ++i) {
    raw[i] = static_cast<std::uint16_t>(labels[i]);
  }
  save_png_gray16(path, raw);
}

LabelMap load_label_map(const std::string& path) {
  const Map2D<std::uint16_t> raw = load_png_gray16(path);
  LabelMap labels(raw.width(), raw.height());
  for (std::size_t i = 0; i < raw.pixel_count(); ++i) labels[i] = raw[i];
  return labels;
}

void write_outputs(const Segmentation& seg, const std::vector<Region>& regions,
                   const std::vector<RegionStats>& stats,
                   const std::vector<RegionVerdict>& verdicts, const ImageRGB& rgb,
                   const std::string& out_dir, const std::string& frame_id) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) throw IoError("cannot create output directory " + out_dir);

  save_label_map((fs::path(out_dir) / (frame_id + "_labels.png")).string(), seg.labels);

  // Overlay: accepted regions blended over the input image.
  ImageRGB overlay = rgb;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (i >= verdicts.size() || !verdicts[i].accepted) continue;
    std::uint8_t tint[3];
    region_color(regions[i].id, tint);
    for (std::int32_t p : regions[i].pixels) {
      std::uint8_t* dst = overlay.data().data() + static_cast<std::size_t>(p) * 3;
      for (int c = 0; c < 3; ++c) dst[c] = static_cast<std::uint8_t>((dst[c] + tint[c]) / 2);
    }
  }
  save_png_rgb((fs::path(out_dir) / (frame_id + "_overlay.png")).string(), overlay);

  std::ofstream report((fs::path(out_dir) / (frame_id + "_regions.txt")).string());
  if (!report) throw IoError("cannot write region report in " + out_dir);
  report.precision(17);
  report << "# rgbdseg region report\n";
  report << "frame=" << frame_id << "\n";
  report << "width=" << seg.labels.width() << "\n";
  report << "height=" << seg.labels.height() << "\n";
  report << "region_count=" << regions.size() << "\n";
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const Region& r = regions[i];
    const RegionStats& s = stats[i];
    const RegionVerdict& v = verdicts[i];
    report << "region=" << r.id << " size=" << r.size() << " bbox=" << r.min_x << ','
           << r.min_y << ',' << r.max_x << ',' << r.max_y << " centroid=" << s.shape.centroid_x
           << ',' << s.shape.centroid_y << " lambda1=" << s.shape.lambda1
           << " lambda2=" << s.shape.lambda2 << " eccentricity=" << s.shape.eccentricity
           << " mean_depth=" << s.mean_depth_m
           << " verdict=" << (v.accepted ? "accepted" : "rejected") << " reasons=";
    for (std::size_t j = 0; j < v.reasons.size(); ++j) {
      if (j) report << ',';
      report << to_string(v.reasons[j]);
    }
    report << "\n";
  }
}

}  // namespace rgbdseg
