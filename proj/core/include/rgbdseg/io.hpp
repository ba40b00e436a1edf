#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgbdseg/camera.hpp"
#include "rgbdseg/graphseg.hpp"
#include "rgbdseg/image.hpp"
#include "rgbdseg/postproc.hpp"

namespace rgbdseg {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One registered RGB-D frame.
struct FramePair {
  ImageRGB rgb;
  DepthMap depth;
  CameraIntrinsics intrinsics;
  std::string frame_id;
};

/// Per-object binary masks; instances may overlap.
struct GroundTruth {
  std::vector<MaskU8> masks;
  std::vector<int> object_ids;

  int object_count() const { return static_cast<int>(masks.size()); }
};

// --- PNG primitives -------------------------------------------------------

ImageRGB load_png_rgb(const std::string& path);
Map2D<std::uint16_t> load_png_gray16(const std::string& path);
void save_png_rgb(const std::string& path, const ImageRGB& img);
void save_png_gray16(const std::string& path, const Map2D<std::uint16_t>& map);
void save_png_gray8(const std::string& path, const MaskU8& map);

// --- frame and dataset I/O ------------------------------------------------

/// Depth files are 16-bit single-channel PNG in millimeters, zero meaning
/// missing; values are converted to meters. The intrinsics file holds four
/// whitespace-separated numbers (fx fy cx cy); an empty path falls back to
/// the VGA defaults with a warning on stderr.
FramePair load_frame(const std::string& rgb_path, const std::string& depth_path,
                     const std::string& intrinsics_path = {});

CameraIntrinsics load_intrinsics(const std::string& path);
void save_intrinsics(const std::string& path, const CameraIntrinsics& k);

/// Loads every mask named <frame_id>_obj<k>.png under dir. Missing masks are
/// a valid (empty) annotation; a missing directory is an error.
GroundTruth load_ground_truth(const std::string& dir, const std::string& frame_id);

/// Writes the 16-bit label map, the overlay with accepted regions
/// highlighted, and the line-oriented region report:
///   region=<id> size=.. bbox=x0,y0,x1,y1 centroid=x,y lambda1=.. lambda2=..
///   eccentricity=.. mean_depth=.. verdict=accepted|rejected reasons=a,b
void write_outputs(const Segmentation& seg, const std::vector<Region>& regions,
                   const std::vector<RegionStats>& stats,
                   const std::vector<RegionVerdict>& verdicts, const ImageRGB& rgb,
                   const std::string& out_dir, const std::string& frame_id);

LabelMap load_label_map(const std::string& path);
void save_label_map(const std::string& path, const LabelMap& labels);

/// Deterministic bright color for overlay highlighting.
void region_color(std::int32_t id, std::uint8_t rgb_out[3]);

}  // namespace rgbdseg
