#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "rgbdseg/camera.hpp"
#include "rgbdseg/io.hpp"

namespace rgbdseg {

/// A box or cylinder resting on the ground plane. Positions are on-plane
/// coordinates in meters: x lateral (right positive), y forward from the
/// point under the camera.
struct SynthObjectSpec {
  enum class Kind { kBox, kCylinder };

  Kind kind = Kind::kBox;
  double x = 0.0;
  double y = 1.1;
  double size_x = 0.12;  // box footprint
  double size_y = 0.10;
  double height = 0.12;
  double radius = 0.05;  // cylinder only
  std::array<std::uint8_t, 3> color = {200, 60, 60};
  double texture_period_m = 0.0;  // > 0 paints a 3D checker onto the surface
  int texture_delta = 40;         // checker brightness swing
};

/// Analytic tabletop scene: a tilted camera above a checkerboard-textured
/// ground plane with objects resting on it.
struct SynthSceneSpec {
  int width = 640;
  int height = 480;
  CameraIntrinsics intrinsics = default_vga_intrinsics();
  double camera_height_m = 1.0;
  double camera_pitch_deg = 40.0;  // downward tilt from horizontal
  double checker_period_m = 0.15;
  std::array<std::uint8_t, 3> checker_a = {100, 100, 100};
  std::array<std::uint8_t, 3> checker_b = {220, 220, 220};
  double noise_sigma_m = 0.0;   // Gaussian depth noise on valid pixels
  double hole_fraction = 0.0;   // fraction of pixels zeroed as shadow blobs
  std::uint32_t seed = 1;
  std::string frame_id = "synth";
  std::vector<SynthObjectSpec> objects;
};

struct SynthScene {
  FramePair frame;
  GroundTruth gt;
};

/// Ray-casts the scene into an exact depth/color render plus per-object
/// masks. Throws std::invalid_argument when an object is not visible.
SynthScene synth_scene(const SynthSceneSpec& spec);

/// Scene description file: key=value lines plus one line per object,
///   box x=<m> y=<m> sx=<m> sy=<m> h=<m> color=r,g,b
///   cylinder x=<m> y=<m> radius=<m> h=<m> color=r,g,b
SynthSceneSpec parse_scene_spec(const std::string& path);

/// Writes the dataset layout consumed by the evaluation harness:
/// rgb/<id>.png, depth/<id>.png, gt/<id>_obj<k>.png and intrinsics.txt.
void write_scene_dataset(const SynthScene& scene, const std::string& out_dir);

/// Draws 1..max_objects separated objects with bright palette colors in the
/// visible ground area.
SynthSceneSpec random_scene_spec(std::mt19937& rng, int min_objects = 1, int max_objects = 4);

}  // namespace rgbdseg
