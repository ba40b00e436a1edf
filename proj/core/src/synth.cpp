#include "rgbdseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rgbdseg {

namespace {

// World frame: X right, Y forward along the ground, Z up; origin on the
// plane directly under the camera.
struct CameraPose {
  Vec3 position;
  Vec3 x_axis, y_axis, z_axis;  // camera axes expressed in world coords

  Vec3 ray_world(double px, double py, const CameraIntrinsics& k) const {
    // Unnormalized camera-frame ray with unit Z, so the world-ray parameter
    // equals camera depth.
    const Vec3 dir_cam{(px - k.cx) / k.fx, (py - k.cy) / k.fy, 1.0};
    return x_axis * dir_cam.x + y_axis * dir_cam.y + z_axis * dir_cam.z;
  }
};

CameraPose make_pose(const SynthSceneSpec& spec) {
  const double phi = spec.camera_pitch_deg * std::numbers::pi / 180.0;
  CameraPose pose;
  pose.position = {0.0, 0.0, spec.camera_height_m};
  pose.x_axis = {1.0, 0.0, 0.0};
  pose.y_axis = {0.0, -std::sin(phi), -std::cos(phi)};  // image down
  pose.z_axis = {0.0, std::cos(phi), -std::sin(phi)};   // optical axis
  return pose;
}

struct Hit {
  double t = std::numeric_limits<double>::infinity();
  int object = -1;  // -1 ground plane
};

// Smallest positive parameter where the ray crosses the ground plane z=0.
double intersect_plane(const Vec3& origin, const Vec3& dir) {
  if (dir.z >= 0.0) return std::numeric_limits<double>::infinity();
  const double t = -origin.z / dir.z;
  return t > 0.0 ? t : std::numeric_limits<double>::infinity();
}

double intersect_box(const Vec3& origin, const Vec3& dir, const SynthObjectSpec& obj) {
  const double lo[3] = {obj.x - obj.size_x / 2, obj.y - obj.size_y / 2, 0.0};
  const double hi[3] = {obj.x + obj.size_x / 2, obj.y + obj.size_y / 2, obj.height};
  const double o[3] = {origin.x, origin.y, origin.z};
  const double d[3] = {dir.x, dir.y, dir.z};

  double t_enter = 0.0;
  double t_exit = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (d[a] == 0.0) {
      if (o[a] < lo[a] || o[a] > hi[a]) return std::numeric_limits<double>::infinity();
      continue;
    }
    double t0 = (lo[a] - o[a]) / d[a];
    double t1 = (hi[a] - o[a]) / d[a];
    if (t0 > t1) std::swap(t0, t1);
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
  }
  if (t_enter > t_exit || t_enter <= 0.0) return std::numeric_limits<double>::infinity();
  return t_enter;
}

double intersect_cylinder(const Vec3& origin, const Vec3& dir, const SynthObjectSpec& obj) {
  double best = std::numeric_limits<double>::infinity();

  // Side surface.
  const double ox = origin.x - obj.x;
  const double oy = origin.y - obj.y;
  const double a = dir.x * dir.x + dir.y * dir.y;
  if (a > 0.0) {
    const double b = 2.0 * (ox * dir.x + oy * dir.y);
    const double c = ox * ox + oy * oy - obj.radius * obj.radius;
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      for (double t : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)}) {
        if (t <= 0.0) continue;
        const double z = origin.z + t * dir.z;
        if (z >= 0.0 && z <= obj.height) best = std::min(best, t);
      }
    }
  }

  // Top cap.
  if (dir.z != 0.0) {
    const double t = (obj.height - origin.z) / dir.z;
    if (t > 0.0) {
      const double x = origin.x + t * dir.x - obj.x;
      const double y = origin.y + t * dir.y - obj.y;
      if (x * x + y * y <= obj.radius * obj.radius) best = std::min(best, t);
    }
  }
  return best;
}

}  // namespace

SynthScene synth_scene(const SynthSceneSpec& spec) {
  const CameraPose pose = make_pose(spec);
  const int w = spec.width;
  const int h = spec.height;

  SynthScene scene;
  scene.frame.rgb = ImageRGB(w, h);
  scene.frame.depth = DepthMap(w, h);
  scene.frame.intrinsics = spec.intrinsics;
  scene.frame.frame_id = spec.frame_id;
  for (std::size_t i = 0; i < spec.objects.size(); ++i) {
    scene.gt.masks.emplace_back(w, h, 0);
    scene.gt.object_ids.push_back(static_cast<int>(i));
  }

  std::vector<std::size_t> visible(spec.objects.size(), 0);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Vec3 dir = pose.ray_world(x, y, spec.intrinsics);

      Hit hit;
      const double t_plane = intersect_plane(pose.position, dir);
      if (t_plane < hit.t) hit = {t_plane, -1};
      for (std::size_t i = 0; i < spec.objects.size(); ++i) {
        const SynthObjectSpec& obj = spec.objects[i];
        const double t = obj.kind == SynthObjectSpec::Kind::kBox
                             ? intersect_box(pose.position, dir, obj)
                             : intersect_cylinder(pose.position, dir, obj);
        if (t < hit.t) hit = {t, static_cast<int>(i)};
      }

      if (!std::isfinite(hit.t)) {
        // Sky: no depth return, dark pixel.
        scene.frame.depth.at(y, x) = DepthMap::kMissing;
        scene.frame.rgb.set(y, x, 30, 30, 35);
        continue;
      }

      // Camera-frame depth equals the ray parameter since the camera ray
      // has unit Z component.
      scene.frame.depth.at(y, x) = static_cast<float>(hit.t);

      if (hit.object >= 0) {
        const SynthObjectSpec& obj = spec.objects[hit.object];
        int c[3] = {obj.color[0], obj.color[1], obj.color[2]};
        if (obj.texture_period_m > 0.0) {
          const Vec3 p = pose.position + dir * hit.t;
          const double period = obj.texture_period_m;
          const long cell = static_cast<long>(std::floor(p.x / period)) +
                            static_cast<long>(std::floor(p.y / period)) +
                            static_cast<long>(std::floor(p.z / period));
          const int delta = (cell & 1) ? obj.texture_delta : -obj.texture_delta;
          for (int ch = 0; ch < 3; ++ch) c[ch] = std::clamp(c[ch] + delta, 0, 255);
        }
        scene.frame.rgb.set(y, x, static_cast<std::uint8_t>(c[0]), static_cast<std::uint8_t>(c[1]),
                            static_cast<std::uint8_t>(c[2]));
        scene.gt.masks[hit.object].at(y, x) = 1;
        ++visible[hit.object];
      } else {
        const Vec3 p = pose.position + dir * hit.t;
        const long ix = static_cast<long>(std::floor(p.x / spec.checker_period_m));
        const long iy = static_cast<long>(std::floor(p.y / spec.checker_period_m));
        const auto& c = ((ix + iy) & 1) ? spec.checker_b : spec.checker_a;
        scene.frame.rgb.set(y, x, c[0], c[1], c[2]);
      }
    }
  }

  for (std::size_t i = 0; i < visible.size(); ++i) {
    if (visible[i] == 0) {
      throw std::invalid_argument("synth_scene: object " + std::to_string(i) +
                                  " outside camera view");
    }
  }

  std::mt19937 rng(spec.seed);
  if (spec.noise_sigma_m > 0.0) {
    std::normal_distribution<double> noise(0.0, spec.noise_sigma_m);
    for (std::size_t i = 0; i < scene.frame.depth.pixel_count(); ++i) {
      if (scene.frame.depth[i] != DepthMap::kMissing) {
        scene.frame.depth[i] =
            std::max(1e-3f, scene.frame.depth[i] + static_cast<float>(noise(rng)));
      }
    }
  }
  if (spec.hole_fraction > 0.0) {
    const std::size_t target =
        static_cast<std::size_t>(spec.hole_fraction * scene.frame.depth.pixel_count());
    std::uniform_int_distribution<int> px(0, w - 1), py(0, h - 1), radius(2, 6);
    std::size_t zeroed = 0;
    while (zeroed < target) {
      const int cx = px(rng);
      const int cy = py(rng);
      const int r = radius(rng);
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (dx * dx + dy * dy > r * r) continue;
          const int yy = cy + dy;
          const int xx = cx + dx;
          if (!scene.frame.depth.in_bounds(yy, xx)) continue;
          if (scene.frame.depth.at(yy, xx) != DepthMap::kMissing) {
            scene.frame.depth.at(yy, xx) = DepthMap::kMissing;
            ++zeroed;
          }
        }
      }
    }
  }
  return scene;
}

namespace {

std::array<std::uint8_t, 3> parse_color(const std::string& s) {
  std::array<std::uint8_t, 3> out{};
  std::stringstream ss(s);
  std::string item;
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(ss, item, ',')) throw std::invalid_argument("color needs r,g,b");
    out[i] = static_cast<std::uint8_t>(std::stoi(item));
  }
  return out;
}

SynthObjectSpec parse_object_line(const std::string& line) {
  std::stringstream ss(line);
  std::string kind;
  ss >> kind;
  SynthObjectSpec obj;
  if (kind == "box") {
    obj.kind = SynthObjectSpec::Kind::kBox;
  } else if (kind == "cylinder") {
    obj.kind = SynthObjectSpec::Kind::kCylinder;
  } else {
    throw std::invalid_argument("unknown object kind: " + kind);
  }
  std::string field;
  while (ss >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("object field needs key=value");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "x") obj.x = std::stod(value);
    else if (key == "y") obj.y = std::stod(value);
    else if (key == "sx") obj.size_x = std::stod(value);
    else if (key == "sy") obj.size_y = std::stod(value);
    else if (key == "h") obj.height = std::stod(value);
    else if (key == "radius") obj.radius = std::stod(value);
    else if (key == "color") obj.color = parse_color(value);
    else if (key == "texture") obj.texture_period_m = std::stod(value);
    else if (key == "texture_delta") obj.texture_delta = std::stoi(value);
    else throw std::invalid_argument("unknown object field: " + key);
  }
  return obj;
}

}  // namespace

SynthSceneSpec parse_scene_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  SynthSceneSpec spec;
  spec.frame_id = std::filesystem::path(path).stem().string();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // strip comments and whitespace
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);

    if (line.rfind("box", 0) == 0 || line.rfind("cylinder", 0) == 0) {
      spec.objects.push_back(parse_object_line(line));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("scene spec line " + std::to_string(line_no) +
                                  ": expected key=value or an object line");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "width") spec.width = std::stoi(value);
    else if (key == "height") spec.height = std::stoi(value);
    else if (key == "fx") spec.intrinsics.fx = std::stod(value);
    else if (key == "fy") spec.intrinsics.fy = std::stod(value);
    else if (key == "cx") spec.intrinsics.cx = std::stod(value);
    else if (key == "cy") spec.intrinsics.cy = std::stod(value);
    else if (key == "camera_height_m") spec.camera_height_m = std::stod(value);
    else if (key == "camera_pitch_deg") spec.camera_pitch_deg = std::stod(value);
    else if (key == "checker_period_m") spec.checker_period_m = std::stod(value);
    else if (key == "checker_a") spec.checker_a = parse_color(value);
    else if (key == "checker_b") spec.checker_b = parse_color(value);
    else if (key == "noise_sigma_m") spec.noise_sigma_m = std::stod(value);
    else if (key == "hole_fraction") spec.hole_fraction = std::stod(value);
    else if (key == "seed") spec.seed = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "frame_id") spec.frame_id = value;
    else throw std::invalid_argument("scene spec line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
  }
  return spec;
}

void write_scene_dataset(const SynthScene& scene, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(out_dir) / "rgb");
  fs::create_directories(fs::path(out_dir) / "depth");
  fs::create_directories(fs::path(out_dir) / "gt");

  const std::string& id = scene.frame.frame_id;
  save_png_rgb((fs::path(out_dir) / "rgb" / (id + ".png")).string(), scene.frame.rgb);

  Map2D<std::uint16_t> depth_mm(scene.frame.depth.width(), scene.frame.depth.height());
  for (std::size_t i = 0; i < depth_mm.pixel_count(); ++i) {
    const float m = scene.frame.depth[i];
    depth_mm[i] = static_cast<std::uint16_t>(std::lround(std::clamp(m * 1000.f, 0.f, 65535.f)));
  }
  save_png_gray16((fs::path(out_dir) / "depth" / (id + ".png")).string(), depth_mm);

  for (std::size_t i = 0; i < scene.gt.masks.size(); ++i) {
    MaskU8 mask = scene.gt.masks[i];
    for (auto& v : mask.data()) v = v ? 255 : 0;
    const std::string name = id + "_obj" + std::to_string(scene.gt.object_ids[i]) + ".png";
    save_png_gray8((fs::path(out_dir) / "gt" / name).string(), mask);
  }
  save_intrinsics((fs::path(out_dir) / "intrinsics.txt").string(), scene.frame.intrinsics);
}

SynthSceneSpec random_scene_spec(std::mt19937& rng, int min_objects, int max_objects) {
  static constexpr std::array<std::array<std::uint8_t, 3>, 8> kPalette = {{
      {206, 62, 62},
      {62, 174, 62},
      {64, 98, 214},
      {214, 174, 48},
      {174, 62, 190},
      {46, 190, 182},
      {230, 126, 40},
      {120, 214, 84},
  }};

  SynthSceneSpec spec;
  std::uniform_int_distribution<int> count(min_objects, max_objects);
  std::uniform_real_distribution<double> fy(0.82, 1.18);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> kind(0, 1);

  const int n = count(rng);
  int palette_at = std::uniform_int_distribution<int>(0, 7)(rng);
  for (int i = 0; i < n; ++i) {
    SynthObjectSpec obj;
    obj.kind = kind(rng) ? SynthObjectSpec::Kind::kCylinder : SynthObjectSpec::Kind::kBox;
    obj.color = kPalette[palette_at];
    palette_at = (palette_at + 3) % 8;  // step coprime to 8 keeps colors distinct
    if (obj.kind == SynthObjectSpec::Kind::kBox) {
      obj.size_x = 0.08 + 0.08 * unit(rng);
      obj.size_y = 0.08 + 0.06 * unit(rng);
      obj.height = 0.08 + 0.10 * unit(rng);
    } else {
      obj.radius = 0.04 + 0.03 * unit(rng);
      obj.height = 0.08 + 0.08 * unit(rng);
    }

    // Rejection-sample a position separated from the others.
    const double footprint =
        obj.kind == SynthObjectSpec::Kind::kBox ? std::max(obj.size_x, obj.size_y) / 2 : obj.radius;
    for (int attempt = 0; attempt < 200; ++attempt) {
      obj.y = fy(rng);
      const double span = 0.30 * (obj.y / 1.1);
      obj.x = (2.0 * unit(rng) - 1.0) * span;
      bool clear = true;
      for (const SynthObjectSpec& other : spec.objects) {
        const double other_r = other.kind == SynthObjectSpec::Kind::kBox
                                   ? std::max(other.size_x, other.size_y) / 2
                                   : other.radius;
        const double dx = obj.x - other.x;
        const double dy = obj.y - other.y;
        if (std::sqrt(dx * dx + dy * dy) < footprint + other_r + 0.05) {
          clear = false;
          break;
        }
      }
      if (clear) break;
    }
    spec.objects.push_back(obj);
  }
  return spec;
}

}  // namespace rgbdseg
