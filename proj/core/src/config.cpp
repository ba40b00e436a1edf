#include "rgbdseg/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rgbdseg/io.hpp"

namespace rgbdseg {

PipelineConfig profile_rutgers() {
  PipelineConfig cfg;
  cfg.profile = "rutgers";
  cfg.seg.gamma = 5.0;
  cfg.seg.k_x = 1.05;
  cfg.seg.k_y = 1.5;
  cfg.seg.k_s = 0.5;
  cfg.seg.weight_mode = WeightMode::kW1;
  return cfg;
}

PipelineConfig profile_rgbd_scenes() {
  PipelineConfig cfg;
  cfg.profile = "rgbd_scenes";
  cfg.seg.gamma = 0.0016;
  cfg.seg.k_x = 7.5;
  cfg.seg.k_b = 0.66;
  cfg.seg.weight_mode = WeightMode::kW2;
  return cfg;
}

PipelineConfig profile_multi_instance() {
  PipelineConfig cfg;
  cfg.profile = "multi_instance";
  cfg.seg.gamma = 0.001;
  cfg.seg.k_x = 1.2;
  cfg.seg.k_b = 0.05;
  cfg.seg.weight_mode = WeightMode::kW2;
  return cfg;
}

PipelineConfig profile_by_name(const std::string& name) {
  if (name == "default") return PipelineConfig{};
  if (name == "rutgers") return profile_rutgers();
  if (name == "rgbd_scenes") return profile_rgbd_scenes();
  if (name == "multi_instance") return profile_multi_instance();
  throw std::invalid_argument("unknown profile: " + name);
}

namespace {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_scales(const std::vector<int>& scales) {
  std::string out;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(scales[i]);
  }
  return out;
}

std::vector<int> parse_scales(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::invalid_argument("saliency.scales must not be empty");
  return out;
}

// Binds each config key to its setter and getter so serialization and
// parsing cannot drift apart.
struct KeyBinding {
  std::function<void(PipelineConfig&, const std::string&)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

using KeyTable = std::vector<std::pair<std::string, KeyBinding>>;

KeyBinding bind_double(std::function<double&(PipelineConfig&)> ref) {
  return KeyBinding{
      [ref](PipelineConfig& c, const std::string& v) { ref(c) = std::stod(v); },
      [ref](const PipelineConfig& c) { return format_double(ref(const_cast<PipelineConfig&>(c))); }};
}

KeyBinding bind_int(std::function<int&(PipelineConfig&)> ref) {
  return KeyBinding{
      [ref](PipelineConfig& c, const std::string& v) { ref(c) = std::stoi(v); },
      [ref](const PipelineConfig& c) {
        return std::to_string(ref(const_cast<PipelineConfig&>(c)));
      }};
}

KeyBinding bind_bool(std::function<bool&(PipelineConfig&)> ref) {
  return KeyBinding{[ref](PipelineConfig& c, const std::string& v) {
                      if (v == "true") {
                        ref(c) = true;
                      } else if (v == "false") {
                        ref(c) = false;
                      } else {
                        throw std::invalid_argument("expected true/false, got " + v);
                      }
                    },
                    [ref](const PipelineConfig& c) {
                      return ref(const_cast<PipelineConfig&>(c)) ? "true" : "false";
                    }};
}

#define RGBDSEG_DOUBLE_KEY(expr) \
  bind_double([](PipelineConfig& c) -> double& { return c.expr; })
#define RGBDSEG_INT_KEY(expr) bind_int([](PipelineConfig& c) -> int& { return c.expr; })
#define RGBDSEG_BOOL_KEY(expr) bind_bool([](PipelineConfig& c) -> bool& { return c.expr; })

const KeyTable& key_table() {
  static const KeyTable table = [] {
    KeyTable t;
    t.emplace_back("profile",
                   KeyBinding{[](PipelineConfig& c, const std::string& v) { c.profile = v; },
                              [](const PipelineConfig& c) { return c.profile; }});

    t.emplace_back("depth_prep.alpha_px_per_m", RGBDSEG_DOUBLE_KEY(depth_prep.alpha_px_per_m));
    t.emplace_back("depth_prep.r_max", RGBDSEG_INT_KEY(depth_prep.r_max));
    t.emplace_back("depth_prep.t_step_m", RGBDSEG_DOUBLE_KEY(depth_prep.t_step_m));
    t.emplace_back("depth_prep.d_max_m", RGBDSEG_DOUBLE_KEY(depth_prep.d_max_m));
    t.emplace_back("depth_prep.max_hole_area", RGBDSEG_INT_KEY(depth_prep.max_hole_area));
    t.emplace_back("depth_prep.inpaint_tol_m", RGBDSEG_DOUBLE_KEY(depth_prep.inpaint_tol_m));
    t.emplace_back("depth_prep.shadow_fraction_w1",
                   RGBDSEG_DOUBLE_KEY(depth_prep.shadow_fraction_w1));

    t.emplace_back("saliency.sigma", RGBDSEG_DOUBLE_KEY(saliency.sigma));
    t.emplace_back("saliency.scales",
                   KeyBinding{[](PipelineConfig& c, const std::string& v) {
                                c.saliency.scales = parse_scales(v);
                              },
                              [](const PipelineConfig& c) {
                                return format_scales(c.saliency.scales);
                              }});

    t.emplace_back("boundary.canny_low", RGBDSEG_DOUBLE_KEY(boundary.canny_low));
    t.emplace_back("boundary.canny_high", RGBDSEG_DOUBLE_KEY(boundary.canny_high));
    t.emplace_back("boundary.eps_rho", RGBDSEG_INT_KEY(boundary.eps_rho));
    t.emplace_back("boundary.t_rho_m", RGBDSEG_DOUBLE_KEY(boundary.t_rho_m));
    t.emplace_back("boundary.eps_e", RGBDSEG_INT_KEY(boundary.eps_e));
    t.emplace_back("boundary.theta_low_deg", RGBDSEG_DOUBLE_KEY(boundary.theta_low_deg));
    t.emplace_back("boundary.theta_high_deg", RGBDSEG_DOUBLE_KEY(boundary.theta_high_deg));

    t.emplace_back("seg.gamma", RGBDSEG_DOUBLE_KEY(seg.gamma));
    t.emplace_back("seg.k_dv", RGBDSEG_DOUBLE_KEY(seg.k_dv));
    t.emplace_back("seg.k_ds", RGBDSEG_DOUBLE_KEY(seg.k_ds));
    t.emplace_back("seg.k_x", RGBDSEG_DOUBLE_KEY(seg.k_x));
    t.emplace_back("seg.k_y", RGBDSEG_DOUBLE_KEY(seg.k_y));
    t.emplace_back("seg.k_s", RGBDSEG_DOUBLE_KEY(seg.k_s));
    t.emplace_back("seg.k_b", RGBDSEG_DOUBLE_KEY(seg.k_b));
    t.emplace_back("seg.weight_mode",
                   KeyBinding{[](PipelineConfig& c, const std::string& v) {
                                c.seg.weight_mode = weight_mode_from_string(v);
                              },
                              [](const PipelineConfig& c) {
                                return std::string(to_string(c.seg.weight_mode));
                              }});
    t.emplace_back("seg.min_region_size", RGBDSEG_INT_KEY(seg.min_region_size));
    t.emplace_back("seg.eight_connected", RGBDSEG_BOOL_KEY(seg.eight_connected));

    t.emplace_back("reject.lambda1_max", RGBDSEG_DOUBLE_KEY(rejection.lambda1_max));
    t.emplace_back("reject.lambda2_max", RGBDSEG_DOUBLE_KEY(rejection.lambda2_max));
    t.emplace_back("reject.eccentricity_max", RGBDSEG_DOUBLE_KEY(rejection.eccentricity_max));
    t.emplace_back("reject.missing_max", RGBDSEG_DOUBLE_KEY(rejection.missing_max));
    t.emplace_back("reject.dark_bins", RGBDSEG_INT_KEY(rejection.dark_bins));
    t.emplace_back("reject.dark_fraction", RGBDSEG_DOUBLE_KEY(rejection.dark_fraction));
    t.emplace_back("reject.reach_max_m", RGBDSEG_DOUBLE_KEY(rejection.reach_max_m));
    return t;
  }();
  return table;
}

#undef RGBDSEG_DOUBLE_KEY
#undef RGBDSEG_INT_KEY
#undef RGBDSEG_BOOL_KEY

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string serialize_config(const PipelineConfig& cfg) {
  std::string out = "# rgbdseg pipeline configuration\n";
  for (const auto& [key, binding] : key_table()) {
    out += key;
    out += '=';
    out += binding.get(cfg);
    out += '\n';
  }
  return out;
}

PipelineConfig parse_config(const std::string& text) {
  PipelineConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    bool known = false;
    for (const auto& [name, binding] : key_table()) {
      if (name == key) {
        binding.set(cfg, value);
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void save_config(const PipelineConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << serialize_config(cfg);
}

}  // namespace rgbdseg
