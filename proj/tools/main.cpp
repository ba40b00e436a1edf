// Command-line front end: segment single frames, evaluate datasets against
// ground truth, generate synthetic scenes, and time the pipeline.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rgbdseg/pipeline.hpp"
#include "rgbdseg/synth.hpp"

namespace {

using namespace rgbdseg;

PipelineConfig resolve_config(const std::string& config_path, const std::string& profile,
                              const std::string& weight) {
  PipelineConfig cfg;
  if (!profile.empty()) cfg = profile_by_name(profile);
  if (!config_path.empty()) cfg = load_config(config_path);
  if (!weight.empty()) cfg.seg.weight_mode = weight_mode_from_string(weight);
  return cfg;
}

void print_timings(const PipelineResult& result) {
  for (const StageTiming& t : result.timings) {
    std::printf("  %-16s %8.2f ms\n", t.name.c_str(), t.seconds * 1e3);
  }
  std::printf("  %-16s %8.2f ms\n", "total", result.total_seconds * 1e3);
}

int cmd_segment(const std::string& rgb_path, const std::string& depth_path,
                const std::string& intrinsics, const std::string& config_path,
                const std::string& profile, const std::string& weight, bool dump_intermediates,
                const std::string& out_dir) {
  const PipelineConfig cfg = resolve_config(config_path, profile, weight);
  const FramePair frame = load_frame(rgb_path, depth_path, intrinsics);
  const PipelineResult result = run_pipeline(frame, cfg);

  const int accepted = static_cast<int>(result.accepted_indices().size());
  std::printf("frame %s: %d regions, %d accepted, mode %s, shadow %.1f%%\n",
              frame.frame_id.c_str(), result.segmentation.region_count, accepted,
              to_string(result.mode_used), 100.0 * result.shadow.shadow_fraction);
  print_timings(result);

  write_outputs(result.segmentation, result.regions, result.stats, result.verdicts, frame.rgb,
                out_dir, frame.frame_id);

  if (dump_intermediates) {
    namespace fs = std::filesystem;
    const fs::path base(out_dir);
    Map2D<std::uint16_t> depth_mm(result.smoothed_depth.width(), result.smoothed_depth.height());
    for (std::size_t i = 0; i < depth_mm.pixel_count(); ++i) {
      depth_mm[i] = static_cast<std::uint16_t>(
          std::clamp(result.smoothed_depth[i] * 1000.f, 0.f, 65535.f));
    }
    save_png_gray16((base / (frame.frame_id + "_smoothed_depth.png")).string(), depth_mm);

    if (result.mode_used == WeightMode::kW1) {
      MaskU8 sal(result.saliency_map.width(), result.saliency_map.height());
      for (std::size_t i = 0; i < sal.pixel_count(); ++i) {
        sal[i] = static_cast<std::uint8_t>(result.saliency_map[i] * 255.f);
      }
      save_png_gray8((base / (frame.frame_id + "_saliency.png")).string(), sal);
    } else {
      auto dump_mask = [&](const MaskU8& m, const char* name) {
        MaskU8 img = m;
        for (auto& v : img.data()) v = v ? 255 : 0;
        save_png_gray8((base / (frame.frame_id + name)).string(), img);
      };
      dump_mask(result.boundaries.edges.edges, "_edges.png");
      dump_mask(result.boundaries.depth_boundary, "_depth_boundary.png");
      dump_mask(result.boundaries.contact_boundary, "_contact_boundary.png");
      dump_mask(result.boundaries.final_boundary, "_final_boundary.png");
    }
  }
  return 0;
}

int cmd_evaluate(const std::string& dataset_dir, const std::string& profile,
                 const std::string& config_path, const std::string& metric_name, int jobs) {
  const PipelineConfig cfg = resolve_config(config_path, profile, "");
  const OverlapMetric metric = metric_from_string(metric_name);

  const EvalResult result = evaluate_dataset(dataset_dir, cfg, 0.70, metric, jobs);
  for (const FrameEval& fe : result.frames) {
    std::printf("frame %-20s objects %3d detected %3d  (%.0f ms)\n", fe.frame_id.c_str(),
                fe.objects, fe.detected, fe.seconds * 1e3);
  }
  std::printf("frames: %zu  objects: %d  detected: %d  rate: %.1f%%  mean frame time: %.0f ms\n",
              result.frames.size(), result.total_objects, result.total_detected,
              result.detection_rate_percent(), result.mean_frame_seconds * 1e3);
  return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir) {
  const SynthSceneSpec spec = parse_scene_spec(spec_path);
  const SynthScene scene = synth_scene(spec);
  write_scene_dataset(scene, out_dir);
  std::printf("wrote frame %s with %d objects to %s\n", spec.frame_id.c_str(),
              scene.gt.object_count(), out_dir.c_str());
  return 0;
}

int cmd_bench(const std::string& dataset_dir, const std::string& profile,
              const std::string& config_path) {
  const PipelineConfig cfg = resolve_config(config_path, profile, "");
  const auto ids = dataset_frame_ids(dataset_dir);
  if (ids.empty()) {
    std::fprintf(stderr, "no frames under %s\n", dataset_dir.c_str());
    return 1;
  }

  // Single thread: every frame sequential on this thread.
  std::vector<double> stage_sums;
  std::vector<std::string> stage_names;
  double total = 0.0;
  for (const std::string& id : ids) {
    const FramePair frame = load_dataset_frame(dataset_dir, id);
    const PipelineResult result = run_pipeline(frame, cfg);
    total += result.total_seconds;
    if (stage_names.empty()) {
      for (const auto& t : result.timings) {
        stage_names.push_back(t.name);
        stage_sums.push_back(0.0);
      }
    }
    for (std::size_t i = 0; i < result.timings.size() && i < stage_sums.size(); ++i) {
      stage_sums[i] += result.timings[i].seconds;
    }
  }
  std::printf("%zu frames, single thread\n", ids.size());
  for (std::size_t i = 0; i < stage_names.size(); ++i) {
    std::printf("  %-16s %8.2f ms/frame\n", stage_names[i].c_str(),
                stage_sums[i] / ids.size() * 1e3);
  }
  std::printf("  %-16s %8.2f ms/frame (%.2f fps)\n", "total", total / ids.size() * 1e3,
              ids.size() / total);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-based RGB-D object segmentation"};
  app.require_subcommand(1);

  // segment
  std::string rgb_path, depth_path, intrinsics, config_path, profile, weight;
  std::string out_dir = "out";
  bool dump_intermediates = false;
  CLI::App* segment = app.add_subcommand("segment", "Segment one RGB-D frame");
  segment->add_option("rgb", rgb_path, "8-bit RGB PNG")->required();
  segment->add_option("depth", depth_path, "16-bit depth PNG (millimeters, 0 = missing)")
      ->required();
  segment->add_option("--intrinsics", intrinsics, "text file with fx fy cx cy");
  segment->add_option("--config", config_path, "pipeline config file");
  segment->add_option("--profile", profile, "parameter profile name");
  segment->add_option("--weight", weight, "cost function: w1, w2 or auto");
  segment->add_flag("--dump-intermediates", dump_intermediates,
                    "also write smoothed depth, saliency and boundary maps");
  segment->add_option("--out", out_dir, "output directory");

  // evaluate
  std::string dataset_dir, metric_name = "overlap";
  int jobs = 1;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Run the detection benchmark on a dataset");
  evaluate->add_option("dataset_dir", dataset_dir, "dataset directory (rgb/ depth/ gt/)")
      ->required();
  evaluate->add_option("--profile", profile, "parameter profile name")->required();
  evaluate->add_option("--config", config_path, "config file overriding the profile");
  evaluate->add_option("--metric", metric_name, "overlap (default) or iou");
  evaluate->add_option("--jobs", jobs, "worker threads (frame-level)");

  // synth
  std::string spec_path, synth_out;
  CLI::App* synth = app.add_subcommand("synth", "Render a synthetic scene to dataset layout");
  synth->add_option("spec_file", spec_path, "scene description file")->required();
  synth->add_option("--out", synth_out, "output dataset directory")->required();

  // bench
  std::string bench_dir;
  bool single_thread = true;
  CLI::App* bench = app.add_subcommand("bench", "Time the pipeline over a dataset");
  bench->add_option("dataset_dir", bench_dir, "dataset directory")->required();
  bench->add_flag("--single-thread", single_thread, "process frames on one thread (default)");
  bench->add_option("--profile", profile, "parameter profile name");
  bench->add_option("--config", config_path, "pipeline config file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (segment->parsed()) {
      return cmd_segment(rgb_path, depth_path, intrinsics, config_path, profile, weight,
                         dump_intermediates, out_dir);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(dataset_dir, profile, config_path, metric_name, jobs);
    }
    if (synth->parsed()) {
      return cmd_synth(spec_path, synth_out);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_dir, profile, config_path);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
