#pragma once

#include <string>

#include "rgbdseg/boundary.hpp"
#include "rgbdseg/depth_prep.hpp"
#include "rgbdseg/graphseg.hpp"
#include "rgbdseg/postproc.hpp"
#include "rgbdseg/saliency.hpp"

namespace rgbdseg {

/// Every tunable of the pipeline. Serializes to and from a line-oriented
/// key=value file with full round-trip fidelity.
struct PipelineConfig {
  DepthPrepConfig depth_prep;
  SaliencyConfig saliency;
  BoundaryParams boundary;
  SegParams seg;
  RejectionConfig rejection;
  std::string profile = "default";
};

/// Shelf scenes with poor light and many depth shadows; first cost function.
PipelineConfig profile_rutgers();
/// Tabletop video scenes with full depth; second cost function.
PipelineConfig profile_rgbd_scenes();
/// Cluttered multi-instance scenes; second cost function.
PipelineConfig profile_multi_instance();

/// Lookup by name ("default", "rutgers", "rgbd_scenes", "multi_instance").
PipelineConfig profile_by_name(const std::string& name);

PipelineConfig load_config(const std::string& path);
void save_config(const PipelineConfig& cfg, const std::string& path);

std::string serialize_config(const PipelineConfig& cfg);
PipelineConfig parse_config(const std::string& text);

}  // namespace rgbdseg
