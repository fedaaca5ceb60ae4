#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include "ara/boundary.hpp"
#include "ara/cloud.hpp"
#include "ara/footprint.hpp"
#include "ara/geometry.hpp"

namespace ara::switching {

enum class Transformation { Mobile, InchWorm };

inline const char* transformation_name(Transformation t) { return t == Transformation::Mobile ? "Mobile" : "InchWorm"; }

struct HeightConfig
{
  double z_robotbase = 0.0;
  double epsilon = 0.01;
  RigidTransform camera_to_base;

  void validate() const
  {
    if (!(epsilon > 0.0)) throw ConfigError("height: epsilon must be > 0");
  }
};

struct Diagnostics
{
  std::size_t input_points = 0;
  std::size_t filtered_points = 0;
  std::size_t downsampled_points = 0;
  std::size_t inlier_count = 0;
  std::size_t boundary_size = 0;
  std::size_t candidates_evaluated = 0;
  std::optional<std::size_t> accepted_candidate;
  std::optional<Point3> centroid_camera;
  std::optional<Vec3> normal;
  std::optional<double> height_delta;
};

struct SwitchDecision
{
  bool s_pa = false;
  bool s_am = false;
  bool s_hc = false;
  bool s = false;
  Transformation transformation = Transformation::InchWorm;
  std::optional<footprint::FootprintPose> pose;
  Diagnostics diagnostics;
};

inline bool plane_availability(const std::optional<cloud::PlanarPatch>& patch)
{
  return patch.has_value() && !patch->inliers.empty();
}

struct HeightCheck
{
  bool available = false;
  double delta = 0.0;  // z in the base frame minus z_robotbase
};

inline HeightCheck height_availability(const Point3& centroid_camera, const HeightConfig& cfg)
{
  cfg.validate();
  const Point3 in_base = transform_point(centroid_camera, cfg.camera_to_base);
  const double delta = in_base.z() - cfg.z_robotbase;
  return {std::abs(delta) <= cfg.epsilon, delta};
}

inline std::pair<bool, Transformation> switching_function(bool s_pa, bool s_am, bool s_hc)
{
  const bool s = s_pa && s_am && s_hc;
  return {s, s ? Transformation::Mobile : Transformation::InchWorm};
}

struct PipelineConfig
{
  cloud::FilterConfig filter;
  boundary::SliceConfig slice;
  footprint::FootSpec foot;
  HeightConfig height;
};

/// passthrough -> voxel -> RANSAC -> boundary -> area check -> height check -> S.
/// Without a plane the later stages are skipped and reported false.
inline SwitchDecision decide(const cloud::PointCloud& input, const PipelineConfig& cfg, std::uint64_t seed)
{
  cfg.filter.validate();
  cfg.slice.validate();
  cfg.foot.validate();
  cfg.height.validate();

  SwitchDecision out;
  auto& diag = out.diagnostics;
  diag.input_points = input.size();
  const auto filtered = cloud::passthrough(input, cfg.filter);
  diag.filtered_points = filtered.size();
  const auto down = cloud::voxel_downsample(filtered, cfg.filter.leaf);
  diag.downsampled_points = down.size();
  const auto patch = cloud::ransac_plane(down, cfg.filter, seed);

  out.s_pa = plane_availability(patch);
  if (out.s_pa) {
    diag.inlier_count = patch->inliers.size();
    diag.centroid_camera = patch->centroid;
    diag.normal = patch->normal;

    if (patch->inliers.size() >= 2) {
      const auto bs = boundary::estimate_boundary(*patch, cfg.slice);
      diag.boundary_size = bs.size();
      // Too few boundary points to run the area test means too little area.
      if (bs.size() >= cfg.foot.n && bs.size() >= cfg.foot.m) {
        const auto area = footprint::evaluate_area(bs, patch->centroid, patch->normal, cfg.foot);
        diag.candidates_evaluated = area.candidates.size();
        diag.accepted_candidate = area.accepted_index;
        out.pose = area.pose;
        out.s_am = area.pose.has_value();
      }
    }

    const auto height = height_availability(patch->centroid, cfg.height);
    diag.height_delta = height.delta;
    out.s_hc = height.available;
  }

  std::tie(out.s, out.transformation) = switching_function(out.s_pa, out.s_am, out.s_hc);
  return out;
}

}  // namespace ara::switching
