#pragma once

// Slicing-window boundary estimation for planar patches.
//
// Along each configured axis the patch is cut into half-open slabs of width alpha_s,
// centred at d_min + i * alpha_s. The farthest pair of points in each slab (a lone point
// counts on its own) is taken as boundary. Holes inside the patch never produce extremes
// of a slab that also reaches the outer rim, so they do not pollute the result.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ara/cloud.hpp"
#include "ara/errors.hpp"
#include "ara/geometry.hpp"

namespace ara::boundary {

struct SliceConfig
{
  double alpha_s = 0.02;
  /// Empty means "the two axes most orthogonal to the patch normal".
  std::vector<Axis> axes;

  void validate() const
  {
    if (!(alpha_s > 0.0)) throw ConfigError("boundary: alpha_s must be > 0");
  }
};

struct SliceTag
{
  Axis axis = Axis::X;
  std::int64_t index = 0;

  bool operator==(const SliceTag&) const = default;
};

struct BoundarySet
{
  std::vector<Point3> points;      // lexicographically sorted, unique
  std::vector<SliceTag> source;    // source[i] is the first slab that produced points[i]

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Drops the axis along which the normal is largest; keeps the other two in x, y, z order.
inline std::vector<Axis> default_axes(const Vec3& normal)
{
  Eigen::Index dominant = 0;
  normal.cwiseAbs().maxCoeff(&dominant);
  std::vector<Axis> out;
  for (Axis a : kAllAxes)
    if (axis_index(a) != dominant) out.push_back(a);
  return out;
}

inline std::int64_t slab_index(double v, double d_min, double alpha_s)
{
  return static_cast<std::int64_t>(std::floor((v - d_min) / alpha_s + 0.5));
}

/// Farthest pair by exhaustive search over a lexicographically sorted slab. Ties keep the
/// lexicographically smallest (first, second) pair.
inline std::pair<std::size_t, std::size_t> farthest_pair(std::span<const Point3> sorted)
{
  std::pair<std::size_t, std::size_t> best{0, 0};
  double best_d2 = -1.0;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const double d2 = (sorted[i] - sorted[j]).squaredNorm();
      if (d2 > best_d2) {
        best_d2 = d2;
        best = {i, j};
      }
    }
  return best;
}

inline BoundarySet estimate_boundary(std::span<const Point3> points, const Vec3& normal, const SliceConfig& cfg)
{
  cfg.validate();
  if (points.size() < 2) throw DomainError("estimate_boundary: need at least 2 points");
  const std::vector<Axis> axes = cfg.axes.empty() ? default_axes(normal) : cfg.axes;

  std::vector<Point3> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), LexLess{});

  std::map<Point3, SliceTag, LexLess> found;
  for (Axis axis : axes) {
    const int k = axis_index(axis);
    double d_min = sorted.front()[k];
    for (const auto& p : sorted) d_min = std::min(d_min, p[k]);

    // Slabs preserve the lexicographic order of `sorted`.
    std::map<std::int64_t, std::vector<Point3>> slabs;
    for (const auto& p : sorted) slabs[slab_index(p[k], d_min, cfg.alpha_s)].push_back(p);

    for (const auto& [index, members] : slabs) {
      const SliceTag tag{axis, index};
      if (members.size() == 1) {
        found.try_emplace(members.front(), tag);
        continue;
      }
      const auto [a, b] = farthest_pair(members);
      found.try_emplace(members[a], tag);
      found.try_emplace(members[b], tag);
    }
  }

  BoundarySet out;
  out.points.reserve(found.size());
  out.source.reserve(found.size());
  for (const auto& [p, tag] : found) {
    out.points.push_back(p);
    out.source.push_back(tag);
  }
  return out;
}

inline BoundarySet estimate_boundary(const cloud::PlanarPatch& patch, const SliceConfig& cfg)
{
  return estimate_boundary(patch.inliers.view(), patch.normal, cfg);
}

}  // namespace ara::boundary
