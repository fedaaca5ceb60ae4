#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ara/errors.hpp"
#include "ara/geometry.hpp"
#include "ara/rng.hpp"

namespace ara::cloud {

enum class Frame { Camera, RobotBase };

inline const char* frame_name(Frame f) { return f == Frame::Camera ? "camera" : "robot_base"; }

/// Ordered, immutable set of finite 3D points tagged with the frame they live in.
class PointCloud
{
public:
  explicit PointCloud(Frame frame = Frame::Camera) : frame_(frame) {}

  PointCloud(std::vector<Point3> points, Frame frame = Frame::Camera)
      : points_(std::move(points)), frame_(frame)
  {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (!is_finite(points_[i]))
        throw std::invalid_argument("PointCloud: non-finite point at index " + std::to_string(i));
  }

  const std::vector<Point3>& points() const { return points_; }
  std::span<const Point3> view() const { return points_; }
  Frame frame() const { return frame_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point3& operator[](std::size_t i) const { return points_[i]; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool operator==(const PointCloud&) const = default;

private:
  std::vector<Point3> points_;
  Frame frame_;
};

struct AxisRange
{
  double min = -5.0;
  double max = 5.0;

  bool contains(double v) const { return v >= min && v <= max; }
};

struct FilterConfig
{
  std::array<AxisRange, 3> passthrough{};
  double leaf = 0.005;
  double ransac_threshold = 0.005;
  int ransac_iterations = 500;
  std::size_t min_inliers = 200;

  void validate() const
  {
    for (int a = 0; a < 3; ++a)
      if (!(passthrough[a].min < passthrough[a].max))
        throw ConfigError(std::string("filter: passthrough range for ") + "xyz"[a] + " needs min < max");
    if (!(leaf > 0.0)) throw ConfigError("filter: leaf size must be > 0");
    if (!(ransac_threshold > 0.0)) throw ConfigError("filter: ransac threshold must be > 0");
    if (ransac_iterations < 1) throw ConfigError("filter: ransac iterations must be >= 1");
  }
};

/// Plane a*x + b*y + c*z + d = 0 with (a, b, c) a unit normal.
struct PlaneCoeffs
{
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;

  double signed_distance(const Point3& p) const { return normal.dot(p) + offset; }
  Eigen::Vector4d as_vector() const { return {normal.x(), normal.y(), normal.z(), offset}; }
};

struct PlanarPatch
{
  PointCloud inliers;
  Vec3 normal = Vec3::UnitZ();
  Point3 centroid = Point3::Zero();
  PlaneCoeffs plane;
};

inline Point3 centroid(std::span<const Point3> points)
{
  if (points.empty()) throw DomainError("centroid: empty point set");
  Point3 sum = Point3::Zero();
  for (const auto& p : points) sum += p;
  return sum / static_cast<double>(points.size());
}

inline Point3 centroid(const PointCloud& cloud) { return centroid(cloud.view()); }

inline PointCloud passthrough(const PointCloud& cloud, const FilterConfig& cfg)
{
  std::vector<Point3> kept;
  kept.reserve(cloud.size());
  for (const auto& p : cloud)
    if (cfg.passthrough[0].contains(p.x()) && cfg.passthrough[1].contains(p.y()) &&
        cfg.passthrough[2].contains(p.z()))
      kept.push_back(p);
  return {std::move(kept), cloud.frame()};
}

/// Voxel-grid downsampling: one centroid per occupied voxel of edge `leaf`.
/// Voxels are keyed by floor(coord / leaf) and emitted in key order.
inline PointCloud voxel_downsample(const PointCloud& cloud, double leaf)
{
  if (!(leaf > 0.0)) throw DomainError("voxel_downsample: leaf must be > 0");
  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t>;
  std::map<Key, std::pair<Point3, std::size_t>> voxels;
  for (const auto& p : cloud) {
    const Key key{static_cast<std::int64_t>(std::floor(p.x() / leaf)),
                  static_cast<std::int64_t>(std::floor(p.y() / leaf)),
                  static_cast<std::int64_t>(std::floor(p.z() / leaf))};
    auto [it, inserted] = voxels.try_emplace(key, Point3::Zero(), 0);
    it->second.first += p;
    ++it->second.second;
  }
  std::vector<Point3> out;
  out.reserve(voxels.size());
  for (const auto& [key, acc] : voxels) out.push_back(acc.first / static_cast<double>(acc.second));
  return {std::move(out), cloud.frame()};
}

/// Orient `n` toward the origin of the frame as seen from `anchor`.
/// When the origin lies in the plane the largest-magnitude component is made positive.
inline Vec3 orient_toward_origin(const Vec3& n, const Point3& anchor)
{
  const double facing = n.dot(-anchor);
  if (facing > 1e-12) return n;
  if (facing < -1e-12) return -n;
  Eigen::Index k = 0;
  n.cwiseAbs().maxCoeff(&k);
  return n[k] >= 0.0 ? n : Vec3(-n);
}

/// Total least-squares plane through a point set (smallest-eigenvalue direction of the scatter).
inline PlaneCoeffs fit_plane_least_squares(std::span<const Point3> points)
{
  if (points.size() < 3) throw DomainError("fit_plane_least_squares: need at least 3 points");
  const Point3 c = centroid(points);
  Mat3 scatter = Mat3::Zero();
  for (const auto& p : points) {
    const Vec3 d = p - c;
    scatter += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Mat3> solver(scatter);
  Vec3 n = solver.eigenvectors().col(0).normalized();
  n = orient_toward_origin(n, c);
  return {n, -n.dot(c)};
}

namespace detail {

inline std::vector<Point3> select_inliers(std::span<const Point3> points, const PlaneCoeffs& plane,
                                          double threshold)
{
  std::vector<Point3> out;
  for (const auto& p : points)
    if (std::abs(plane.signed_distance(p)) <= threshold) out.push_back(p);
  return out;
}

inline std::size_t count_inliers(std::span<const Point3> points, const PlaneCoeffs& plane, double threshold)
{
  std::size_t count = 0;
  for (const auto& p : points)
    if (std::abs(plane.signed_distance(p)) <= threshold) ++count;
  return count;
}

}  // namespace detail

/// Largest plane by 3-point RANSAC with a least-squares refit on the consensus set.
///
/// Hypotheses are drawn with ara::Rng seeded from `seed`; the best hypothesis is the first
/// one reaching the maximal inlier count. The refit plane replaces it when it keeps at least
/// as many points within the threshold. Returns nullopt when no plane reaches min_inliers.
inline std::optional<PlanarPatch> ransac_plane(const PointCloud& cloud, const FilterConfig& cfg,
                                               std::uint64_t seed)
{
  cfg.validate();
  const auto pts = cloud.view();
  const std::size_t n = pts.size();
  if (n < 3) return std::nullopt;

  Rng rng(seed);
  std::optional<PlaneCoeffs> best;
  std::size_t best_count = 0;
  for (int it = 0; it < cfg.ransac_iterations; ++it) {
    const std::size_t i = rng.index(n);
    std::size_t j = rng.index(n);
    while (j == i) j = rng.index(n);
    std::size_t k = rng.index(n);
    while (k == i || k == j) k = rng.index(n);

    const Vec3 cross = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
    const double norm = cross.norm();
    if (norm < 1e-12) continue;
    const Vec3 normal = cross / norm;
    const PlaneCoeffs hyp{normal, -normal.dot(pts[i])};
    const std::size_t count = detail::count_inliers(pts, hyp, cfg.ransac_threshold);
    if (count > best_count) {
      best_count = count;
      best = hyp;
    }
  }
  if (!best || best_count < cfg.min_inliers || best_count < 3) return std::nullopt;

  auto consensus = detail::select_inliers(pts, *best, cfg.ransac_threshold);
  PlaneCoeffs plane = fit_plane_least_squares(consensus);
  auto refit_inliers = detail::select_inliers(pts, plane, cfg.ransac_threshold);
  if (refit_inliers.size() < cfg.min_inliers) {
    plane = *best;
    refit_inliers = std::move(consensus);
  }

  PlanarPatch patch;
  patch.centroid = centroid(std::span<const Point3>(refit_inliers));
  const Vec3 oriented = orient_toward_origin(plane.normal, patch.centroid);
  if (oriented.dot(plane.normal) < 0.0) plane = {-plane.normal, -plane.offset};
  patch.normal = plane.normal;
  patch.plane = plane;
  patch.inliers = PointCloud(std::move(refit_inliers), cloud.frame());
  return patch;
}

inline Vec3 plane_normal(const PlanarPatch& patch)
{
  if (patch.inliers.empty()) throw DomainError("plane_normal: patch has no inliers");
  return patch.normal;
}

inline PointCloud transform_cloud(const PointCloud& cloud, const RigidTransform& t, Frame target)
{
  std::vector<Point3> out;
  out.reserve(cloud.size());
  for (const auto& p : cloud) out.push_back(t.apply(p));
  return {std::move(out), target};
}

}  // namespace ara::cloud
