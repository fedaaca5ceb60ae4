#pragma once

// Grid-sampled planar test scenes. Shapes live in the local z = 0 plane with the grid anchored
// at the origin (x = i * pitch, y = j * pitch); `pose` then places them in the camera frame.
//
//   rectangle            dims = {size_x, size_y}
//   strip                dims = {length, width}           (length along x)
//   l_shape              dims = {size_x, size_y, arm_x, arm_y}
//                        keeps y <= arm_y (horizontal arm) or x <= arm_x (vertical arm)
//   rectangle_with_hole  dims = {size_x, size_y, hole_x, hole_y}, hole centred, open
//   circle               dims = {radius}, filled disk centred at (radius, radius)
//
// Noise is added along local z. Outliers are appended after the grid points, uniformly
// distributed in [0, size_x] x [0, size_y] x [-h, h] with h = max(size_x, size_y) / 2; their count
// is round(N * f / (1 - f)) so that they make up fraction f of the output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ara/cloud.hpp"
#include "ara/errors.hpp"
#include "ara/geometry.hpp"
#include "ara/rng.hpp"

namespace ara::synth {

enum class Shape { Rectangle, Strip, LShape, RectangleWithHole, Circle };

inline const char* shape_name(Shape s)
{
  switch (s) {
    case Shape::Rectangle: return "rectangle";
    case Shape::Strip: return "strip";
    case Shape::LShape: return "l_shape";
    case Shape::RectangleWithHole: return "rectangle_with_hole";
    case Shape::Circle: return "circle";
  }
  return "?";
}

inline std::optional<Shape> parse_shape(const std::string& s)
{
  for (Shape v : {Shape::Rectangle, Shape::Strip, Shape::LShape, Shape::RectangleWithHole, Shape::Circle})
    if (s == shape_name(v)) return v;
  return std::nullopt;
}

inline std::size_t dims_required(Shape s)
{
  switch (s) {
    case Shape::Rectangle:
    case Shape::Strip: return 2;
    case Shape::LShape:
    case Shape::RectangleWithHole: return 4;
    case Shape::Circle: return 1;
  }
  return 0;
}

struct SyntheticCloudSpec
{
  Shape shape = Shape::Rectangle;
  std::vector<double> dims{0.3, 0.3};
  double pitch = 0.01;
  double noise_sigma = 0.0;
  double outlier_fraction = 0.0;
  RigidTransform pose;
  std::uint64_t seed = 0;

  void validate() const
  {
    if (dims.size() != dims_required(shape))
      throw ConfigError(std::string("gen: shape ") + shape_name(shape) + " needs " +
                        std::to_string(dims_required(shape)) + " dims");
    for (double d : dims)
      if (!(d > 0.0)) throw ConfigError("gen: dims must be > 0");
    if (!(pitch > 0.0)) throw ConfigError("gen: pitch must be > 0");
    if (!(noise_sigma >= 0.0)) throw ConfigError("gen: noise sigma must be >= 0");
    if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0))
      throw ConfigError("gen: outlier fraction must be in [0, 1)");
    if (shape == Shape::LShape && (dims[2] > dims[0] || dims[3] > dims[1]))
      throw ConfigError("gen: l_shape arms must not exceed the outer size");
    if (shape == Shape::RectangleWithHole && (dims[2] >= dims[0] || dims[3] >= dims[1]))
      throw ConfigError("gen: hole must be smaller than the rectangle");
  }

  double extent_x() const { return shape == Shape::Circle ? 2.0 * dims[0] : dims[0]; }
  double extent_y() const { return shape == Shape::Circle ? 2.0 * dims[0] : dims[1]; }
};

inline constexpr double kMembershipEps = 1e-9;

/// Shape membership of a local-frame grid point.
inline bool in_shape(const SyntheticCloudSpec& spec, double x, double y)
{
  const auto& d = spec.dims;
  switch (spec.shape) {
    case Shape::Rectangle:
    case Shape::Strip: return true;
    case Shape::LShape: return y <= d[3] + kMembershipEps || x <= d[2] + kMembershipEps;
    case Shape::RectangleWithHole: {
      const bool in_hole = std::abs(x - 0.5 * d[0]) < 0.5 * d[2] - kMembershipEps &&
                           std::abs(y - 0.5 * d[1]) < 0.5 * d[3] - kMembershipEps;
      return !in_hole;
    }
    case Shape::Circle: {
      const double r = d[0];
      return (x - r) * (x - r) + (y - r) * (y - r) <= r * r + kMembershipEps;
    }
  }
  return false;
}

inline std::size_t grid_count(double extent, double pitch)
{
  return static_cast<std::size_t>(std::llround(extent / pitch)) + 1;
}

/// Noise-free local-frame grid points of the shape, row-major in x then y.
inline std::vector<Point3> shape_grid(const SyntheticCloudSpec& spec)
{
  const std::size_t nx = grid_count(spec.extent_x(), spec.pitch);
  const std::size_t ny = grid_count(spec.extent_y(), spec.pitch);
  std::vector<Point3> out;
  out.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = static_cast<double>(i) * spec.pitch;
      const double y = static_cast<double>(j) * spec.pitch;
      if (in_shape(spec, x, y)) out.emplace_back(x, y, 0.0);
    }
  return out;
}

inline cloud::PointCloud generate(const SyntheticCloudSpec& spec)
{
  spec.validate();
  auto local = shape_grid(spec);
  Rng rng(spec.seed);
  if (spec.noise_sigma > 0.0)
    for (auto& p : local) p.z() += rng.normal(0.0, spec.noise_sigma);

  const std::size_t n_in = local.size();
  const auto n_out = static_cast<std::size_t>(
      std::llround(static_cast<double>(n_in) * spec.outlier_fraction / (1.0 - spec.outlier_fraction)));
  const double sx = spec.extent_x(), sy = spec.extent_y();
  const double h = 0.5 * std::max(sx, sy);
  for (std::size_t k = 0; k < n_out; ++k) {
    const double x = rng.uniform(0.0, sx);
    const double y = rng.uniform(0.0, sy);
    const double z = rng.uniform(-h, h);
    local.emplace_back(x, y, z);
  }

  std::vector<Point3> out;
  out.reserve(local.size());
  for (const auto& p : local) out.push_back(spec.pose.apply(p));
  return cloud::PointCloud(std::move(out), cloud::Frame::Camera);
}

}  // namespace ara::synth
