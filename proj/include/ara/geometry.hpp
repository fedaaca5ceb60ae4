#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include <Eigen/Dense>

namespace ara {

using Point3 = Eigen::Vector3d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class Axis { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Axis, 3> kAllAxes{Axis::X, Axis::Y, Axis::Z};

inline int axis_index(Axis a) { return static_cast<int>(a); }

inline char axis_name(Axis a) { return "xyz"[axis_index(a)]; }

inline bool is_finite(const Point3& p)
{
  return std::isfinite(p.x()) && std::isfinite(p.y()) && std::isfinite(p.z());
}

/// Strict lexicographic (x, y, z) order; the tie-breaker used throughout.
inline bool lex_less(const Point3& a, const Point3& b)
{
  return std::tie(a.x(), a.y(), a.z()) < std::tie(b.x(), b.y(), b.z());
}

struct LexLess
{
  bool operator()(const Point3& a, const Point3& b) const { return lex_less(a, b); }
};

inline bool is_orthonormal(const Mat3& r, double tol = 1e-9)
{
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(r.determinant() - 1.0) <= tol;
}

/// Proper rigid motion p -> R p + t. Construction rejects non-rotations.
class RigidTransform
{
public:
  RigidTransform() : rotation_(Mat3::Identity()), translation_(Vec3::Zero()) {}

  RigidTransform(const Mat3& rotation, const Vec3& translation)
      : rotation_(rotation), translation_(translation)
  {
    if (!rotation.allFinite() || !translation.allFinite())
      throw std::invalid_argument("RigidTransform: non-finite entries");
    if (!is_orthonormal(rotation))
      throw std::invalid_argument("RigidTransform: rotation is not orthonormal with det +1");
  }

  static RigidTransform identity() { return {}; }

  static RigidTransform translation(const Vec3& t) { return {Mat3::Identity(), t}; }

  /// Rotation about a unit axis by `angle` radians, then translation.
  static RigidTransform axis_angle(const Vec3& axis, double angle, const Vec3& t = Vec3::Zero())
  {
    return {Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix(), t};
  }

  /// Intrinsic roll-pitch-yaw (R = Rz(yaw) Ry(pitch) Rx(roll)).
  static RigidTransform rpy(double roll, double pitch, double yaw, const Vec3& t = Vec3::Zero())
  {
    const Mat3 r = (Eigen::AngleAxisd(yaw, Vec3::UnitZ()) * Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
                    Eigen::AngleAxisd(roll, Vec3::UnitX()))
                       .toRotationMatrix();
    return {r, t};
  }

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  Point3 apply(const Point3& p) const { return rotation_ * p + translation_; }

  /// (this ∘ first): apply `first`, then this.
  RigidTransform compose(const RigidTransform& first) const
  {
    RigidTransform out;
    out.rotation_ = rotation_ * first.rotation_;
    out.translation_ = rotation_ * first.translation_ + translation_;
    return out;
  }

  RigidTransform inverse() const
  {
    RigidTransform out;
    out.rotation_ = rotation_.transpose();
    out.translation_ = -(out.rotation_ * translation_);
    return out;
  }

private:
  Mat3 rotation_;
  Vec3 translation_;
};

inline Point3 transform_point(const Point3& p, const RigidTransform& t) { return t.apply(p); }

}  // namespace ara
