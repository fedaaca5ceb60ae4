#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "ara/boundary.hpp"
#include "ara/errors.hpp"
#include "ara/geometry.hpp"

namespace ara::footprint {

struct FootSpec
{
  double w = 0.10;        // foot width, along e_y
  double l = 0.15;        // foot length, along e_x
  double t = 0.02;        // relative distance tolerance
  std::size_t n = 5;      // candidate anchors
  std::size_t m = 3;      // boundary neighbours per probe

  void validate() const
  {
    if (!(w > 0.0) || !(l > 0.0)) throw ConfigError("foot: w and l must be > 0");
    if (!(t > 0.0)) throw ConfigError("foot: t must be > 0");
    if (n < 1 || m < 1) throw ConfigError("foot: n and m must be >= 1");
  }
};

struct Frame3
{
  Vec3 ex = Vec3::UnitX();
  Vec3 ey = Vec3::UnitY();
  Vec3 ez = Vec3::UnitZ();

  Mat3 matrix() const
  {
    Mat3 r;
    r.col(0) = ex;
    r.col(1) = ey;
    r.col(2) = ez;
    return r;
  }
};

/// Foot rectangle anchored at a boundary point, extending toward the centroid.
struct CandidateRectangle
{
  Point3 anchor = Point3::Zero();
  /// Cyclic order: anchor + w/2 e_y, anchor - w/2 e_y, then the far edge at -l e_x.
  std::array<Point3, 4> corners{};
  /// midpoints[i] = (corners[i] + corners[i+1 mod 4]) / 2
  std::array<Point3, 4> midpoints{};
  Frame3 frame;

  /// Corners then midpoints.
  std::array<Point3, 8> probes() const
  {
    return {corners[0], corners[1], corners[2], corners[3],
            midpoints[0], midpoints[1], midpoints[2], midpoints[3]};
  }
};

struct FootprintPose
{
  Point3 position = Point3::Zero();
  Mat3 orientation = Mat3::Identity();  // columns e_x, e_y, e_z
};

/// The n points closest to `query`, ascending by distance, ties broken lexicographically.
inline std::vector<Point3> n_closest(std::span<const Point3> points, const Point3& query, std::size_t n)
{
  if (n > points.size()) throw DomainError("n_closest: n exceeds the number of points");
  std::vector<std::pair<double, Point3>> keyed;
  keyed.reserve(points.size());
  for (const auto& p : points) keyed.emplace_back((p - query).squaredNorm(), p);
  auto cmp = [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return lex_less(a.second, b.second);
  };
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(n), keyed.end(), cmp);
  std::vector<Point3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(keyed[i].second);
  return out;
}

/// e_x is the in-plane direction from the centroid to the anchor (the component of
/// anchor - centroid along the normal is removed), e_z the patch normal, e_y = e_z x e_x.
inline CandidateRectangle build_candidate(const Point3& anchor, const Point3& centroid, const Vec3& normal,
                                          const FootSpec& spec)
{
  const Vec3 ez = normal.normalized();
  Vec3 radial = anchor - centroid;
  radial -= radial.dot(ez) * ez;
  const double len = radial.norm();
  if (len < 1e-9) throw DegenerateAnchorError("build_candidate: anchor coincides with centroid in-plane");

  CandidateRectangle c;
  c.anchor = anchor;
  c.frame.ex = radial / len;
  c.frame.ez = ez;
  c.frame.ey = ez.cross(c.frame.ex).normalized();

  const Vec3 half_w = 0.5 * spec.w * c.frame.ey;
  const Vec3 back = spec.l * c.frame.ex;
  c.corners[0] = anchor + half_w;
  c.corners[1] = anchor - half_w;
  c.corners[2] = c.corners[1] - back;
  c.corners[3] = c.corners[0] - back;
  for (std::size_t i = 0; i < 4; ++i) c.midpoints[i] = 0.5 * (c.corners[i] + c.corners[(i + 1) % 4]);
  return c;
}

struct ProbeResult
{
  Point3 probe = Point3::Zero();
  double d_r = 0.0;  // probe to centroid
  double d_q = 0.0;  // mean distance to centroid of the m boundary points nearest the probe
  bool inside = false;
};

/// Probe passes when it is closer to the centroid than its boundary neighbours, or farther
/// by less than the relative tolerance t.
inline ProbeResult evaluate_probe(std::span<const Point3> boundary, const Point3& probe, const Point3& centroid,
                                  const FootSpec& spec)
{
  ProbeResult r;
  r.probe = probe;
  r.d_r = (probe - centroid).norm();
  const auto neighbours = n_closest(boundary, probe, spec.m);
  double sum = 0.0;
  for (const auto& q : neighbours) sum += (q - centroid).norm();
  r.d_q = sum / static_cast<double>(neighbours.size());
  r.inside = (r.d_r < r.d_q) || (r.d_r > 0.0 && (r.d_r - r.d_q) / r.d_r < spec.t);
  return r;
}

struct CandidateReport
{
  CandidateRectangle rect;
  std::array<ProbeResult, 8> probes{};
  bool accepted = false;
};

struct AreaReport
{
  std::vector<CandidateReport> candidates;  // in evaluation order, up to and including the accepted one
  std::optional<std::size_t> accepted_index;
  std::optional<FootprintPose> pose;
};

inline FootprintPose pose_from(const CandidateRectangle& rect, const FootSpec& spec)
{
  Point3 rc = Point3::Zero();
  for (const auto& p : rect.probes()) rc += p;
  rc /= 8.0;
  FootprintPose pose;
  pose.orientation = rect.frame.matrix();
  pose.position = rc - 0.25 * spec.l * rect.frame.ex;
  return pose;
}

/// Evaluates candidates anchored at the n boundary points nearest the centroid, in
/// ascending distance order, stopping at the first one whose 8 probes all pass.
/// With `exhaustive` every candidate is evaluated and reported; the accepted one is still the first.
inline AreaReport evaluate_area(const boundary::BoundarySet& bs, const Point3& centroid, const Vec3& normal,
                                const FootSpec& spec, bool exhaustive = false)
{
  spec.validate();
  if (bs.size() < spec.n || bs.size() < spec.m)
    throw DomainError("check_area: boundary set smaller than n or m");
  AreaReport report;
  const std::span<const Point3> boundary(bs.points);
  for (const auto& anchor : n_closest(boundary, centroid, spec.n)) {
    CandidateReport cand;
    try {
      cand.rect = build_candidate(anchor, centroid, normal, spec);
    } catch (const DegenerateAnchorError&) {
      // An anchor on the centroid has no direction; it cannot host a rectangle.
      cand.rect.anchor = anchor;
      report.candidates.push_back(cand);
      continue;
    }
    const auto probes = cand.rect.probes();
    cand.accepted = true;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      cand.probes[i] = evaluate_probe(boundary, probes[i], centroid, spec);
      cand.accepted = cand.accepted && cand.probes[i].inside;
    }
    report.candidates.push_back(cand);
    if (cand.accepted && !report.accepted_index) {
      report.accepted_index = report.candidates.size() - 1;
      report.pose = pose_from(cand.rect, spec);
      if (!exhaustive) break;
    }
  }
  return report;
}

inline std::optional<FootprintPose> check_area(const boundary::BoundarySet& bs, const Point3& centroid,
                                               const Vec3& normal, const FootSpec& spec)
{
  return evaluate_area(bs, centroid, normal, spec).pose;
}

}  // namespace ara::footprint
