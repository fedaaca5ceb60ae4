#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ara/boundary.hpp"
#include "ara/synth.hpp"
#include "oracles.hpp"

using namespace ara;
using boundary::SliceConfig;

namespace {

std::vector<Point3> grid(synth::Shape shape, std::vector<double> dims, double pitch)
{
  synth::SyntheticCloudSpec spec;
  spec.shape = shape;
  spec.dims = std::move(dims);
  spec.pitch = pitch;
  return synth::generate(spec).points();
}

SliceConfig xy(double alpha)
{
  SliceConfig cfg;
  cfg.alpha_s = alpha;
  cfg.axes = {Axis::X, Axis::Y};
  return cfg;
}

}  // namespace

TEST(Boundary, TwoPoints)
{
  const std::vector<Point3> pts{{0, 0, 0}, {0.3, 0.1, 0}};
  const auto bs = boundary::estimate_boundary(pts, Vec3::UnitZ(), xy(0.02));
  EXPECT_EQ(bs.points, (std::vector<Point3>{pts[0], pts[1]}));
}

TEST(Boundary, TooFewPoints)
{
  const std::vector<Point3> one{{0, 0, 0}};
  EXPECT_THROW(boundary::estimate_boundary(one, Vec3::UnitZ(), xy(0.02)), DomainError);
}

TEST(Boundary, RejectsNonPositiveAlpha)
{
  const std::vector<Point3> pts{{0, 0, 0}, {1, 0, 0}};
  EXPECT_THROW(boundary::estimate_boundary(pts, Vec3::UnitZ(), xy(0.0)), ConfigError);
}

TEST(Boundary, SingletonSlabContributesItsPoint)
{
  // Along x: slab 0 holds {a, b}, the far point c sits alone in its own slab.
  const std::vector<Point3> pts{{0, 0, 0}, {0, 1, 0}, {5, 0.5, 0}};
  SliceConfig cfg;
  cfg.alpha_s = 1.0;
  cfg.axes = {Axis::X};
  const auto bs = boundary::estimate_boundary(pts, Vec3::UnitZ(), cfg);
  ASSERT_EQ(bs.size(), 3u);
  EXPECT_EQ(bs.source[2], (boundary::SliceTag{Axis::X, 5}));
}

TEST(Boundary, SlabsAreHalfOpen)
{
  EXPECT_EQ(boundary::slab_index(0.0, 0.0, 1.0), 0);
  EXPECT_EQ(boundary::slab_index(0.4999, 0.0, 1.0), 0);
  EXPECT_EQ(boundary::slab_index(0.5, 0.0, 1.0), 1);
  EXPECT_EQ(boundary::slab_index(1.4999, 0.0, 1.0), 1);
}

TEST(Boundary, DefaultAxesDropNormalAxis)
{
  EXPECT_EQ(boundary::default_axes(Vec3(0.1, 0.2, 0.97)), (std::vector<Axis>{Axis::X, Axis::Y}));
  EXPECT_EQ(boundary::default_axes(Vec3(-0.9, 0.3, 0.3)), (std::vector<Axis>{Axis::Y, Axis::Z}));
  EXPECT_EQ(boundary::default_axes(Vec3(0.0, 1.0, 0.0)), (std::vector<Axis>{Axis::X, Axis::Z}));
}

TEST(Boundary, MembershipAndUniqueness)
{
  for (double alpha : {0.01, 0.02, 0.05}) {
    const auto pts = grid(synth::Shape::LShape, {0.3, 0.3, 0.12, 0.14}, 0.01);
    const auto bs = boundary::estimate_boundary(pts, Vec3::UnitZ(), xy(alpha));
    EXPECT_TRUE(oracle::subset_exact(bs.points, pts));
    EXPECT_TRUE(std::is_sorted(bs.points.begin(), bs.points.end(), LexLess{}));
    EXPECT_EQ(std::adjacent_find(bs.points.begin(), bs.points.end()), bs.points.end());
    EXPECT_EQ(bs.source.size(), bs.points.size());
  }
}

TEST(Boundary, UnitSquareNearPerimeter)
{
  const auto pts = grid(synth::Shape::Rectangle, {1.0, 1.0}, 0.05);
  ASSERT_EQ(pts.size(), 441u);
  const auto bs = boundary::estimate_boundary(pts, Vec3::UnitZ(), xy(0.05));
  const auto square = oracle::rectangle(1.0, 1.0);
  for (const auto& p : bs.points) EXPECT_LE(oracle::dist_to_perimeter(square, {p.x(), p.y()}), 0.05 + 1e-12);
  EXPECT_LE(oracle::directed_hausdorff(oracle::sample_perimeter(square, 0.001), bs.points), 0.05 + 1e-12);
}

TEST(Boundary, HoleLeavesBoundaryUnchanged)
{
  const auto full = grid(synth::Shape::Rectangle, {1.0, 1.0}, 0.05);
  const auto holed = grid(synth::Shape::RectangleWithHole, {1.0, 1.0, 0.2, 0.2}, 0.05);
  ASSERT_LT(holed.size(), full.size());
  const auto a = boundary::estimate_boundary(full, Vec3::UnitZ(), xy(0.05));
  const auto b = boundary::estimate_boundary(holed, Vec3::UnitZ(), xy(0.05));

  std::vector<Point3> restricted;
  std::set<std::tuple<double, double, double>> survivors;
  for (const auto& p : holed) survivors.insert(oracle::key(p));
  for (const auto& p : a.points)
    if (survivors.count(oracle::key(p))) restricted.push_back(p);
  EXPECT_EQ(b.points, restricted);

  for (const auto& p : b.points) {
    const bool on_rim = std::abs(p.x() - 0.5) <= 0.15 && std::abs(p.y() - 0.5) <= 0.15;
    EXPECT_FALSE(on_rim) << p.transpose();
  }
}

TEST(Boundary, ExtremalInclusionOnGridShapes)
{
  const std::vector<std::pair<synth::Shape, std::vector<double>>> shapes{
      {synth::Shape::Rectangle, {0.3, 0.2}},
      {synth::Shape::Circle, {0.15}},
      {synth::Shape::LShape, {0.3, 0.3, 0.1, 0.1}},
      {synth::Shape::RectangleWithHole, {0.4, 0.3, 0.1, 0.1}},
  };
  for (const auto& [shape, dims] : shapes)
    for (double alpha : {0.01, 0.02, 0.04}) {
      auto pts = grid(shape, dims, 0.01);
      const auto rot = RigidTransform::rpy(0, 0, 0.3);
      for (auto& p : pts) p = rot.apply(p);
      const auto bs = boundary::estimate_boundary(pts, Vec3::UnitZ(), xy(alpha));
      std::set<std::tuple<double, double, double>> in_bs;
      for (const auto& p : bs.points) in_bs.insert(oracle::key(p));
      for (int k = 0; k < 2; ++k) {
        const auto [mn, mx] = std::minmax_element(pts.begin(), pts.end(),
                                                  [k](const Point3& a, const Point3& b) { return a[k] < b[k]; });
        EXPECT_TRUE(in_bs.count(oracle::key(*mn))) << synth::shape_name(shape) << " alpha " << alpha;
        EXPECT_TRUE(in_bs.count(oracle::key(*mx))) << synth::shape_name(shape) << " alpha " << alpha;
      }
    }
}

TEST(Boundary, CircleRecallInConvexPosition)
{
  for (double r : {0.1, 0.2, 0.5})
    for (std::size_t n : {24u, 60u, 180u}) {
      std::vector<Point3> pts;
      for (const auto& q : oracle::sample_circle(0.0, 0.0, r, n)) pts.emplace_back(q.x, q.y, 0.0);
      const double gap = 2.0 * r * std::sin(std::numbers::pi / static_cast<double>(n));
      const auto bs = boundary::estimate_boundary(pts, Vec3::UnitZ(), xy(0.45 * gap));
      EXPECT_GE(static_cast<double>(bs.size()), 0.9 * static_cast<double>(n)) << "r " << r << " n " << n;
    }
}

TEST(Boundary, ScaleEquivariance)
{
  const auto pts = grid(synth::Shape::LShape, {0.3, 0.3, 0.12, 0.14}, 0.01);
  const auto base = boundary::estimate_boundary(pts, Vec3::UnitZ(), xy(0.02));
  for (double s : {0.25, 0.5, 2.0, 8.0}) {
    std::vector<Point3> scaled;
    for (const auto& p : pts) scaled.push_back(s * p);
    const auto bs = boundary::estimate_boundary(scaled, Vec3::UnitZ(), xy(0.02 * s));
    ASSERT_EQ(bs.size(), base.size()) << "scale " << s;
    for (std::size_t i = 0; i < bs.size(); ++i) EXPECT_EQ(bs.points[i], s * base.points[i]);
  }
}

TEST(Boundary, IndependentOfInputOrder)
{
  synth::SyntheticCloudSpec spec;
  spec.dims = {0.3, 0.25};
  spec.noise_sigma = 0.002;
  spec.seed = 4;
  auto pts = synth::generate(spec).points();
  const auto ref = boundary::estimate_boundary(pts, Vec3::UnitZ(), xy(0.02));
  std::mt19937_64 gen(1);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(pts.begin(), pts.end(), gen);
    const auto bs = boundary::estimate_boundary(pts, Vec3::UnitZ(), xy(0.02));
    EXPECT_EQ(bs.points, ref.points);
    EXPECT_EQ(bs.source, ref.source);
  }
}

TEST(Boundary, FarthestPairTieIsLexSmallest)
{
  // A unit square: both diagonals are farthest.
  std::vector<Point3> pts{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}};
  const auto [a, b] = boundary::farthest_pair(pts);
  EXPECT_EQ(a, 0u);
  EXPECT_EQ(b, 3u);
}
