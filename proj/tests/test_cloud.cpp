#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "ara/cloud.hpp"
#include "ara/rng.hpp"
#include "ara/synth.hpp"
#include "oracles.hpp"

using namespace ara;
using cloud::PointCloud;

namespace {

PointCloud grid_plane(double sx, double sy, double pitch, const RigidTransform& pose = {})
{
  synth::SyntheticCloudSpec spec;
  spec.dims = {sx, sy};
  spec.pitch = pitch;
  spec.pose = pose;
  return synth::generate(spec);
}

}  // namespace

TEST(Rng, SequenceIsFixedByEngine)
{
  Rng a(42);
  std::mt19937_64 ref(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), ref());
}

TEST(Rng, Uniform01InRange)
{
  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, NormalMoments)
{
  Rng r(7);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = r.normal();
    sum += v;
    sq += v * v;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(RigidTransform, RejectsNonRotation)
{
  Mat3 m = Mat3::Identity();
  m(0, 0) = 2.0;
  EXPECT_THROW(RigidTransform(m, Vec3::Zero()), std::invalid_argument);
}

TEST(RigidTransform, CompositionAndInverse)
{
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    const auto a = RigidTransform::rpy(u(gen), u(gen), u(gen), Vec3(u(gen), u(gen), u(gen)));
    const auto b = RigidTransform::rpy(u(gen), u(gen), u(gen), Vec3(u(gen), u(gen), u(gen)));
    const Point3 p(u(gen), u(gen), u(gen));
    EXPECT_LT((a.compose(b).apply(p) - a.apply(b.apply(p))).norm(), 1e-12);
    EXPECT_LT((a.inverse().apply(a.apply(p)) - p).norm(), 1e-12);
  }
}

TEST(RigidTransform, RpyMatchesAxisProducts)
{
  const double r = 0.3, p = -0.4, y = 1.1;
  const auto t = RigidTransform::rpy(r, p, y);
  const Mat3 ref = (Eigen::AngleAxisd(y, Vec3::UnitZ()) * Eigen::AngleAxisd(p, Vec3::UnitY()) *
                    Eigen::AngleAxisd(r, Vec3::UnitX()))
                       .toRotationMatrix();
  EXPECT_LT((t.rotation() - ref).norm(), 1e-12);
}

TEST(PointCloud, RejectsNonFinite)
{
  std::vector<Point3> pts{{0, 0, 0}, {std::nan(""), 0, 0}};
  EXPECT_THROW(PointCloud{pts}, std::invalid_argument);
}

TEST(Centroid, EmptyThrows)
{
  EXPECT_THROW(cloud::centroid(std::span<const Point3>{}), DomainError);
}

TEST(Passthrough, KeepsBoundsInclusive)
{
  PointCloud c({{0, 0, 0}, {5, 0, 0}, {5.0001, 0, 0}, {0, -5, 0}, {0, 0, -6}});
  const cloud::FilterConfig cfg;
  const auto out = cloud::passthrough(c, cfg);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out.frame(), c.frame());
}

TEST(Passthrough, Idempotent)
{
  synth::SyntheticCloudSpec spec;
  spec.dims = {0.3, 0.3};
  spec.outlier_fraction = 0.3;
  spec.seed = 5;
  const auto c = synth::generate(spec);
  cloud::FilterConfig cfg;
  cfg.passthrough[2] = {-0.05, 0.05};
  const auto once = cloud::passthrough(c, cfg);
  EXPECT_LT(once.size(), c.size());
  EXPECT_EQ(cloud::passthrough(once, cfg), once);
}

TEST(Voxel, OnePointPerOccupiedVoxel)
{
  const auto c = grid_plane(0.3, 0.3, 0.01);
  const auto out = cloud::voxel_downsample(c, 0.02);
  std::set<std::tuple<long, long, long>> voxels;
  for (const auto& p : c)
    voxels.insert({std::lround(std::floor(p.x() / 0.02)), std::lround(std::floor(p.y() / 0.02)),
                   std::lround(std::floor(p.z() / 0.02))});
  EXPECT_EQ(out.size(), voxels.size());
}

TEST(Voxel, CountMonotoneInLeaf)
{
  synth::SyntheticCloudSpec spec;
  spec.dims = {0.4, 0.3};
  spec.pitch = 0.005;
  spec.noise_sigma = 0.002;
  const auto c = synth::generate(spec);
  std::size_t prev = c.size();
  for (double leaf : {0.002, 0.004, 0.008, 0.016, 0.032, 0.064}) {
    const auto n = cloud::voxel_downsample(c, leaf).size();
    EXPECT_LE(n, prev) << "leaf " << leaf;
    prev = n;
  }
}

TEST(Voxel, LeafSmallerThanPitchKeepsGrid)
{
  const auto c = grid_plane(0.2, 0.1, 0.01);
  EXPECT_EQ(cloud::voxel_downsample(c, 0.005).size(), c.size());
}

TEST(Voxel, RejectsBadLeaf)
{
  const auto c = grid_plane(0.1, 0.1, 0.01);
  EXPECT_THROW(cloud::voxel_downsample(c, 0.0), DomainError);
}

TEST(OrientTowardOrigin, FlipsAwayNormals)
{
  const Point3 c(0, 0, 1);
  EXPECT_TRUE(cloud::orient_toward_origin(Vec3::UnitZ(), c).isApprox(-Vec3::UnitZ()));
  EXPECT_TRUE(cloud::orient_toward_origin(-Vec3::UnitZ(), c).isApprox(-Vec3::UnitZ()));
}

TEST(OrientTowardOrigin, TieMakesDominantComponentPositive)
{
  // Plane through the origin: no facing preference.
  EXPECT_TRUE(cloud::orient_toward_origin(-Vec3::UnitZ(), Point3::Zero()).isApprox(Vec3::UnitZ()));
}

TEST(LeastSquaresPlane, RecoversTiltedPlane)
{
  const auto pose = RigidTransform::rpy(0.2, -0.3, 0.5, Vec3(0.1, 0.2, 0.8));
  const auto c = grid_plane(0.3, 0.2, 0.01, pose);
  const auto plane = cloud::fit_plane_least_squares(c.view());
  const Vec3 truth = pose.rotation() * Vec3::UnitZ();
  EXPECT_LT(oracle::angle_deg(plane.normal, truth), 1e-6);
  for (const auto& p : c) EXPECT_NEAR(plane.normal.dot(p) + plane.offset, 0.0, 1e-9);
}

TEST(Ransac, TooFewPointsIsAbsent)
{
  cloud::FilterConfig cfg;
  cfg.min_inliers = 1;
  EXPECT_FALSE(cloud::ransac_plane(PointCloud{}, cfg, 0));
  EXPECT_FALSE(cloud::ransac_plane(PointCloud({{0, 0, 0}, {1, 0, 0}}), cfg, 0));
}

TEST(Ransac, BelowMinInliersIsAbsent)
{
  const auto c = grid_plane(0.1, 0.1, 0.01);  // 121 points
  cloud::FilterConfig cfg;
  EXPECT_FALSE(cloud::ransac_plane(c, cfg, 0));
  cfg.min_inliers = 100;
  EXPECT_TRUE(cloud::ransac_plane(c, cfg, 0));
}

TEST(Ransac, SameSeedSameResult)
{
  synth::SyntheticCloudSpec spec;
  spec.dims = {0.3, 0.3};
  spec.noise_sigma = 0.001;
  spec.outlier_fraction = 0.2;
  spec.seed = 11;
  const auto c = synth::generate(spec);
  const cloud::FilterConfig cfg;
  const auto a = cloud::ransac_plane(c, cfg, 99);
  const auto b = cloud::ransac_plane(c, cfg, 99);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->inliers, b->inliers);
  EXPECT_EQ(a->normal, b->normal);
  EXPECT_EQ(a->centroid, b->centroid);
}

TEST(Ransac, NormalFacesCamera)
{
  const auto pose = RigidTransform::rpy(0.0, 0.0, 0.0, Vec3(-0.15, -0.15, 0.6));
  const auto c = grid_plane(0.3, 0.3, 0.01, pose);
  const auto patch = cloud::ransac_plane(c, cloud::FilterConfig{}, 0);
  ASSERT_TRUE(patch);
  EXPECT_LT(patch->normal.dot(patch->centroid), 0.0);
  EXPECT_EQ(patch->inliers.size(), c.size());
  EXPECT_NEAR(patch->plane.normal.dot(patch->centroid) + patch->plane.offset, 0.0, 1e-12);
}

TEST(Ransac, AllCollinearIsAbsent)
{
  std::vector<Point3> pts;
  for (int i = 0; i < 300; ++i) pts.emplace_back(0.01 * i, 0, 0);
  EXPECT_FALSE(cloud::ransac_plane(PointCloud(pts), cloud::FilterConfig{}, 0));
}

TEST(TransformCloud, RetagsFrame)
{
  const auto c = grid_plane(0.1, 0.1, 0.05);
  const auto t = RigidTransform::translation(Vec3(0, 0, 1));
  const auto out = cloud::transform_cloud(c, t, cloud::Frame::RobotBase);
  EXPECT_EQ(out.frame(), cloud::Frame::RobotBase);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(out[i].z(), c[i].z() + 1.0);
}
