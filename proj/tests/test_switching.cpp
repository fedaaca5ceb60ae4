#include <gtest/gtest.h>

#include "ara/switching.hpp"
#include "ara/synth.hpp"

using namespace ara;
using switching::Transformation;

namespace {

cloud::PointCloud square(double z_offset = 0.0)
{
  synth::SyntheticCloudSpec spec;
  spec.dims = {0.3, 0.3};
  spec.pose = RigidTransform::translation(Vec3(0, 0, z_offset));
  return synth::generate(spec);
}

}  // namespace

TEST(SwitchingFunction, TruthTable)
{
  for (int bits = 0; bits < 8; ++bits) {
    const bool pa = bits & 1, am = bits & 2, hc = bits & 4;
    const auto [s, t] = switching::switching_function(pa, am, hc);
    EXPECT_EQ(s, pa && am && hc);
    EXPECT_EQ(t, s ? Transformation::Mobile : Transformation::InchWorm);
  }
}

TEST(PlaneAvailability, AbsentPatch)
{
  EXPECT_FALSE(switching::plane_availability(std::nullopt));
}

TEST(HeightAvailability, ToleranceIsInclusive)
{
  switching::HeightConfig cfg;
  cfg.epsilon = 0.01;
  EXPECT_TRUE(switching::height_availability(Point3(0, 0, 0.01), cfg).available);
  EXPECT_FALSE(switching::height_availability(Point3(0, 0, 0.0101), cfg).available);
  EXPECT_NEAR(switching::height_availability(Point3(0, 0, -0.07), cfg).delta, -0.07, 1e-15);
}

TEST(HeightAvailability, UsesCameraToBase)
{
  // Camera looking down from 0.5 m above the base origin: camera z maps to base -z.
  switching::HeightConfig cfg;
  cfg.camera_to_base = RigidTransform::rpy(std::numbers::pi, 0.0, 0.0, Vec3(0, 0, 0.5));
  const auto h = switching::height_availability(Point3(0.1, 0.0, 0.5), cfg);
  EXPECT_NEAR(h.delta, 0.0, 1e-12);
  EXPECT_TRUE(h.available);
  cfg.z_robotbase = 0.05;
  EXPECT_NEAR(switching::height_availability(Point3(0.1, 0.0, 0.5), cfg).delta, -0.05, 1e-12);
}

TEST(HeightAvailability, RejectsNegativeEpsilon)
{
  switching::HeightConfig cfg;
  cfg.epsilon = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Decide, EmptyCloud)
{
  const auto d = switching::decide(cloud::PointCloud{}, switching::PipelineConfig{}, 0);
  EXPECT_FALSE(d.s_pa);
  EXPECT_FALSE(d.s);
  EXPECT_EQ(d.transformation, Transformation::InchWorm);
  EXPECT_FALSE(d.pose);
  EXPECT_EQ(d.diagnostics.boundary_size, 0u);
}

TEST(Decide, SquareAtBaseHeightIsMobile)
{
  const auto d = switching::decide(square(), switching::PipelineConfig{}, 0);
  EXPECT_TRUE(d.s_pa);
  EXPECT_TRUE(d.s_am);
  EXPECT_TRUE(d.s_hc);
  EXPECT_EQ(d.transformation, Transformation::Mobile);
  ASSERT_TRUE(d.pose);
  EXPECT_EQ(d.diagnostics.input_points, 961u);
  EXPECT_EQ(d.diagnostics.inlier_count, 961u);
}

TEST(Decide, LoweredSquareKeepsPose)
{
  const auto d = switching::decide(square(-0.07), switching::PipelineConfig{}, 0);
  EXPECT_TRUE(d.s_pa);
  EXPECT_TRUE(d.s_am);
  EXPECT_FALSE(d.s_hc);
  EXPECT_EQ(d.transformation, Transformation::InchWorm);
  EXPECT_TRUE(d.pose);
  ASSERT_TRUE(d.diagnostics.height_delta);
  EXPECT_NEAR(*d.diagnostics.height_delta, -0.07, 1e-9);
}

TEST(Decide, StripFailsArea)
{
  synth::SyntheticCloudSpec spec;
  spec.shape = synth::Shape::Strip;
  spec.dims = {0.6, 0.05};
  const auto d = switching::decide(synth::generate(spec), switching::PipelineConfig{}, 0);
  EXPECT_TRUE(d.s_pa);
  EXPECT_FALSE(d.s_am);
  EXPECT_TRUE(d.s_hc);
  EXPECT_FALSE(d.pose);
  EXPECT_EQ(d.transformation, Transformation::InchWorm);
}

TEST(Decide, SmallPatchHasNoPlane)
{
  synth::SyntheticCloudSpec spec;
  spec.dims = {0.05, 0.05};  // 36 points, below min_inliers
  const auto d = switching::decide(synth::generate(spec), switching::PipelineConfig{}, 0);
  EXPECT_FALSE(d.s_pa);
  EXPECT_FALSE(d.s_am);
  EXPECT_FALSE(d.s_hc);
  EXPECT_FALSE(d.pose);
}

TEST(Decide, PoseIffAreaAvailable)
{
  for (double w : {0.05, 0.1, 0.2, 0.3}) {
    switching::PipelineConfig cfg;
    cfg.foot.w = w;
    const auto d = switching::decide(square(), cfg, 0);
    EXPECT_EQ(d.pose.has_value(), d.s_am) << "w " << w;
    EXPECT_EQ(d.s, d.s_pa && d.s_am && d.s_hc);
  }
}

TEST(Decide, Deterministic)
{
  synth::SyntheticCloudSpec spec;
  spec.dims = {0.3, 0.3};
  spec.noise_sigma = 0.001;
  spec.outlier_fraction = 0.2;
  spec.seed = 3;
  const auto c = synth::generate(spec);
  const auto a = switching::decide(c, switching::PipelineConfig{}, 17);
  const auto b = switching::decide(c, switching::PipelineConfig{}, 17);
  EXPECT_EQ(a.diagnostics.inlier_count, b.diagnostics.inlier_count);
  ASSERT_EQ(a.pose.has_value(), b.pose.has_value());
  if (a.pose) {
    EXPECT_EQ(a.pose->position, b.pose->position);
  }
}
