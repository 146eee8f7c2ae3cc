#include <gtest/gtest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>
#include <random>

#include "formplan/formation.hpp"

using namespace formplan;

namespace {

const std::vector<Point3> kOffsets{{0, 0, 2}, {3, 0, -1}, {-3, 0, -1}};

CandidatePath zigzag() {
  return CandidatePath({{40, 8, 30}, {45, 20, 31}, {50, 35, 29}, {58, 70, 30}, {64, 108, 34}});
}

}  // namespace

TEST(FormationSpec, Validation) {
  EXPECT_THROW(FormationSpec({}, 0.5), std::invalid_argument);
  EXPECT_THROW(FormationSpec(kOffsets, 0.0), std::invalid_argument);
  EXPECT_THROW(FormationSpec({{0, NAN, 0}}, 0.5), std::invalid_argument);
  const FormationSpec f(kOffsets, 0.5);
  EXPECT_NEAR(f.radius(), std::sqrt(10.0), 1e-15);
  EXPECT_EQ(f.uav_count(), 3u);
}

TEST(DerivePaths, BundledOffsetsShiftEveryWaypoint) {
  const auto centroid = zigzag();
  const auto paths = derive_paths(centroid, FormationSpec(kOffsets, 0.5));
  ASSERT_EQ(paths.size(), 3u);
  for (std::size_t n = 0; n < 3; ++n) {
    ASSERT_EQ(paths[n].size(), centroid.size());
    for (std::size_t l = 0; l < centroid.size(); ++l)
      EXPECT_EQ(paths[n][l], centroid[l] + kOffsets[n]);
  }
  for (std::size_t l = 0; l < centroid.size(); ++l)
    EXPECT_EQ(paths[0][l].z, centroid[l].z + 2.0);
}

TEST(DerivePaths, ZeroOffsetIsIdentity) {
  const auto centroid = zigzag();
  const auto paths = derive_paths(centroid, FormationSpec({{0, 0, 0}}, 0.5));
  EXPECT_EQ(paths[0], centroid);
}

TEST(DerivePaths, FormationFrameQuarterYaw) {
  const auto centroid = zigzag();
  const std::vector<EulerAngles> attitude(centroid.size(), EulerAngles(0, 0, std::numbers::pi / 2));
  const auto paths =
      derive_paths(centroid, FormationSpec({{3, 0, 0}}, 0.5, OffsetFrame::formation), attitude);
  for (std::size_t l = 0; l < centroid.size(); ++l) {
    const Point3 d = paths[0][l] - centroid[l];
    EXPECT_NEAR(d.x, 0.0, 1e-12);
    EXPECT_NEAR(d.y, 3.0, 1e-12);
    EXPECT_NEAR(d.z, 0.0, 1e-12);
  }
}

TEST(DerivePaths, AttitudeSizeMismatchThrows) {
  const std::vector<EulerAngles> attitude(2);
  EXPECT_THROW(derive_paths(zigzag(), FormationSpec(kOffsets, 0.5, OffsetFrame::formation), attitude),
               std::invalid_argument);
}

TEST(DerivePaths, RigidBodyDistancesPreserved) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> a(-3.0, 3.0);
  const auto centroid = zigzag();
  for (auto frame : {OffsetFrame::inertial, OffsetFrame::formation}) {
    std::vector<EulerAngles> attitude;
    for (std::size_t l = 0; l < centroid.size(); ++l) attitude.emplace_back(a(rng), a(rng), a(rng));
    const auto paths = derive_paths(centroid, FormationSpec(kOffsets, 0.5, frame), attitude);
    for (std::size_t l = 0; l < centroid.size(); ++l)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
          EXPECT_NEAR(distance(paths[i][l], paths[j][l]), distance(kOffsets[i], kOffsets[j]), 1e-12);
  }
}

TEST(TrackingError, Examples) {
  const Point3 p{1, 2, 3};
  const auto zero = tracking_error(p, p, EulerAngles(0.3, 0.1, -1));
  EXPECT_EQ(zero.inertial, Point3{});
  EXPECT_NEAR(zero.formation.norm(), 0.0, 1e-15);

  const auto ident = tracking_error({4, 6, 8}, {3, 4, 5}, EulerAngles(0, 0, 0));
  EXPECT_EQ(ident.inertial, (Point3{1, 2, 3}));
  EXPECT_EQ(ident.formation, (Point3{1, 2, 3}));
}

TEST(TrackingError, RotatedByTransposeOfEigenOracle) {
  const auto e = tracking_error({1, 2, 3}, {0, 0, 0}, EulerAngles(0.1, 0.2, 0.3));
  const Eigen::Matrix3d r = (Eigen::AngleAxisd(0.3, Eigen::Vector3d::UnitZ()) *
                             Eigen::AngleAxisd(0.2, Eigen::Vector3d::UnitY()) *
                             Eigen::AngleAxisd(0.1, Eigen::Vector3d::UnitX()))
                                .toRotationMatrix();
  const Eigen::Vector3d expected = r.transpose() * Eigen::Vector3d(1, 2, 3);
  EXPECT_NEAR(e.formation.x, expected.x(), 1e-12);
  EXPECT_NEAR(e.formation.y, expected.y(), 1e-12);
  EXPECT_NEAR(e.formation.z, expected.z(), 1e-12);
  EXPECT_NEAR(e.formation.norm(), std::sqrt(14.0), 1e-12);
}
