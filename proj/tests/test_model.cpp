/*
 * Copyright 2026 The Mapclean Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <random>

#include "mapclean/errors.hpp"
#include "mapclean/pose.hpp"
#include "support/test_helpers.hpp"

using namespace mapclean;

TEST_CASE("transform_cloud with identity pose keeps the cloud") {
  PointCloud cloud;
  cloud.points = {{1, 2, 3}, {-4, 0.5, 6}};
  cloud.labels = {{10, 1}, {252, 2}};
  const PointCloud out = transform_cloud(cloud, PoseSE3{});
  REQUIRE(out.size() == 2);
  CHECK(out.points[0].x == 1.0);
  CHECK(out.points[1].y == 0.5);
  CHECK(out.labels == cloud.labels);
  CHECK(out.frame == CloudFrame::Map);  // tag flips
}

TEST_CASE("pure translation moves the origin") {
  PoseSE3 pose;
  pose.translation = {1, 0, 0};
  PointCloud cloud;
  cloud.points = {{0, 0, 0}};
  const PointCloud out = transform_cloud(cloud, pose);
  CHECK(out.points[0].x == 1.0);
  CHECK(out.points[0].y == 0.0);
  CHECK(out.points[0].z == 0.0);
}

TEST_CASE("90 degree yaw maps x axis to y axis") {
  const PoseSE3 pose = testutil::yaw_pose(M_PI / 2);
  PointCloud cloud;
  cloud.points = {{1, 0, 0}};
  const PointCloud out = transform_cloud(cloud, pose);
  CHECK(std::abs(out.points[0].x - 0.0) < 1e-9);
  CHECK(std::abs(out.points[0].y - 1.0) < 1e-9);
  CHECK(std::abs(out.points[0].z - 0.0) < 1e-9);
}

TEST_CASE("transform_cloud rejects an invalid pose") {
  PoseSE3 pose;
  pose.rotation(0, 0) = 2.0;
  PointCloud cloud;
  cloud.points = {{1, 1, 1}};
  CHECK_THROWS_AS(transform_cloud(cloud, pose), InvalidPose);
  CHECK_THROWS_AS(invert_pose(pose), InvalidPose);
}

TEST_CASE("invert_pose basics") {
  CHECK(invert_pose(PoseSE3{}).translation.norm() == 0.0);

  PoseSE3 shifted;
  shifted.translation = {1, 2, 3};
  const PoseSE3 inv = invert_pose(shifted);
  CHECK(inv.translation.x() == doctest::Approx(-1));
  CHECK(inv.translation.y() == doctest::Approx(-2));
  CHECK(inv.translation.z() == doctest::Approx(-3));
}

TEST_CASE("invert_pose is an involution and a true inverse") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const PoseSE3 pose = testutil::random_pose(rng);
    const PoseSE3 twice = invert_pose(invert_pose(pose));
    CHECK((twice.rotation - pose.rotation).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((twice.translation - pose.translation).cwiseAbs().maxCoeff() < 1e-9);

    const PoseSE3 id = compose(pose, invert_pose(pose));
    CHECK((id.rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
          1e-9);
    CHECK(id.translation.cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("transforms preserve pairwise distances and invert exactly") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-40.0, 40.0);
  for (int trial = 0; trial < 20; ++trial) {
    PointCloud cloud;
    for (int i = 0; i < 60; ++i) {
      cloud.points.push_back({coord(rng), coord(rng), coord(rng)});
    }
    const PoseSE3 pose = testutil::random_pose(rng);
    const PointCloud moved = transform_cloud(cloud, pose);
    REQUIRE(moved.size() == cloud.size());

    for (std::size_t a = 0; a < cloud.size(); a += 7) {
      for (std::size_t b = a + 1; b < cloud.size(); b += 11) {
        const auto d = [](const Point3& p, const Point3& q) {
          return std::sqrt((p.x - q.x) * (p.x - q.x) +
                           (p.y - q.y) * (p.y - q.y) +
                           (p.z - q.z) * (p.z - q.z));
        };
        const double before = d(cloud.points[a], cloud.points[b]);
        const double after = d(moved.points[a], moved.points[b]);
        CHECK(std::abs(after - before) <= 1e-9 * std::max(1.0, before));
      }
    }

    const PointCloud back = transform_cloud(moved, invert_pose(pose));
    for (std::size_t k = 0; k < cloud.size(); ++k) {
      CHECK(std::abs(back.points[k].x - cloud.points[k].x) < 1e-9);
      CHECK(std::abs(back.points[k].y - cloud.points[k].y) < 1e-9);
      CHECK(std::abs(back.points[k].z - cloud.points[k].z) < 1e-9);
    }
  }
}
