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

#pragma once

#include <Eigen/Geometry>
#include <filesystem>
#include <random>

#include "mapclean/descriptor.hpp"
#include "mapclean/pose.hpp"
#include "mapclean/types.hpp"

namespace testutil {

using namespace mapclean;

inline PoseSE3 random_pose(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::Vector3d axis(unit(rng), unit(rng), unit(rng));
  if (axis.norm() < 1e-6) axis = Eigen::Vector3d::UnitZ();
  axis.normalize();
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  PoseSE3 pose;
  pose.rotation = Eigen::AngleAxisd(angle(rng), axis).toRotationMatrix();
  pose.translation = {10.0 * unit(rng), 10.0 * unit(rng), 10.0 * unit(rng)};
  return pose;
}

inline PoseSE3 yaw_pose(double yaw, const Eigen::Vector3d& t = {0, 0, 0}) {
  PoseSE3 pose;
  pose.rotation = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  pose.translation = t;
  return pose;
}

/// Random cloud drawn around the sensor; roughly 80% of the points land
/// inside the given VoI, the rest outside it.
inline PointCloud random_cloud(std::mt19937_64& rng, std::size_t n,
                               const VoiParams& v) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PointCloud cloud;
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool inside = unit(rng) < 0.8;
    const double rho = inside ? v.l_max * std::sqrt(unit(rng)) * 0.999
                              : v.l_max * (1.0 + unit(rng));
    const double theta = kTwoPi * unit(rng);
    const double z = inside
                         ? v.h_min + (v.h_max - v.h_min) * unit(rng)
                         : v.h_max + unit(rng);
    cloud.points.push_back({rho * std::cos(theta), rho * std::sin(theta), z});
  }
  return cloud;
}

/// Unique scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("mapclean_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testutil
