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

#include <Eigen/Dense>

#include "mapclean/types.hpp"

namespace mapclean {

/// Rigid transform placing a sensor-local cloud in the map frame.
/// rotation must be orthonormal with determinant +1 (checked to 1e-6).
struct PoseSE3 {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }
};

/// Tolerance on R*R^T - I entries (and on det(R) - 1).
inline constexpr double kPoseOrthonormalityTol = 1e-6;

bool is_valid_pose(const PoseSE3& pose, double tol = kPoseOrthonormalityTol);

/// Throws InvalidPose if the rotation fails the orthonormality check.
void validate_pose(const PoseSE3& pose, double tol = kPoseOrthonormalityTol);

PoseSE3 invert_pose(const PoseSE3& pose);

/// compose(a, b) applies b first, then a.
PoseSE3 compose(const PoseSE3& a, const PoseSE3& b);

inline Point3 transform_point(const Point3& p, const PoseSE3& pose) {
  const Eigen::Vector3d q = pose.apply({p.x, p.y, p.z});
  return {q.x(), q.y(), q.z(), p.intensity};
}

/// Applies pose to every point and flips the frame tag. Point order and
/// labels are preserved.
PointCloud transform_cloud(const PointCloud& cloud, const PoseSE3& pose);

}  // namespace mapclean
