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

#include "mapclean/pose.hpp"

#include "mapclean/errors.hpp"

namespace mapclean {

bool is_valid_pose(const PoseSE3& pose, double tol) {
  const Eigen::Matrix3d gram =
      pose.rotation * pose.rotation.transpose() - Eigen::Matrix3d::Identity();
  if (gram.cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(pose.rotation.determinant() - 1.0) > tol) return false;
  return pose.translation.allFinite();
}

void validate_pose(const PoseSE3& pose, double tol) {
  if (!is_valid_pose(pose, tol)) {
    throw InvalidPose("rotation is not orthonormal with det +1");
  }
}

PoseSE3 invert_pose(const PoseSE3& pose) {
  validate_pose(pose);
  PoseSE3 inv;
  inv.rotation = pose.rotation.transpose();
  inv.translation = -(inv.rotation * pose.translation);
  return inv;
}

PoseSE3 compose(const PoseSE3& a, const PoseSE3& b) {
  PoseSE3 out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

PointCloud transform_cloud(const PointCloud& cloud, const PoseSE3& pose) {
  validate_pose(pose);
  PointCloud out;
  out.labels = cloud.labels;
  out.frame = cloud.frame == CloudFrame::SensorLocal ? CloudFrame::Map
                                                     : CloudFrame::SensorLocal;
  out.points.reserve(cloud.size());
  for (const Point3& p : cloud.points) {
    out.points.push_back(transform_point(p, pose));
  }
  return out;
}

}  // namespace mapclean
