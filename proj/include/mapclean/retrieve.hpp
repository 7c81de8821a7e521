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
#include <span>
#include <vector>

#include "mapclean/classify.hpp"
#include "mapclean/descriptor.hpp"

namespace mapclean {

struct RetrievalConfig {
  /// Fraction of lowest-z points used to seed the plane fit.
  double seed_fraction = 0.2;
  int iterations = 3;
  /// Perpendicular distance bound for plane inliers, meters.
  double inlier_threshold = 0.125;
  int min_inliers = 4;
};

/// Plane n . p + d = 0 with |n| = 1 and n.z > 0.
struct GroundPlane {
  Eigen::Vector3d normal{0.0, 0.0, 1.0};
  double offset = 0.0;
  double inlier_threshold = 0.125;

  double distance_to(const Point3& p) const {
    return std::abs(normal.x() * p.x + normal.y() * p.y + normal.z() * p.z +
                    offset);
  }
};

/// Iterative least-squares ground fit: seed with the lowest-z
/// seed_fraction, fit the covariance's smallest principal direction, then
/// re-select inliers within inlier_threshold. Deterministic. Throws
/// DegeneratePlane on rank-deficient input or when inliers fall below
/// min_inliers.
GroundPlane fit_ground_plane(std::span<const Point3> points,
                             const RetrievalConfig& cfg);

/// Same fit with explicit seed indices (used with the ground-layer hint).
GroundPlane fit_ground_plane(std::span<const Point3> points,
                             std::span<const std::uint32_t> seed_ids,
                             const RetrievalConfig& cfg);

struct RetrievalResult {
  PointCloud retained;
  PointCloud rejected;
  /// Indices into the map grid's source cloud, ascending.
  std::vector<std::uint32_t> retained_ids;
  std::vector<std::uint32_t> rejected_ids;
};

/// For every DynamicConfirmed bin, fits a ground plane over the bin's map
/// points and splits them into plane inliers (retained) and the rest
/// (rejected); a degenerate fit rejects the whole bin. Points of all other
/// bins are untouched. When a ground mask is given, seeds come from layers
/// <= gamma if enough such points exist.
RetrievalResult retrieve_static(const DescriptorGrid& map_grid,
                                const BinStatusGrid& status,
                                const RetrievalConfig& cfg,
                                const GroundMask* ground = nullptr);

}  // namespace mapclean
