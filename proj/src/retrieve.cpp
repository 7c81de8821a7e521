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

#include "mapclean/retrieve.hpp"

#include <algorithm>
#include <numeric>

#include "mapclean/errors.hpp"

namespace mapclean {

namespace {

struct PlaneFit {
  Eigen::Vector3d normal;
  double offset;
};

// Least-squares plane through a point subset: mean-centered covariance,
// smallest principal direction as normal. Throws DegeneratePlane when the
// subset is rank-deficient (collinear or coincident points).
PlaneFit fit_plane_lsq(std::span<const Point3> points,
                       std::span<const std::uint32_t> ids) {
  if (ids.size() < 3) throw DegeneratePlane("fewer than 3 fit points");
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const std::uint32_t id : ids) {
    const Point3& p = points[id];
    mean += Eigen::Vector3d(p.x, p.y, p.z);
  }
  mean /= static_cast<double>(ids.size());

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const std::uint32_t id : ids) {
    const Point3& p = points[id];
    const Eigen::Vector3d c = Eigen::Vector3d(p.x, p.y, p.z) - mean;
    cov += c * c.transpose();
  }
  cov /= static_cast<double>(ids.size());

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  const Eigen::Vector3d evals = solver.eigenvalues();  // ascending
  if (!(evals(1) > 1e-12 + 1e-9 * evals(2))) {
    throw DegeneratePlane("fit points are rank-deficient");
  }
  Eigen::Vector3d normal = solver.eigenvectors().col(0);
  if (std::abs(normal.z()) < 1e-9) {
    throw DegeneratePlane("fitted plane is vertical");
  }
  if (normal.z() < 0.0) normal = -normal;
  return {normal, -normal.dot(mean)};
}

std::vector<std::uint32_t> lowest_z_seeds(std::span<const Point3> points,
                                          const RetrievalConfig& cfg) {
  std::vector<std::uint32_t> order(points.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return points[a].z < points[b].z;
  });
  const auto want = static_cast<std::size_t>(
      std::ceil(cfg.seed_fraction * static_cast<double>(points.size())));
  order.resize(std::clamp<std::size_t>(want, std::min<std::size_t>(3, points.size()),
                                       points.size()));
  return order;
}

GroundPlane iterate_fit(std::span<const Point3> points,
                        std::vector<std::uint32_t> active,
                        const RetrievalConfig& cfg) {
  if (points.size() < static_cast<std::size_t>(cfg.min_inliers)) {
    throw DegeneratePlane("fewer points than min_inliers");
  }
  PlaneFit fit{};
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    fit = fit_plane_lsq(points, active);
    active.clear();
    for (std::uint32_t id = 0; id < points.size(); ++id) {
      const Point3& p = points[id];
      const double dist = std::abs(fit.normal.x() * p.x + fit.normal.y() * p.y +
                                   fit.normal.z() * p.z + fit.offset);
      if (dist <= cfg.inlier_threshold) active.push_back(id);
    }
    if (active.size() < static_cast<std::size_t>(cfg.min_inliers)) {
      throw DegeneratePlane("inliers fell below min_inliers");
    }
  }
  return {fit.normal, fit.offset, cfg.inlier_threshold};
}

}  // namespace

GroundPlane fit_ground_plane(std::span<const Point3> points,
                             const RetrievalConfig& cfg) {
  if (points.size() < static_cast<std::size_t>(cfg.min_inliers)) {
    throw DegeneratePlane("fewer points than min_inliers");
  }
  return iterate_fit(points, lowest_z_seeds(points, cfg), cfg);
}

GroundPlane fit_ground_plane(std::span<const Point3> points,
                             std::span<const std::uint32_t> seed_ids,
                             const RetrievalConfig& cfg) {
  return iterate_fit(points,
                     std::vector<std::uint32_t>(seed_ids.begin(), seed_ids.end()),
                     cfg);
}

RetrievalResult retrieve_static(const DescriptorGrid& map_grid,
                                const BinStatusGrid& status,
                                const RetrievalConfig& cfg,
                                const GroundMask* ground) {
  const PointCloud& source = *map_grid.source;
  RetrievalResult result;
  result.retained.frame = source.frame;
  result.rejected.frame = source.frame;

  std::vector<Point3> bin_points;
  std::vector<std::uint32_t> seeds;
  for (int ring = 1; ring <= map_grid.params.n_rings; ++ring) {
    for (int sector = 1; sector <= map_grid.params.n_sectors; ++sector) {
      if (status.at(ring, sector) != BinStatus::DynamicConfirmed) continue;
      const BinDescriptor& bin = map_grid.at(ring, sector);
      if (bin.empty()) continue;

      bin_points.clear();
      bin_points.reserve(bin.size());
      for (const std::uint32_t id : bin.point_ids) {
        bin_points.push_back(source.points[id]);
      }

      seeds.clear();
      if (ground) {
        // Ground-layer hint: seed only from layers <= gamma when the bin
        // has enough of them for a plane.
        for (std::uint32_t local = 0; local < bin_points.size(); ++local) {
          if (layer_index(bin_points[local].z, map_grid.params) <=
              ground->gamma) {
            seeds.push_back(local);
          }
        }
        if (seeds.size() < 3) seeds.clear();
      }

      bool keep_none = false;
      GroundPlane plane;
      try {
        plane = seeds.empty() ? fit_ground_plane(bin_points, cfg)
                              : fit_ground_plane(bin_points, seeds, cfg);
      } catch (const DegeneratePlane&) {
        keep_none = true;
      }

      for (std::uint32_t local = 0; local < bin_points.size(); ++local) {
        const std::uint32_t id = bin.point_ids[local];
        const bool keep =
            !keep_none && plane.distance_to(bin_points[local]) <= cfg.inlier_threshold;
        auto& ids = keep ? result.retained_ids : result.rejected_ids;
        ids.push_back(id);
      }
    }
  }

  std::sort(result.retained_ids.begin(), result.retained_ids.end());
  std::sort(result.rejected_ids.begin(), result.rejected_ids.end());
  const auto gather = [&](const std::vector<std::uint32_t>& ids, PointCloud& out) {
    out.points.reserve(ids.size());
    for (const std::uint32_t id : ids) {
      if (source.has_labels()) {
        out.append(source.points[id], source.labels[id]);
      } else {
        out.append(source.points[id]);
      }
    }
  };
  gather(result.retained_ids, result.retained);
  gather(result.rejected_ids, result.rejected);
  return result;
}

}  // namespace mapclean
