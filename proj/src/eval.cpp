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

#include "mapclean/eval.hpp"

#include <cmath>
#include <unordered_map>

#include "mapclean/errors.hpp"

namespace mapclean {

const std::unordered_set<std::uint16_t>& default_dynamic_classes() {
  static const std::unordered_set<std::uint16_t> classes{252, 253, 254, 255,
                                                         256, 257, 258, 259};
  return classes;
}

double f1_score(double pr, double rr) {
  if (pr + rr <= 0.0) return 0.0;
  return 2.0 * pr * rr / (pr + rr);
}

namespace {

struct VoxelKey {
  std::int64_t x;
  std::int64_t y;
  std::int64_t z;
  bool operator==(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
  std::size_t operator()(const VoxelKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (const std::int64_t v : {k.x, k.y, k.z}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

VoxelKey voxel_of(const Point3& p, double voxel_size) {
  return {static_cast<std::int64_t>(std::floor(p.x / voxel_size)),
          static_cast<std::int64_t>(std::floor(p.y / voxel_size)),
          static_cast<std::int64_t>(std::floor(p.z / voxel_size))};
}

}  // namespace

MetricsReport compute_pr_rr(
    const PointCloud& gt_map, const PointCloud& output_map, double voxel_size,
    const std::unordered_set<std::uint16_t>& dynamic_classes) {
  if (!gt_map.has_labels()) {
    throw EmptyGroundTruth("ground-truth map carries no labels");
  }
  if (!(voxel_size > 0.0)) throw ConfigError("voxel_size must be > 0");

  // A voxel holding any dynamic-class point counts as dynamic.
  std::unordered_map<VoxelKey, bool, VoxelKeyHash> gt_voxels;
  gt_voxels.reserve(gt_map.size());
  for (std::size_t k = 0; k < gt_map.size(); ++k) {
    const bool dynamic = dynamic_classes.contains(gt_map.labels[k].semantic);
    auto [it, inserted] =
        gt_voxels.try_emplace(voxel_of(gt_map.points[k], voxel_size), dynamic);
    if (!inserted && dynamic) it->second = true;
  }

  std::unordered_set<VoxelKey, VoxelKeyHash> present;
  present.reserve(output_map.size());
  for (const Point3& p : output_map.points) {
    present.insert(voxel_of(p, voxel_size));
  }

  MetricsReport report;
  for (const auto& [key, dynamic] : gt_voxels) {
    if (dynamic) {
      ++report.dynamic_total;
      if (!present.contains(key)) ++report.dynamic_removed;
    } else {
      ++report.static_total;
      if (present.contains(key)) ++report.static_preserved;
    }
  }
  if (report.static_total == 0) {
    throw EmptyGroundTruth("ground truth has no static voxels");
  }
  if (report.dynamic_total == 0) {
    throw EmptyGroundTruth("ground truth has no dynamic voxels");
  }
  report.pr = static_cast<double>(report.static_preserved) /
              static_cast<double>(report.static_total);
  report.rr = static_cast<double>(report.dynamic_removed) /
              static_cast<double>(report.dynamic_total);
  report.f1 = f1_score(report.pr, report.rr);
  return report;
}

std::vector<SweepRow> interval_sweep(
    const SequenceSource& source, const PipelineConfig& cfg,
    const std::vector<std::size_t>& intervals, double voxel_size,
    const std::unordered_set<std::uint16_t>& dynamic_classes) {
  std::vector<SweepRow> rows;
  rows.reserve(intervals.size());
  for (const std::size_t interval : intervals) {
    SweepRow row;
    row.interval = interval;
    try {
      PipelineConfig run_cfg = cfg;
      run_cfg.frame_interval = interval;
      const RunResult result = run_sequence(source, run_cfg);
      row.report = compute_pr_rr(result.initial_map, result.map.cloud,
                                 voxel_size, dynamic_classes);
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mapclean
