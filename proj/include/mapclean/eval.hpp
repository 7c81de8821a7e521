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

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "mapclean/pipeline.hpp"
#include "mapclean/types.hpp"

namespace mapclean {

/// SemanticKITTI ids of moving objects, the default removal targets.
const std::unordered_set<std::uint16_t>& default_dynamic_classes();

/// Voxel-wise preservation/rejection metrics. pr, rr, f1 in [0, 1].
struct MetricsReport {
  double pr = 0.0;
  double rr = 0.0;
  double f1 = 0.0;
  std::size_t static_total = 0;
  std::size_t static_preserved = 0;
  std::size_t dynamic_total = 0;
  std::size_t dynamic_removed = 0;
};

/// Harmonic mean of pr and rr; 0 when both are 0.
double f1_score(double pr, double rr);

/// Voxelizes the labeled ground-truth map (a voxel holding any
/// dynamic-class point counts as dynamic, otherwise static) and the output
/// map (presence only), then scores preservation of static voxels and
/// removal of dynamic voxels. Both clouds must be in the same map frame.
/// Throws EmptyGroundTruth naming the empty denominator.
MetricsReport compute_pr_rr(
    const PointCloud& gt_map, const PointCloud& output_map,
    double voxel_size = 0.2,
    const std::unordered_set<std::uint16_t>& dynamic_classes =
        default_dynamic_classes());

struct SweepRow {
  std::size_t interval = 0;
  std::optional<MetricsReport> report;
  std::string error;  // set when this interval's run failed
};

/// Runs the pipeline once per frame interval and evaluates each result
/// against the accumulated labeled map. A failing interval records its
/// error and the sweep continues.
std::vector<SweepRow> interval_sweep(
    const SequenceSource& source, const PipelineConfig& cfg,
    const std::vector<std::size_t>& intervals, double voxel_size = 0.2,
    const std::unordered_set<std::uint16_t>& dynamic_classes =
        default_dynamic_classes());

}  // namespace mapclean
