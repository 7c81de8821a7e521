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
#include <vector>

#include "mapclean/classify.hpp"
#include "mapclean/descriptor.hpp"
#include "mapclean/io.hpp"
#include "mapclean/retrieve.hpp"

namespace mapclean {

struct PipelineConfig {
  VoiParams voi;
  ClassifyConfig classify;
  RetrievalConfig retrieval;
  /// Process every k-th frame of the range.
  std::size_t frame_interval = 1;
  /// Ablation switches. ablate_height_tests turns off the layer-word veto,
  /// the ground-layer search, and the seeded retrieval (ratio-test-only
  /// behavior); ablate_spt skips the isolated-bin demotion.
  bool ablate_height_tests = false;
  bool ablate_spt = false;

  void validate() const;
};

struct FrameStats {
  std::size_t frame = 0;
  /// DynamicConfirmed bins before the surrounding-points pass.
  std::size_t dynamic_bins = 0;
  /// Ground-plane fits invoked, i.e. DynamicConfirmed bins after it.
  std::size_t rgpf_count = 0;
  double seconds = 0.0;
};

/// The evolving map: points in map frame with stable ids, plus everything
/// rejected so far. map ids and rejected ids stay disjoint and together
/// always equal the initial id set.
struct MapState {
  PointCloud cloud;  // map frame, ordered by id
  std::vector<std::uint32_t> ids;
  PointCloud rejected;
  std::vector<std::uint32_t> rejected_ids;
  std::vector<FrameStats> stats;
};

/// Builds the naive accumulated map: every scan in [start, end]
/// transformed by its pose and concatenated, ids 0..N-1.
MapState accumulate_map(const SequenceSource& source);

struct SubmapSplit {
  PointCloud submap;  // sensor-local frame
  std::vector<std::uint32_t> submap_ids;
  std::vector<std::uint32_t> submap_rows;  // row indices into the map cloud
  PointCloud complement;                   // map frame
  std::vector<std::uint32_t> complement_ids;
  std::vector<std::uint32_t> complement_rows;
};

/// Expresses the map in the sensor frame of `pose` and splits it into the
/// VoI part (submap, sensor-local) and the rest (complement, map frame).
SubmapSplit fetch_submap(const MapState& map, const PoseSE3& pose,
                         const VoiParams& voi);

/// One full removal step: descriptor grids for scan and submap, ground
/// layer search, the test cascade, ground retrieval, and the map update.
/// Returns the updated state; the input is untouched.
MapState process_frame(const MapState& map, const PointCloud& scan,
                       const PoseSE3& pose, const PipelineConfig& cfg);

struct RunResult {
  MapState map;
  /// The accumulated map before any removal, for evaluation against it.
  PointCloud initial_map;
};

/// Accumulates the map (or takes a prebuilt one with ids 0..N-1) and runs
/// process_frame on frames start, start+k, ... within the source range.
RunResult run_sequence(const SequenceSource& source, const PipelineConfig& cfg,
                       std::optional<PointCloud> prebuilt_map = {});

/// Stats CSV: frame,dynamic_bins,rgpf_count,seconds
void write_stats_csv(std::ostream& out, const std::vector<FrameStats>& stats);

}  // namespace mapclean
