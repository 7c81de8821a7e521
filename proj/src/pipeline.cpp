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

#include "mapclean/pipeline.hpp"

#include <chrono>
#include <ostream>

#include "mapclean/errors.hpp"

namespace mapclean {

void PipelineConfig::validate() const {
  voi.validate();
  if (frame_interval < 1) throw ConfigError("frame_interval must be >= 1");
  if (!(classify.srt_threshold > 0.0 && classify.srt_threshold < 1.0)) {
    throw ConfigError("srt_threshold must lie in (0, 1)");
  }
  if (classify.spt_range < 0) throw ConfigError("spt_range must be >= 0");
  if (!(retrieval.seed_fraction > 0.0 && retrieval.seed_fraction <= 1.0)) {
    throw ConfigError("seed_fraction must lie in (0, 1]");
  }
  if (retrieval.iterations < 1) throw ConfigError("iterations must be >= 1");
}

MapState accumulate_map(const SequenceSource& source) {
  source.validate();
  MapState map;
  map.cloud.frame = CloudFrame::Map;
  const bool labeled = source.has_labels();
  for (std::size_t frame = source.start_frame; frame <= source.end_frame;
       ++frame) {
    const PointCloud scan = source.load_scan(frame);
    const PointCloud placed = transform_cloud(scan, source.pose(frame));
    map.cloud.points.insert(map.cloud.points.end(), placed.points.begin(),
                            placed.points.end());
    if (labeled) {
      map.cloud.labels.insert(map.cloud.labels.end(), placed.labels.begin(),
                              placed.labels.end());
    }
  }
  map.ids.resize(map.cloud.size());
  for (std::uint32_t i = 0; i < map.ids.size(); ++i) map.ids[i] = i;
  map.rejected.frame = CloudFrame::Map;
  return map;
}

SubmapSplit fetch_submap(const MapState& map, const PoseSE3& pose,
                         const VoiParams& voi) {
  validate_pose(pose);
  voi.validate();
  const PoseSE3 to_sensor = invert_pose(pose);
  const bool labeled = map.cloud.has_labels();

  SubmapSplit split;
  split.submap.frame = CloudFrame::SensorLocal;
  split.complement.frame = CloudFrame::Map;
  for (std::uint32_t row = 0; row < map.cloud.size(); ++row) {
    const Point3 ego = transform_point(map.cloud.points[row], to_sensor);
    if (in_voi(ego, voi)) {
      if (labeled) {
        split.submap.append(ego, map.cloud.labels[row]);
      } else {
        split.submap.append(ego);
      }
      split.submap_ids.push_back(map.ids[row]);
      split.submap_rows.push_back(row);
    } else {
      if (labeled) {
        split.complement.append(map.cloud.points[row], map.cloud.labels[row]);
      } else {
        split.complement.append(map.cloud.points[row]);
      }
      split.complement_ids.push_back(map.ids[row]);
      split.complement_rows.push_back(row);
    }
  }
  return split;
}

MapState process_frame(const MapState& map, const PointCloud& scan,
                       const PoseSE3& pose, const PipelineConfig& cfg) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();

  SubmapSplit split = fetch_submap(map, pose, cfg.voi);

  const DescriptorGrid scan_grid = build_descriptor_grid(scan, cfg.voi);
  auto submap_cloud = std::make_shared<const PointCloud>(std::move(split.submap));
  const DescriptorGrid map_grid = build_descriptor_grid(submap_cloud, cfg.voi);

  GroundMask ground;
  ClassifyConfig classify_cfg = cfg.classify;
  if (cfg.ablate_height_tests) {
    // Ratio-test-only behavior: fallback ground mask and a never-vetoing
    // layer-overlap bound.
    ground = make_ground_mask(cfg.classify.glt_fallback_layer, true);
    classify_cfg.max_overlap_bits = cfg.voi.n_layers;
  } else {
    ground = ground_layer_test(scan_grid, classify_cfg);
  }

  BinStatusGrid status = classify_bins(scan_grid, map_grid, ground, classify_cfg);
  const std::size_t dynamic_before = status.count(BinStatus::DynamicConfirmed);
  if (!cfg.ablate_spt) {
    status = surrounding_points_test(status, classify_cfg);
  }
  const std::size_t dynamic_after = status.count(BinStatus::DynamicConfirmed);

  const RetrievalResult retrieval = retrieve_static(
      map_grid, status, cfg.retrieval,
      cfg.ablate_height_tests ? nullptr : &ground);

  // Row-level keep mask: complement rows stay; submap rows stay unless the
  // bin was confirmed dynamic and the retrieval rejected the point.
  // Original map-frame coordinates are reused so point identity is exact.
  std::vector<std::uint8_t> keep(map.cloud.size(), 1);
  for (const std::uint32_t local : retrieval.rejected_ids) {
    keep[split.submap_rows[local]] = 0;
  }

  MapState next;
  next.cloud.frame = CloudFrame::Map;
  next.rejected = map.rejected;
  next.rejected_ids = map.rejected_ids;
  next.stats = map.stats;
  const bool labeled = map.cloud.has_labels();
  next.cloud.points.reserve(map.cloud.size() - retrieval.rejected_ids.size());
  next.ids.reserve(next.cloud.points.capacity());
  for (std::uint32_t row = 0; row < map.cloud.size(); ++row) {
    if (keep[row]) {
      if (labeled) {
        next.cloud.append(map.cloud.points[row], map.cloud.labels[row]);
      } else {
        next.cloud.append(map.cloud.points[row]);
      }
      next.ids.push_back(map.ids[row]);
    } else {
      if (labeled) {
        next.rejected.append(map.cloud.points[row], map.cloud.labels[row]);
      } else {
        next.rejected.append(map.cloud.points[row]);
      }
      next.rejected_ids.push_back(map.ids[row]);
    }
  }

  FrameStats frame_stats;
  frame_stats.dynamic_bins = dynamic_before;
  frame_stats.rgpf_count = dynamic_after;
  frame_stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  next.stats.push_back(frame_stats);
  return next;
}

RunResult run_sequence(const SequenceSource& source, const PipelineConfig& cfg,
                       std::optional<PointCloud> prebuilt_map) {
  cfg.validate();
  source.validate();

  RunResult result;
  MapState map;
  if (prebuilt_map) {
    map.cloud = std::move(*prebuilt_map);
    map.cloud.frame = CloudFrame::Map;
    map.ids.resize(map.cloud.size());
    for (std::uint32_t i = 0; i < map.ids.size(); ++i) map.ids[i] = i;
    map.rejected.frame = CloudFrame::Map;
  } else {
    map = accumulate_map(source);
  }
  result.initial_map = map.cloud;

  for (std::size_t frame = source.start_frame; frame <= source.end_frame;
       frame += cfg.frame_interval) {
    const PointCloud scan = source.load_scan(frame);
    map = process_frame(map, scan, source.pose(frame), cfg);
    map.stats.back().frame = frame;
  }
  result.map = std::move(map);
  return result;
}

void write_stats_csv(std::ostream& out, const std::vector<FrameStats>& stats) {
  out << "frame,dynamic_bins,rgpf_count,seconds\n";
  for (const FrameStats& s : stats) {
    out << s.frame << ',' << s.dynamic_bins << ',' << s.rgpf_count << ','
        << s.seconds << '\n';
  }
}

}  // namespace mapclean
