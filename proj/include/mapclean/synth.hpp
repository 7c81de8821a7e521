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
#include <cstdint>
#include <filesystem>
#include <vector>

#include "mapclean/io.hpp"

namespace mapclean {

/// Axis-aligned cuboid, sampled on all six faces.
struct SceneBox {
  Eigen::Vector3d center;
  Eigen::Vector3d size;
};

struct MovingBox {
  Eigen::Vector3d start_center;
  Eigen::Vector3d velocity;  // meters per frame
  Eigen::Vector3d size;
};

struct GroundHole {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  bool contains(double x, double y) const {
    return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
  }
};

/// Static slab that is fully sampled only every `full_every`-th frame; the
/// other frames see just the top `visible_top_fraction` band, emulating an
/// occluded wall or vegetation behind obstacles.
struct OccludedWall {
  SceneBox box;
  double visible_top_fraction = 0.15;
  std::size_t full_every = 5;
};

/// Vertical point column injected into a single frame's scan, emulating a
/// registration artifact that leaves an isolated tall trace in the map.
struct NoiseSpike {
  Eigen::Vector3d base;
  double height = 2.0;
  double radius = 0.15;
  int count = 200;
  std::size_t frame = 0;
};

struct SceneConfig {
  double ground_min_x = -40.0, ground_min_y = -15.0;
  double ground_max_x = 60.0, ground_max_y = 15.0;
  double ground_density = 30.0;  // points per square meter
  double box_density = 60.0;     // points per square meter of face
  std::vector<SceneBox> static_boxes;
  std::vector<MovingBox> moving_boxes;
  std::vector<GroundHole> ground_holes;
  std::vector<OccludedWall> occluded_walls;
  std::vector<NoiseSpike> noise_spikes;
  std::size_t frame_count = 20;
  std::vector<PoseSE3> trajectory;  // one pose per frame
  double sensor_range = 80.0;
  double noise_sigma = 0.02;
  std::uint64_t seed = 42;
  std::uint16_t ground_class = 40;
  std::uint16_t static_class = 50;
  std::uint16_t dynamic_class = 252;

  void validate() const;
};

/// Generates the labeled scan sequence: per frame, surfaces within
/// sensor_range are sampled in world space, expressed in the sensor frame,
/// perturbed with seeded Gaussian noise, and quantized to float32 so disk
/// round trips are exact. Same seed, same bytes.
SequenceSource generate_scene(const SceneConfig& cfg);

/// Writes velodyne/*.bin, labels/*.label, and poses.txt under out_dir in
/// the exact ingest formats.
void write_scene(const SequenceSource& source,
                 const std::filesystem::path& out_dir);

/// The canonical desk-scale verification scene: 20 frames, flat ground
/// with a few structures, one moving box leaving a 19 m trace, roughly
/// 100k points per frame.
SceneConfig reference_scene();

/// reference_scene plus the two robustness fixtures: an occluded thin wall
/// over a ground hole and one injected isolated noise spike.
SceneConfig ablation_scene();

}  // namespace mapclean
