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

#include "mapclean/synth.hpp"

#include <cmath>
#include <random>

#include "mapclean/descriptor.hpp"
#include "mapclean/errors.hpp"

namespace mapclean {

void SceneConfig::validate() const {
  if (frame_count < 1) throw ConfigError("frame_count must be >= 1");
  if (!(ground_density > 0.0) || !(box_density > 0.0)) {
    throw ConfigError("densities must be > 0");
  }
  if (trajectory.size() < frame_count) {
    throw ConfigError("trajectory must hold one pose per frame");
  }
  if (!(sensor_range > 0.0)) throw ConfigError("sensor_range must be > 0");
  for (const NoiseSpike& spike : noise_spikes) {
    if (spike.frame >= frame_count) {
      throw ConfigError("noise spike frame outside the sequence");
    }
  }
}

namespace {

struct FrameSampler {
  FrameSampler(std::uint64_t seed, double sigma, const PoseSE3& pose,
               double sensor_range, PointCloud& out)
      : rng(seed),
        noise_sigma(sigma),
        to_sensor(invert_pose(pose)),
        range(sensor_range),
        cloud(&out) {}

  std::mt19937_64 rng;
  std::uniform_real_distribution<double> unit{0.0, 1.0};
  std::normal_distribution<double> gauss{0.0, 1.0};
  double noise_sigma;
  PoseSE3 to_sensor;
  double range;
  PointCloud* cloud;

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(rng); }

  // World-space sample -> range test -> sensor frame -> noise -> float32.
  void emit(const Eigen::Vector3d& world, const PointLabel& label) {
    const Eigen::Vector3d ego = to_sensor.apply(world);
    if (std::hypot(ego.x(), ego.y()) >= range) return;
    Point3 p;
    p.x = static_cast<float>(ego.x() + noise_sigma * gauss(rng));
    p.y = static_cast<float>(ego.y() + noise_sigma * gauss(rng));
    p.z = static_cast<float>(ego.z() + noise_sigma * gauss(rng));
    cloud->append(p, label);
  }

  void sample_rect(const Eigen::Vector3d& origin, const Eigen::Vector3d& edge_u,
                   const Eigen::Vector3d& edge_v, double density,
                   const PointLabel& label,
                   const std::vector<GroundHole>* holes = nullptr) {
    const double area = edge_u.cross(edge_v).norm();
    const auto count = static_cast<long>(std::llround(area * density));
    for (long i = 0; i < count; ++i) {
      const Eigen::Vector3d world =
          origin + unit(rng) * edge_u + unit(rng) * edge_v;
      if (holes) {
        bool in_hole = false;
        for (const GroundHole& hole : *holes) {
          if (hole.contains(world.x(), world.y())) {
            in_hole = true;
            break;
          }
        }
        if (in_hole) continue;
      }
      emit(world, label);
    }
  }

  void sample_box(const Eigen::Vector3d& center, const Eigen::Vector3d& size,
                  double density, const PointLabel& label) {
    const Eigen::Vector3d lo = center - 0.5 * size;
    const Eigen::Vector3d ex{size.x(), 0, 0};
    const Eigen::Vector3d ey{0, size.y(), 0};
    const Eigen::Vector3d ez{0, 0, size.z()};
    sample_rect(lo, ex, ey, density, label);                    // bottom
    sample_rect(lo + ez, ex, ey, density, label);               // top
    sample_rect(lo, ex, ez, density, label);                    // front
    sample_rect(lo + ey, ex, ez, density, label);               // back
    sample_rect(lo, ey, ez, density, label);                    // left
    sample_rect(lo + ex, ey, ez, density, label);               // right
  }
};

}  // namespace

SequenceSource generate_scene(const SceneConfig& cfg) {
  cfg.validate();
  SequenceSource source;
  source.start_frame = 0;
  source.end_frame = cfg.frame_count - 1;
  source.poses.assign(cfg.trajectory.begin(),
                      cfg.trajectory.begin() + cfg.frame_count);
  source.memory_scans.reserve(cfg.frame_count);

  const PointLabel ground_label{cfg.ground_class, 0};
  const PointLabel static_label{cfg.static_class, 0};

  for (std::size_t frame = 0; frame < cfg.frame_count; ++frame) {
    PointCloud scan;
    scan.frame = CloudFrame::SensorLocal;

    FrameSampler sampler(cfg.seed ^ (0x9E3779B97F4A7C15ull * (frame + 1)),
                         cfg.noise_sigma, cfg.trajectory[frame],
                         cfg.sensor_range, scan);

    sampler.sample_rect(
        {cfg.ground_min_x, cfg.ground_min_y, 0.0},
        {cfg.ground_max_x - cfg.ground_min_x, 0.0, 0.0},
        {0.0, cfg.ground_max_y - cfg.ground_min_y, 0.0}, cfg.ground_density,
        ground_label, &cfg.ground_holes);

    for (const SceneBox& box : cfg.static_boxes) {
      sampler.sample_box(box.center, box.size, cfg.box_density, static_label);
    }

    for (const OccludedWall& wall : cfg.occluded_walls) {
      if (wall.full_every > 0 && frame % wall.full_every == 0) {
        sampler.sample_box(wall.box.center, wall.box.size, cfg.box_density,
                           static_label);
      } else {
        // Only the top band shows; the rest is blocked this frame.
        Eigen::Vector3d size = wall.box.size;
        size.z() *= wall.visible_top_fraction;
        Eigen::Vector3d center = wall.box.center;
        center.z() += 0.5 * (wall.box.size.z() - size.z());
        sampler.sample_box(center, size, cfg.box_density, static_label);
      }
    }

    for (std::size_t b = 0; b < cfg.moving_boxes.size(); ++b) {
      const MovingBox& box = cfg.moving_boxes[b];
      const Eigen::Vector3d center =
          box.start_center + static_cast<double>(frame) * box.velocity;
      const PointLabel label{cfg.dynamic_class,
                             static_cast<std::uint16_t>(b + 1)};
      sampler.sample_box(center, box.size, cfg.box_density, label);
    }

    for (const NoiseSpike& spike : cfg.noise_spikes) {
      if (spike.frame != frame) continue;
      for (int i = 0; i < spike.count; ++i) {
        const double angle = sampler.uniform(0.0, kTwoPi);
        const double r = spike.radius * std::sqrt(sampler.uniform(0.0, 1.0));
        const Eigen::Vector3d world{spike.base.x() + r * std::cos(angle),
                                    spike.base.y() + r * std::sin(angle),
                                    spike.base.z() +
                                        sampler.uniform(0.0, spike.height)};
        sampler.emit(world, static_label);
      }
    }

    source.memory_scans.push_back(std::move(scan));
  }
  return source;
}

void write_scene(const SequenceSource& source,
                 const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "velodyne");
  fs::create_directories(out_dir / "labels");
  char name[16];
  for (std::size_t frame = 0; frame < source.memory_scans.size(); ++frame) {
    std::snprintf(name, sizeof(name), "%06zu", frame);
    const PointCloud& scan = source.memory_scans[frame];
    write_cloud(scan, out_dir / "velodyne" / (std::string(name) + ".bin"),
                CloudFormat::BinaryXYZ);
    write_labels(out_dir / "labels" / (std::string(name) + ".label"),
                 scan.labels);
  }
  write_poses(out_dir / "poses.txt", source.poses);
}

SceneConfig reference_scene() {
  SceneConfig cfg;
  cfg.static_boxes = {
      {{30.0, 8.0, 1.5}, {8.0, 4.0, 3.0}},     // building
      {{-10.0, -8.0, 1.25}, {6.0, 3.0, 2.5}},  // low block
      {{15.0, -10.0, 1.0}, {10.0, 0.3, 2.0}},  // fence
  };
  cfg.moving_boxes = {
      // Car-sized box, body floating at 0.25 m, crossing the scene at
      // 1 m per frame.
      {{10.0, -10.0, 1.1}, {0.0, 1.0, 0.0}, {4.0, 2.0, 1.7}},
  };
  cfg.trajectory.reserve(cfg.frame_count);
  for (std::size_t t = 0; t < cfg.frame_count; ++t) {
    PoseSE3 pose;
    pose.translation = {static_cast<double>(t), 0.0, 0.7};
    cfg.trajectory.push_back(pose);
  }
  return cfg;
}

SceneConfig ablation_scene() {
  SceneConfig cfg = reference_scene();
  OccludedWall wall;
  wall.box = {{25.0, -5.0, 1.5}, {6.0, 0.4, 2.4}};  // slab from z 0.3 to 2.7
  wall.visible_top_fraction = 0.15;
  wall.full_every = 5;
  cfg.occluded_walls.push_back(wall);
  cfg.ground_holes.push_back({21.5, -7.0, 28.5, -3.0});

  NoiseSpike spike;
  spike.base = {-20.0, 10.0, 0.3};
  spike.height = 1.9;
  spike.radius = 0.15;
  spike.count = 200;
  spike.frame = 7;
  cfg.noise_spikes.push_back(spike);
  return cfg;
}

}  // namespace mapclean
