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

#include "mapclean/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "mapclean/errors.hpp"

namespace mapclean {

namespace {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<KeyValue> tokenize(const std::string& text) {
  std::vector<KeyValue> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    entries.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                       line_no});
  }
  return entries;
}

double parse_real(const KeyValue& kv) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(kv.value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != kv.value.size()) {
    throw ConfigError("line " + std::to_string(kv.line) + ": '" + kv.key +
                      "' needs a real number");
  }
  return v;
}

long parse_int(const KeyValue& kv) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(kv.value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != kv.value.size()) {
    throw ConfigError("line " + std::to_string(kv.line) + ": '" + kv.key +
                      "' needs an integer");
  }
  return v;
}

bool parse_bool(const KeyValue& kv) {
  if (kv.value == "true" || kv.value == "1") return true;
  if (kv.value == "false" || kv.value == "0") return false;
  throw ConfigError("line " + std::to_string(kv.line) + ": '" + kv.key +
                    "' needs true or false");
}

std::vector<double> parse_reals(const KeyValue& kv, std::size_t expected) {
  std::istringstream ss(kv.value);
  std::vector<double> values;
  double v;
  while (ss >> v) values.push_back(v);
  if (!ss.eof() || values.size() != expected) {
    throw ConfigError("line " + std::to_string(kv.line) + ": '" + kv.key +
                      "' needs " + std::to_string(expected) + " reals");
  }
  return values;
}

}  // namespace

PipelineConfig parse_pipeline_config(const std::string& text) {
  PipelineConfig cfg;
  for (const KeyValue& kv : tokenize(text)) {
    if (kv.key == "frame_interval") {
      cfg.frame_interval = static_cast<std::size_t>(parse_int(kv));
    } else if (kv.key == "ablate_height_tests") {
      cfg.ablate_height_tests = parse_bool(kv);
    } else if (kv.key == "ablate_spt") {
      cfg.ablate_spt = parse_bool(kv);
    } else if (kv.key == "voi.l_max") {
      cfg.voi.l_max = parse_real(kv);
    } else if (kv.key == "voi.h_min") {
      cfg.voi.h_min = parse_real(kv);
    } else if (kv.key == "voi.h_max") {
      cfg.voi.h_max = parse_real(kv);
    } else if (kv.key == "voi.n_rings") {
      cfg.voi.n_rings = static_cast<int>(parse_int(kv));
    } else if (kv.key == "voi.n_sectors") {
      cfg.voi.n_sectors = static_cast<int>(parse_int(kv));
    } else if (kv.key == "voi.n_layers") {
      cfg.voi.n_layers = static_cast<int>(parse_int(kv));
    } else if (kv.key == "classify.srt_threshold") {
      cfg.classify.srt_threshold = parse_real(kv);
    } else if (kv.key == "classify.min_points_bin") {
      cfg.classify.min_points_bin = static_cast<int>(parse_int(kv));
    } else if (kv.key == "classify.min_map_height") {
      cfg.classify.min_map_height = parse_real(kv);
    } else if (kv.key == "classify.max_overlap_bits") {
      cfg.classify.max_overlap_bits = static_cast<int>(parse_int(kv));
    } else if (kv.key == "classify.spt_range") {
      cfg.classify.spt_range = static_cast<int>(parse_int(kv));
    } else if (kv.key == "classify.glt_min_layer_points") {
      cfg.classify.glt_min_layer_points = static_cast<int>(parse_int(kv));
    } else if (kv.key == "classify.glt_ring_fraction") {
      cfg.classify.glt_ring_fraction = parse_real(kv);
    } else if (kv.key == "classify.glt_fallback_layer") {
      cfg.classify.glt_fallback_layer = static_cast<int>(parse_int(kv));
    } else if (kv.key == "retrieval.seed_fraction") {
      cfg.retrieval.seed_fraction = parse_real(kv);
    } else if (kv.key == "retrieval.iterations") {
      cfg.retrieval.iterations = static_cast<int>(parse_int(kv));
    } else if (kv.key == "retrieval.inlier_threshold") {
      cfg.retrieval.inlier_threshold = parse_real(kv);
    } else if (kv.key == "retrieval.min_inliers") {
      cfg.retrieval.min_inliers = static_cast<int>(parse_int(kv));
    } else {
      throw ConfigError("line " + std::to_string(kv.line) + ": unknown key '" +
                        kv.key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_pipeline_config(buffer.str());
}

SceneConfig parse_scene_config(const std::string& text) {
  SceneConfig cfg;
  std::optional<Eigen::Vector3d> sensor_start, sensor_step;
  bool explicit_trajectory = false;

  for (const KeyValue& kv : tokenize(text)) {
    if (kv.key == "preset") {
      if (kv.value == "reference") {
        cfg = reference_scene();
      } else if (kv.value == "ablation") {
        cfg = ablation_scene();
      } else {
        throw ConfigError("line " + std::to_string(kv.line) +
                          ": unknown preset '" + kv.value + "'");
      }
    } else if (kv.key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(kv));
    } else if (kv.key == "frame_count") {
      cfg.frame_count = static_cast<std::size_t>(parse_int(kv));
    } else if (kv.key == "noise_sigma") {
      cfg.noise_sigma = parse_real(kv);
    } else if (kv.key == "sensor_range") {
      cfg.sensor_range = parse_real(kv);
    } else if (kv.key == "ground_density") {
      cfg.ground_density = parse_real(kv);
    } else if (kv.key == "box_density") {
      cfg.box_density = parse_real(kv);
    } else if (kv.key == "ground_extent") {
      const auto v = parse_reals(kv, 4);  // min_x min_y max_x max_y
      cfg.ground_min_x = v[0];
      cfg.ground_min_y = v[1];
      cfg.ground_max_x = v[2];
      cfg.ground_max_y = v[3];
    } else if (kv.key == "ground_class") {
      cfg.ground_class = static_cast<std::uint16_t>(parse_int(kv));
    } else if (kv.key == "static_class") {
      cfg.static_class = static_cast<std::uint16_t>(parse_int(kv));
    } else if (kv.key == "dynamic_class") {
      cfg.dynamic_class = static_cast<std::uint16_t>(parse_int(kv));
    } else if (kv.key == "static_box") {
      const auto v = parse_reals(kv, 6);  // cx cy cz sx sy sz
      cfg.static_boxes.push_back({{v[0], v[1], v[2]}, {v[3], v[4], v[5]}});
    } else if (kv.key == "moving_box") {
      const auto v = parse_reals(kv, 9);  // center, velocity, size
      cfg.moving_boxes.push_back(
          {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}});
    } else if (kv.key == "ground_hole") {
      const auto v = parse_reals(kv, 4);
      cfg.ground_holes.push_back({v[0], v[1], v[2], v[3]});
    } else if (kv.key == "occluded_wall") {
      // cx cy cz sx sy sz visible_top_fraction full_every
      const auto v = parse_reals(kv, 8);
      OccludedWall wall;
      wall.box = {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
      wall.visible_top_fraction = v[6];
      wall.full_every = static_cast<std::size_t>(v[7]);
      cfg.occluded_walls.push_back(wall);
    } else if (kv.key == "noise_spike") {
      // x y z height radius count frame
      const auto v = parse_reals(kv, 7);
      NoiseSpike spike;
      spike.base = {v[0], v[1], v[2]};
      spike.height = v[3];
      spike.radius = v[4];
      spike.count = static_cast<int>(v[5]);
      spike.frame = static_cast<std::size_t>(v[6]);
      cfg.noise_spikes.push_back(spike);
    } else if (kv.key == "trajectory") {
      const auto v = parse_reals(kv, 3);
      if (!explicit_trajectory) {
        cfg.trajectory.clear();
        explicit_trajectory = true;
      }
      PoseSE3 pose;
      pose.translation = {v[0], v[1], v[2]};
      cfg.trajectory.push_back(pose);
    } else if (kv.key == "sensor_start") {
      const auto v = parse_reals(kv, 3);
      sensor_start = Eigen::Vector3d{v[0], v[1], v[2]};
    } else if (kv.key == "sensor_step") {
      const auto v = parse_reals(kv, 3);
      sensor_step = Eigen::Vector3d{v[0], v[1], v[2]};
    } else {
      throw ConfigError("line " + std::to_string(kv.line) + ": unknown key '" +
                        kv.key + "'");
    }
  }

  if (sensor_start || sensor_step) {
    if (explicit_trajectory) {
      throw ConfigError("trajectory and sensor_start/sensor_step both given");
    }
    const Eigen::Vector3d start = sensor_start.value_or(Eigen::Vector3d::Zero());
    const Eigen::Vector3d step = sensor_step.value_or(Eigen::Vector3d::Zero());
    cfg.trajectory.clear();
    for (std::size_t t = 0; t < cfg.frame_count; ++t) {
      PoseSE3 pose;
      pose.translation = start + static_cast<double>(t) * step;
      cfg.trajectory.push_back(pose);
    }
  }
  cfg.validate();
  return cfg;
}

SceneConfig load_scene_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scene_config(buffer.str());
}

}  // namespace mapclean
