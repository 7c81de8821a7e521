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

#include <filesystem>
#include <string>

#include "mapclean/pipeline.hpp"
#include "mapclean/synth.hpp"

namespace mapclean {

/// Parses a "key = value" document ('#' comments) whose keys mirror the
/// PipelineConfig field names, nested fields dotted (voi.l_max,
/// classify.srt_threshold, retrieval.iterations, frame_interval, ...).
/// Unknown keys throw ConfigError.
PipelineConfig parse_pipeline_config(const std::string& text);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Scene documents use the same syntax; list-valued keys (static_box,
/// moving_box, ground_hole, occluded_wall, noise_spike, trajectory) may
/// repeat. `preset = reference | ablation` starts from a built-in scene.
/// A linear trajectory can be given as sensor_start/sensor_step x y z.
SceneConfig parse_scene_config(const std::string& text);
SceneConfig load_scene_config(const std::filesystem::path& path);

}  // namespace mapclean
