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

#include <cmath>
#include <cstdint>
#include <vector>

namespace mapclean {

/// A 3D point in meters. Intensity is carried through the pipeline but not
/// used by any of the tests; it defaults to 0 when the source has none.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  float intensity = 0.0f;

  bool is_finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

/// Semantic + instance id as stored in SemanticKITTI label files.
struct PointLabel {
  std::uint16_t semantic = 0;
  std::uint16_t instance = 0;

  bool operator==(const PointLabel&) const = default;
};

struct LabeledPoint {
  Point3 point;
  PointLabel label;
};

enum class CloudFrame : std::uint8_t { SensorLocal, Map };

/// Ordered point sequence with optional per-point labels. `labels` is either
/// empty or exactly one entry per point; transforms preserve point order, so
/// index k always refers to the same physical point.
struct PointCloud {
  std::vector<Point3> points;
  std::vector<PointLabel> labels;
  CloudFrame frame = CloudFrame::SensorLocal;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_labels() const { return !labels.empty(); }

  void reserve(std::size_t n) {
    points.reserve(n);
    if (has_labels()) labels.reserve(n);
  }

  void append(const Point3& p) { points.push_back(p); }

  void append(const Point3& p, const PointLabel& l) {
    points.push_back(p);
    labels.push_back(l);
  }
};

}  // namespace mapclean
