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
#include <map>
#include <vector>

#include "mapclean/types.hpp"

namespace testutil {

/// Brute-force reference for the descriptor grid, independent of the
/// implementation: every point is placed by scanning the half-open
/// interval definitions directly.
struct OracleBin {
  std::vector<std::uint32_t> point_ids;
  std::vector<std::uint32_t> layer_counts;
  double min_z = std::numeric_limits<double>::infinity();
  double max_z = -std::numeric_limits<double>::infinity();
  double d_diff = 0.0;
  std::uint64_t d_enc = 0;
};

struct OracleGrid {
  std::map<std::pair<int, int>, OracleBin> bins;  // keyed by (ring, sector)
};

inline bool oracle_in_voi(const mapclean::Point3& p, const mapclean::VoiParams& v) {
  return std::sqrt(p.x * p.x + p.y * p.y) < v.l_max && p.z > v.h_min &&
         p.z < v.h_max;
}

inline int oracle_ring(double rho, const mapclean::VoiParams& v) {
  for (int i = 1; i < v.n_rings; ++i) {
    if ((i - 1) * v.l_max / v.n_rings <= rho && rho < i * v.l_max / v.n_rings) {
      return i;
    }
  }
  if ((v.n_rings - 1) * v.l_max / v.n_rings <= rho && rho < v.l_max) {
    return v.n_rings;
  }
  return 0;
}

inline int oracle_sector(double theta, const mapclean::VoiParams& v) {
  const double two_pi = 2.0 * M_PI;
  for (int j = 1; j < v.n_sectors; ++j) {
    if ((j - 1) * two_pi / v.n_sectors <= theta &&
        theta < j * two_pi / v.n_sectors) {
      return j;
    }
  }
  // Remaining interval plus the theta == 2*pi fold.
  if ((v.n_sectors - 1) * two_pi / v.n_sectors <= theta && theta <= two_pi) {
    return v.n_sectors;
  }
  return 0;
}

inline int oracle_layer(double z, const mapclean::VoiParams& v) {
  const double height = v.h_max - v.h_min;
  for (int a = 1; a < v.n_layers; ++a) {
    if (v.h_min + (a - 1) * height / v.n_layers <= z &&
        z < v.h_min + a * height / v.n_layers) {
      return a;
    }
  }
  if (v.h_min + (v.n_layers - 1) * height / v.n_layers <= z && z < v.h_max) {
    return v.n_layers;
  }
  return 0;
}

inline OracleGrid oracle_descriptor_grid(const mapclean::PointCloud& cloud,
                                         const mapclean::VoiParams& v) {
  OracleGrid grid;
  for (std::size_t k = 0; k < cloud.size(); ++k) {
    const mapclean::Point3& p = cloud.points[k];
    if (!oracle_in_voi(p, v)) continue;
    const double rho = std::sqrt(p.x * p.x + p.y * p.y);
    const double theta = std::atan2(p.y, p.x) + M_PI;
    const int ring = oracle_ring(rho, v);
    const int sector = oracle_sector(theta, v);
    const int layer = oracle_layer(p.z, v);
    OracleBin& bin = grid.bins[{ring, sector}];
    if (bin.layer_counts.empty()) {
      bin.layer_counts.assign(static_cast<std::size_t>(v.n_layers), 0);
    }
    bin.point_ids.push_back(static_cast<std::uint32_t>(k));
    ++bin.layer_counts[static_cast<std::size_t>(layer - 1)];
    bin.min_z = std::min(bin.min_z, p.z);
    bin.max_z = std::max(bin.max_z, p.z);
  }
  for (auto& [key, bin] : grid.bins) {
    bin.d_diff = bin.max_z - bin.min_z;
    for (int a = 1; a <= v.n_layers; ++a) {
      if (bin.layer_counts[static_cast<std::size_t>(a - 1)] > 0) {
        bin.d_enc |= std::uint64_t{1} << (a - 1);
      }
    }
  }
  return grid;
}

}  // namespace testutil
