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
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

#include "mapclean/types.hpp"

namespace mapclean {

/// Polar volume-of-interest parameters. The VoI is the open cylinder shell
/// rho < l_max, h_min < z < h_max around the sensor, split into n_rings
/// radial rings, n_sectors azimuthal sectors, and n_layers height layers.
/// n_layers must be a positive multiple of 8 and at most 64 so one layer
/// word fits a machine word.
struct VoiParams {
  double l_max = 80.0;
  double h_min = -1.0;
  double h_max = 3.0;
  int n_rings = 20;
  int n_sectors = 60;
  int n_layers = 8;

  bool operator==(const VoiParams&) const = default;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

/// 1-based ring/sector index, matching the polar bin convention
/// ring in [1, n_rings], sector in [1, n_sectors].
struct BinIndex {
  int ring = 1;
  int sector = 1;

  bool operator==(const BinIndex&) const = default;
};

/// Per-bin Height Coding Descriptor. d_diff is the z extent of the bin's
/// points; d_enc has bit (alpha-1) set iff height layer alpha holds at
/// least one point. layer_counts[alpha-1] is the point count of layer
/// alpha. point_ids are ascending indices into the grid's source cloud.
struct BinDescriptor {
  double d_diff = 0.0;
  std::uint64_t d_enc = 0;
  std::vector<std::uint32_t> layer_counts;
  std::vector<std::uint32_t> point_ids;
  double min_z = std::numeric_limits<double>::infinity();
  double max_z = -std::numeric_limits<double>::infinity();

  std::size_t size() const { return point_ids.size(); }
  bool empty() const { return point_ids.empty(); }
};

/// n_rings x n_sectors lattice of bin descriptors over one cloud.
struct DescriptorGrid {
  VoiParams params;
  std::vector<BinDescriptor> bins;
  std::shared_ptr<const PointCloud> source;

  const BinDescriptor& at(int ring, int sector) const {
    return bins[static_cast<std::size_t>(ring - 1) * params.n_sectors +
                (sector - 1)];
  }
  BinDescriptor& at(int ring, int sector) {
    return bins[static_cast<std::size_t>(ring - 1) * params.n_sectors +
                (sector - 1)];
  }
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Ring boundaries are i * l_max / n_rings; ring i covers
/// [boundary(i-1), boundary(i)), with ring n_rings extending to l_max.
inline double ring_boundary(const VoiParams& v, int i) {
  return static_cast<double>(i) * v.l_max / v.n_rings;
}

/// Sector boundaries over theta = atan2(y, x) + pi in (0, 2*pi]; the
/// theta = 2*pi endpoint folds into sector n_sectors.
inline double sector_boundary(const VoiParams& v, int j) {
  return static_cast<double>(j) * kTwoPi / v.n_sectors;
}

/// Layer boundaries are offset by h_min so the layers tile the VoI height
/// band: layer alpha covers [h_min + (alpha-1)*d, h_min + alpha*d).
inline double layer_boundary(const VoiParams& v, int alpha) {
  return v.h_min + static_cast<double>(alpha) * (v.h_max - v.h_min) / v.n_layers;
}

/// Radial distance as written in the VoI definition; plain sqrt keeps the
/// VoI test and the bin assignment rounding-consistent.
inline double radial_distance(const Point3& p) {
  return std::sqrt(p.x * p.x + p.y * p.y);
}

inline bool in_voi(const Point3& p, const VoiParams& v) {
  return radial_distance(p) < v.l_max && p.z > v.h_min && p.z < v.h_max;
}

/// Keeps exactly the points with rho < l_max and h_min < z < h_max
/// (strict bounds). Labels follow their points.
PointCloud extract_voi(const PointCloud& cloud, const VoiParams& params);

/// Maps a VoI point to its ring/sector. Throws OutOfVoi when the point
/// fails the VoI bounds.
BinIndex assign_bin(const Point3& p, const VoiParams& params);

/// Maps a height to its layer index in [1, n_layers]. Throws OutOfVoi
/// unless h_min < z < h_max.
int layer_index(double z, const VoiParams& params);

/// Builds the full descriptor grid: VoI filter, bin partition, and per-bin
/// (d_diff, d_enc, layer counts). Empty bins keep d_diff = 0, d_enc = 0.
DescriptorGrid build_descriptor_grid(std::shared_ptr<const PointCloud> cloud,
                                     const VoiParams& params);
DescriptorGrid build_descriptor_grid(PointCloud cloud, const VoiParams& params);

}  // namespace mapclean
