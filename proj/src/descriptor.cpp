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

#include "mapclean/descriptor.hpp"

#include <cmath>

#include "mapclean/errors.hpp"

namespace mapclean {

void VoiParams::validate() const {
  if (!(l_max > 0.0)) throw ConfigError("l_max must be > 0");
  if (!(h_max > h_min)) throw ConfigError("h_max must exceed h_min");
  if (n_rings < 1 || n_sectors < 1) {
    throw ConfigError("n_rings and n_sectors must be >= 1");
  }
  if (n_layers < 8 || n_layers % 8 != 0 || n_layers > 64) {
    throw ConfigError("n_layers must be a multiple of 8 in [8, 64]");
  }
}

PointCloud extract_voi(const PointCloud& cloud, const VoiParams& params) {
  params.validate();
  PointCloud out;
  out.frame = cloud.frame;
  for (std::size_t k = 0; k < cloud.size(); ++k) {
    if (!in_voi(cloud.points[k], params)) continue;
    if (cloud.has_labels()) {
      out.append(cloud.points[k], cloud.labels[k]);
    } else {
      out.append(cloud.points[k]);
    }
  }
  return out;
}

namespace {

// floor-based initial guess, then nudge until the half-open interval
// bounds hold exactly. The boundary expressions here are the same ones a
// per-interval scan evaluates, so both agree bit-for-bit at the edges.
int ring_of(double rho, const VoiParams& v) {
  int i = 1 + static_cast<int>(rho * v.n_rings / v.l_max);
  if (i < 1) i = 1;
  if (i > v.n_rings) i = v.n_rings;
  while (i > 1 && rho < ring_boundary(v, i - 1)) --i;
  while (i < v.n_rings && rho >= ring_boundary(v, i)) ++i;
  return i;
}

int sector_of(double theta, const VoiParams& v) {
  int j = 1 + static_cast<int>(theta * v.n_sectors / kTwoPi);
  if (j < 1) j = 1;
  if (j > v.n_sectors) j = v.n_sectors;  // theta == 2*pi folds here
  while (j > 1 && theta < sector_boundary(v, j - 1)) --j;
  while (j < v.n_sectors && theta >= sector_boundary(v, j)) ++j;
  return j;
}

int layer_of(double z, const VoiParams& v) {
  const double height = v.h_max - v.h_min;
  int a = 1 + static_cast<int>((z - v.h_min) * v.n_layers / height);
  if (a < 1) a = 1;
  if (a > v.n_layers) a = v.n_layers;
  while (a > 1 && z < layer_boundary(v, a - 1)) --a;
  while (a < v.n_layers && z >= layer_boundary(v, a)) ++a;
  return a;
}

}  // namespace

BinIndex assign_bin(const Point3& p, const VoiParams& params) {
  if (!in_voi(p, params)) {
    throw OutOfVoi("point outside the volume of interest");
  }
  const double rho = radial_distance(p);
  const double theta = std::atan2(p.y, p.x) + std::numbers::pi;
  return {ring_of(rho, params), sector_of(theta, params)};
}

int layer_index(double z, const VoiParams& params) {
  if (!(z > params.h_min && z < params.h_max)) {
    throw OutOfVoi("height outside the VoI band");
  }
  return layer_of(z, params);
}

DescriptorGrid build_descriptor_grid(std::shared_ptr<const PointCloud> cloud,
                                     const VoiParams& params) {
  params.validate();
  DescriptorGrid grid;
  grid.params = params;
  grid.source = std::move(cloud);
  grid.bins.resize(static_cast<std::size_t>(params.n_rings) * params.n_sectors);
  for (BinDescriptor& bin : grid.bins) {
    bin.layer_counts.assign(static_cast<std::size_t>(params.n_layers), 0);
  }

  const PointCloud& pts = *grid.source;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Point3& p = pts.points[k];
    if (!in_voi(p, params)) continue;
    const double rho = radial_distance(p);
    const double theta = std::atan2(p.y, p.x) + std::numbers::pi;
    BinDescriptor& bin =
        grid.at(ring_of(rho, params), sector_of(theta, params));
    bin.point_ids.push_back(static_cast<std::uint32_t>(k));
    ++bin.layer_counts[static_cast<std::size_t>(layer_of(p.z, params) - 1)];
    if (p.z < bin.min_z) bin.min_z = p.z;
    if (p.z > bin.max_z) bin.max_z = p.z;
  }

  for (BinDescriptor& bin : grid.bins) {
    if (bin.empty()) continue;
    bin.d_diff = bin.max_z - bin.min_z;
    for (int alpha = 1; alpha <= params.n_layers; ++alpha) {
      if (bin.layer_counts[static_cast<std::size_t>(alpha - 1)] > 0) {
        bin.d_enc |= std::uint64_t{1} << (alpha - 1);
      }
    }
  }
  return grid;
}

DescriptorGrid build_descriptor_grid(PointCloud cloud, const VoiParams& params) {
  return build_descriptor_grid(
      std::make_shared<const PointCloud>(std::move(cloud)), params);
}

}  // namespace mapclean
