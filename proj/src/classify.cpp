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

#include "mapclean/classify.hpp"

#include <bit>
#include <map>
#include <ostream>

#include "mapclean/errors.hpp"

namespace mapclean {

GroundMask make_ground_mask(int gamma, bool low_confidence) {
  GroundMask mask;
  mask.gamma = gamma;
  mask.mask = (std::uint64_t{1} << gamma) - 1;
  mask.low_confidence = low_confidence;
  return mask;
}

BinStatusGrid BinStatusGrid::filled(int n_rings, int n_sectors,
                                    BinStatus status) {
  BinStatusGrid grid;
  grid.n_rings = n_rings;
  grid.n_sectors = n_sectors;
  grid.cells.assign(static_cast<std::size_t>(n_rings) * n_sectors, status);
  return grid;
}

std::size_t BinStatusGrid::count(BinStatus status) const {
  std::size_t n = 0;
  for (const BinStatus s : cells) {
    if (s == status) ++n;
  }
  return n;
}

namespace {

// Best-populated layer of a bin, lowest layer winning ties. Returns 0 when
// no layer reaches min_count.
int candidate_ground_layer(const BinDescriptor& bin, int min_count) {
  int best_layer = 0;
  std::uint32_t best_count = 0;
  for (std::size_t a = 0; a < bin.layer_counts.size(); ++a) {
    if (bin.layer_counts[a] > best_count) {
      best_count = bin.layer_counts[a];
      best_layer = static_cast<int>(a) + 1;
    }
  }
  if (best_count < static_cast<std::uint32_t>(min_count)) return 0;
  return best_layer;
}

}  // namespace

GroundMask ground_layer_test(const DescriptorGrid& scan_grid,
                             const ClassifyConfig& cfg) {
  const VoiParams& v = scan_grid.params;
  for (int ring = 1; ring <= v.n_rings; ++ring) {
    std::size_t occupied = 0;
    std::map<int, std::size_t> votes;
    for (int sector = 1; sector <= v.n_sectors; ++sector) {
      const BinDescriptor& bin = scan_grid.at(ring, sector);
      if (bin.size() < static_cast<std::size_t>(cfg.min_points_bin)) continue;
      ++occupied;
      const int layer = candidate_ground_layer(bin, cfg.glt_min_layer_points);
      if (layer > 0) ++votes[layer];
    }
    if (occupied == 0) continue;
    int best_layer = 0;
    std::size_t best_votes = 0;
    for (const auto& [layer, n] : votes) {
      if (n > best_votes) {  // lowest layer wins ties (map is ordered)
        best_votes = n;
        best_layer = layer;
      }
    }
    if (best_layer > 0 && static_cast<double>(best_votes) >
                              cfg.glt_ring_fraction * static_cast<double>(occupied)) {
      return make_ground_mask(best_layer);
    }
  }
  return make_ground_mask(cfg.glt_fallback_layer, /*low_confidence=*/true);
}

bool scan_ratio_test(const BinDescriptor& curr, const BinDescriptor& map,
                     const ClassifyConfig& cfg) {
  if (curr.size() < static_cast<std::size_t>(cfg.min_points_bin) ||
      map.size() < static_cast<std::size_t>(cfg.min_points_bin)) {
    throw NotComparable("bin has fewer than min_points_bin points");
  }
  if (map.d_diff < cfg.min_map_height) {
    throw NotComparable("map bin height below min_map_height");
  }
  return curr.d_diff / map.d_diff < cfg.srt_threshold;
}

std::uint64_t height_stack_word(const BinDescriptor& curr,
                                const BinDescriptor& map,
                                const GroundMask& ground) {
  return (curr.d_enc & map.d_enc) & ~ground.mask;
}

bool height_stack_test(const BinDescriptor& curr, const BinDescriptor& map,
                       const GroundMask& ground, const ClassifyConfig& cfg) {
  return std::popcount(height_stack_word(curr, map, ground)) <=
         cfg.max_overlap_bits;
}

BinStatusGrid classify_bins(const DescriptorGrid& curr_grid,
                            const DescriptorGrid& map_grid,
                            const GroundMask& ground,
                            const ClassifyConfig& cfg) {
  if (!(curr_grid.params == map_grid.params)) {
    throw ParamMismatch("descriptor grids built with different VoiParams");
  }
  const VoiParams& v = curr_grid.params;
  BinStatusGrid status = BinStatusGrid::filled(v.n_rings, v.n_sectors);
  for (int ring = 1; ring <= v.n_rings; ++ring) {
    for (int sector = 1; sector <= v.n_sectors; ++sector) {
      const BinDescriptor& curr = curr_grid.at(ring, sector);
      const BinDescriptor& map = map_grid.at(ring, sector);
      if (curr.size() < static_cast<std::size_t>(cfg.min_points_bin) ||
          map.size() < static_cast<std::size_t>(cfg.min_points_bin) ||
          map.d_diff < cfg.min_map_height) {
        continue;  // Unoccupied
      }
      if (!scan_ratio_test(curr, map, cfg)) {
        status.at(ring, sector) = BinStatus::Static;
      } else if (height_stack_test(curr, map, ground, cfg)) {
        status.at(ring, sector) = BinStatus::DynamicConfirmed;
      } else {
        status.at(ring, sector) = BinStatus::DynamicCandidate;
      }
    }
  }
  return status;
}

BinStatusGrid surrounding_points_test(const BinStatusGrid& status,
                                      const ClassifyConfig& cfg) {
  BinStatusGrid out = status;
  const int range = cfg.spt_range;
  for (int ring = 1; ring <= status.n_rings; ++ring) {
    for (int sector = 1; sector <= status.n_sectors; ++sector) {
      if (status.at(ring, sector) != BinStatus::DynamicConfirmed) continue;
      bool supported = false;
      for (int dp = -range; dp <= range && !supported; ++dp) {
        const int p = ring + dp;
        if (p < 1 || p > status.n_rings) continue;  // rings clamp
        for (int dq = -range; dq <= range; ++dq) {
          int q = sector + dq;  // sectors wrap
          q = (q - 1) % status.n_sectors;
          if (q < 0) q += status.n_sectors;
          q += 1;
          if (p == ring && q == sector) continue;
          if (status.at(p, q) == BinStatus::DynamicConfirmed) {
            supported = true;
            break;
          }
        }
      }
      if (!supported) out.at(ring, sector) = BinStatus::Static;
    }
  }
  return out;
}

namespace {

const char* status_name(BinStatus s) {
  switch (s) {
    case BinStatus::Unoccupied: return "unoccupied";
    case BinStatus::Static: return "static";
    case BinStatus::DynamicCandidate: return "dynamic_candidate";
    case BinStatus::DynamicConfirmed: return "dynamic_confirmed";
  }
  return "?";
}

}  // namespace

void write_bin_diagnostics(std::ostream& out, const DescriptorGrid& curr_grid,
                           const DescriptorGrid& map_grid,
                           const GroundMask& ground, const ClassifyConfig& cfg,
                           const BinStatusGrid& status) {
  out << "ring,sector,d_diff_curr,d_diff_map,ratio,overlap_bits,status\n";
  const VoiParams& v = curr_grid.params;
  for (int ring = 1; ring <= v.n_rings; ++ring) {
    for (int sector = 1; sector <= v.n_sectors; ++sector) {
      const BinDescriptor& curr = curr_grid.at(ring, sector);
      const BinDescriptor& map = map_grid.at(ring, sector);
      const double ratio =
          map.d_diff >= cfg.min_map_height ? curr.d_diff / map.d_diff : 0.0;
      out << ring << ',' << sector << ',' << curr.d_diff << ',' << map.d_diff
          << ',' << ratio << ','
          << std::popcount(height_stack_word(curr, map, ground)) << ','
          << status_name(status.at(ring, sector)) << '\n';
    }
  }
}

}  // namespace mapclean
