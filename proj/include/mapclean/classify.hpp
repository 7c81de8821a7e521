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
#include <iosfwd>
#include <vector>

#include "mapclean/descriptor.hpp"

namespace mapclean {

struct ClassifyConfig {
  /// A bin is a dynamic candidate when curr.d_diff / map.d_diff falls
  /// strictly below this ratio.
  double srt_threshold = 0.2;
  /// Bins with fewer points on either side are not comparable.
  int min_points_bin = 10;
  /// Minimum map-side height extent; below it the ratio denominator is
  /// considered degenerate and the bin is left alone.
  double min_map_height = 0.2;
  /// Height-stack overlap bits (above ground) tolerated before the bin is
  /// vetoed as static structure.
  int max_overlap_bits = 0;
  /// Chebyshev box radius of the surrounding-points search.
  int spt_range = 1;
  /// A bin votes for a ground layer only when that layer holds at least
  /// this many points.
  int glt_min_layer_points = 10;
  /// Fraction of a ring's occupied bins that must share the winning layer
  /// (strictly greater than).
  double glt_ring_fraction = 0.75;
  /// Layer used when no ring reaches consensus.
  int glt_fallback_layer = 1;
};

/// Ground layer gamma plus the bit word with bits 1..gamma set. A mask from
/// the fallback path carries low_confidence = true.
struct GroundMask {
  int gamma = 1;
  std::uint64_t mask = 1;
  bool low_confidence = false;
};

/// mask = 2^gamma - 1 (bits 1..gamma).
GroundMask make_ground_mask(int gamma, bool low_confidence = false);

enum class BinStatus : std::uint8_t {
  Unoccupied,
  Static,
  DynamicCandidate,
  DynamicConfirmed,
};

struct BinStatusGrid {
  int n_rings = 0;
  int n_sectors = 0;
  std::vector<BinStatus> cells;

  static BinStatusGrid filled(int n_rings, int n_sectors,
                              BinStatus status = BinStatus::Unoccupied);

  BinStatus at(int ring, int sector) const {
    return cells[static_cast<std::size_t>(ring - 1) * n_sectors + (sector - 1)];
  }
  BinStatus& at(int ring, int sector) {
    return cells[static_cast<std::size_t>(ring - 1) * n_sectors + (sector - 1)];
  }
  std::size_t count(BinStatus status) const;
};

/// Ground Layer Test: walks rings from the sensor outward; within a ring
/// every occupied bin votes for its best-populated layer, and the first
/// ring where one layer wins strictly more than glt_ring_fraction of the
/// occupied bins fixes gamma. Falls back to glt_fallback_layer (flagged
/// low confidence) when no ring reaches consensus.
GroundMask ground_layer_test(const DescriptorGrid& scan_grid,
                             const ClassifyConfig& cfg);

/// Scan Ratio Test. Throws NotComparable unless both bins have at least
/// min_points_bin points and map.d_diff >= min_map_height.
bool scan_ratio_test(const BinDescriptor& curr, const BinDescriptor& map,
                     const ClassifyConfig& cfg);

/// Layer overlap above the ground mask: (curr & map) & ~ground.
std::uint64_t height_stack_word(const BinDescriptor& curr,
                                const BinDescriptor& map,
                                const GroundMask& ground);

/// Height Stack Test: confirms removal when at most max_overlap_bits
/// layers overlap above the ground mask.
bool height_stack_test(const BinDescriptor& curr, const BinDescriptor& map,
                       const GroundMask& ground, const ClassifyConfig& cfg);

/// Runs SRT then HST over every bin pair. Throws ParamMismatch when the
/// two grids were built with different VoiParams.
BinStatusGrid classify_bins(const DescriptorGrid& curr_grid,
                            const DescriptorGrid& map_grid,
                            const GroundMask& ground,
                            const ClassifyConfig& cfg);

/// Surrounding Points Test: demotes every DynamicConfirmed bin with no
/// confirmed neighbor within the Chebyshev box (rings clamped, sectors
/// wrapping) to Static. Decisions read a frozen snapshot of the input.
BinStatusGrid surrounding_points_test(const BinStatusGrid& status,
                                      const ClassifyConfig& cfg);

/// Per-bin diagnostic CSV:
/// ring,sector,d_diff_curr,d_diff_map,ratio,overlap_bits,status
void write_bin_diagnostics(std::ostream& out, const DescriptorGrid& curr_grid,
                           const DescriptorGrid& map_grid,
                           const GroundMask& ground, const ClassifyConfig& cfg,
                           const BinStatusGrid& status);

}  // namespace mapclean
