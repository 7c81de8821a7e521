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
#include <filesystem>
#include <optional>
#include <vector>

#include "mapclean/pose.hpp"
#include "mapclean/types.hpp"

namespace mapclean {

/// Reads a KITTI Velodyne scan: one point per 16-byte record of four
/// little-endian float32 (x, y, z, reflectance). Non-finite points are
/// dropped; their count is written to `dropped_non_finite` when given and
/// `kept_records` (when given) receives the raw record index of every kept
/// point, so label streams can be paired by file order.
/// Throws MalformedScan when the file length is not a multiple of 16.
PointCloud read_scan(const std::filesystem::path& path,
                     std::size_t* dropped_non_finite = nullptr,
                     std::vector<std::uint32_t>* kept_records = nullptr);

/// Reads a SemanticKITTI label file: one little-endian uint32 per point,
/// low 16 bits semantic class, high 16 bits instance id. Throws
/// LabelCountMismatch unless the file holds exactly n_points records.
std::vector<PointLabel> read_labels(const std::filesystem::path& path,
                                    std::size_t n_points);

/// Reads KITTI odometry poses (12 whitespace-separated reals per line,
/// row-major 3x4). When a calibration transform Tr is given, each pose P is
/// re-expressed in the LiDAR frame as Tr^-1 * P * Tr.
std::vector<PoseSE3> read_poses(const std::filesystem::path& path,
                                const std::optional<PoseSE3>& calib = {});

/// Reads the LiDAR-to-camera transform from a KITTI calib.txt ("Tr:" line)
/// or from a bare 12-value pose line.
PoseSE3 read_calib(const std::filesystem::path& path);

/// Writes SemanticKITTI-format labels (one little-endian uint32 each).
void write_labels(const std::filesystem::path& path,
                  const std::vector<PointLabel>& labels);

/// Writes KITTI odometry poses (12 reals per line, row-major 3x4) with
/// enough digits to round-trip through read_poses exactly.
void write_poses(const std::filesystem::path& path,
                 const std::vector<PoseSE3>& poses);

enum class CloudFormat : std::uint8_t { AsciiPly, BinaryXYZ };

/// BinaryXYZ is the 16-byte KITTI record (reflectance 0 when absent);
/// coordinates round-trip through read_scan bit-exactly at float32
/// precision. AsciiPly writes a standard PLY header with float x, y, z.
void write_cloud(const PointCloud& cloud, const std::filesystem::path& path,
                 CloudFormat format);

/// Minimal ASCII PLY reader: accepts any vertex element whose properties
/// include x, y, z.
PointCloud read_cloud_ply(const std::filesystem::path& path);

/// Dispatches on extension: ".ply" -> PLY, anything else -> BinaryXYZ.
PointCloud read_cloud(const std::filesystem::path& path);

/// One sequence of scans with poses and optional labels. Frames are either
/// file-backed (scan_paths/label_paths) or held in memory (memory_scans,
/// already labeled). The frame range [start_frame, end_frame] is inclusive.
struct SequenceSource {
  std::vector<std::filesystem::path> scan_paths;
  std::vector<std::filesystem::path> label_paths;
  std::vector<PoseSE3> poses;
  std::optional<PoseSE3> calib;
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;
  std::vector<PointCloud> memory_scans;

  /// Builds a file-backed source from a KITTI-style sequence directory
  /// (velodyne/*.bin plus optional labels/*.label, or a flat directory of
  /// .bin files). Poses are loaded with the calibration applied.
  static SequenceSource from_directory(
      const std::filesystem::path& sequence_dir,
      const std::filesystem::path& poses_path,
      const std::optional<std::filesystem::path>& calib_path,
      std::size_t start, std::size_t end);

  std::size_t frame_count() const { return end_frame - start_frame + 1; }
  bool in_memory() const { return !memory_scans.empty(); }
  bool has_labels() const { return in_memory() || !label_paths.empty(); }

  /// Loads the scan for an absolute frame index, labels attached when
  /// available. Errors are rethrown with the frame index in the message.
  PointCloud load_scan(std::size_t frame) const;

  const PoseSE3& pose(std::size_t frame) const;

  /// Checks the range against pose/scan availability. Throws ConfigError.
  void validate() const;
};

}  // namespace mapclean
