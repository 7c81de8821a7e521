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

#include "mapclean/io.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "mapclean/errors.hpp"

namespace mapclean {

namespace {

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const std::streamoff size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  if (size > 0 && !in.read(reinterpret_cast<char*>(bytes.data()), size)) {
    throw IoError("short read on " + path.string());
  }
  return bytes;
}

std::uint32_t load_u32_le(const std::uint8_t* b) {
  return static_cast<std::uint32_t>(b[0]) |
         static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 |
         static_cast<std::uint32_t>(b[3]) << 24;
}

float load_f32_le(const std::uint8_t* b) {
  return std::bit_cast<float>(load_u32_le(b));
}

void store_f32_le(float v, std::uint8_t* b) {
  const auto u = std::bit_cast<std::uint32_t>(v);
  b[0] = static_cast<std::uint8_t>(u);
  b[1] = static_cast<std::uint8_t>(u >> 8);
  b[2] = static_cast<std::uint8_t>(u >> 16);
  b[3] = static_cast<std::uint8_t>(u >> 24);
}

}  // namespace

PointCloud read_scan(const std::filesystem::path& path,
                     std::size_t* dropped_non_finite,
                     std::vector<std::uint32_t>* kept_records) {
  const auto bytes = read_file_bytes(path);
  if (bytes.size() % 16 != 0) {
    throw MalformedScan(path.string() + ": length " +
                        std::to_string(bytes.size()) +
                        " is not a multiple of 16");
  }
  PointCloud cloud;
  cloud.frame = CloudFrame::SensorLocal;
  cloud.points.reserve(bytes.size() / 16);
  if (kept_records) kept_records->clear();
  std::size_t dropped = 0;
  std::uint32_t record = 0;
  for (std::size_t off = 0; off < bytes.size(); off += 16, ++record) {
    Point3 p;
    p.x = load_f32_le(&bytes[off]);
    p.y = load_f32_le(&bytes[off + 4]);
    p.z = load_f32_le(&bytes[off + 8]);
    p.intensity = load_f32_le(&bytes[off + 12]);
    if (!p.is_finite()) {
      ++dropped;
      continue;
    }
    cloud.points.push_back(p);
    if (kept_records) kept_records->push_back(record);
  }
  if (dropped_non_finite) *dropped_non_finite = dropped;
  return cloud;
}

std::vector<PointLabel> read_labels(const std::filesystem::path& path,
                                    std::size_t n_points) {
  const auto bytes = read_file_bytes(path);
  if (bytes.size() != 4 * n_points) {
    throw LabelCountMismatch(path.string() + ": " +
                             std::to_string(bytes.size() / 4) +
                             " labels for " + std::to_string(n_points) +
                             " points");
  }
  std::vector<PointLabel> labels;
  labels.reserve(n_points);
  for (std::size_t off = 0; off < bytes.size(); off += 4) {
    const std::uint32_t raw = load_u32_le(&bytes[off]);
    labels.push_back({static_cast<std::uint16_t>(raw & 0xFFFFu),
                      static_cast<std::uint16_t>(raw >> 16)});
  }
  return labels;
}

namespace {

PoseSE3 pose_from_values(const double v[12]) {
  PoseSE3 pose;
  pose.rotation << v[0], v[1], v[2], v[4], v[5], v[6], v[8], v[9], v[10];
  pose.translation << v[3], v[7], v[11];
  return pose;
}

}  // namespace

std::vector<PoseSE3> read_poses(const std::filesystem::path& path,
                                const std::optional<PoseSE3>& calib) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  std::optional<PoseSE3> calib_inv;
  if (calib) {
    validate_pose(*calib);
    calib_inv = invert_pose(*calib);
  }

  std::vector<PoseSE3> poses;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ss(line);
    double v[12];
    for (double& x : v) {
      if (!(ss >> x)) {
        throw MalformedPoseLine(path.string() + ":" + std::to_string(line_no) +
                                ": expected 12 reals");
      }
    }
    double extra;
    if (ss >> extra) {
      throw MalformedPoseLine(path.string() + ":" + std::to_string(line_no) +
                              ": more than 12 values");
    }
    PoseSE3 pose = pose_from_values(v);
    if (calib) pose = compose(compose(*calib_inv, pose), *calib);
    poses.push_back(pose);
  }
  return poses;
}

PoseSE3 read_calib(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::optional<std::string> bare_line;
  while (std::getline(in, line)) {
    if (line.rfind("Tr:", 0) == 0) {
      bare_line = line.substr(3);
      break;
    }
    if (!bare_line && line.find_first_not_of(" \t\r\n") != std::string::npos &&
        line.find(':') == std::string::npos) {
      bare_line = line;  // fallback: first headerless numeric line
    }
  }
  if (!bare_line) {
    throw MalformedPoseLine(path.string() + ": no Tr line found");
  }
  std::istringstream ss(*bare_line);
  double v[12];
  for (double& x : v) {
    if (!(ss >> x)) {
      throw MalformedPoseLine(path.string() + ": Tr line needs 12 reals");
    }
  }
  return pose_from_values(v);
}

void write_labels(const std::filesystem::path& path,
                  const std::vector<PointLabel>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const PointLabel& label : labels) {
    const std::uint32_t raw = static_cast<std::uint32_t>(label.semantic) |
                              static_cast<std::uint32_t>(label.instance) << 16;
    const std::uint8_t bytes[4] = {
        static_cast<std::uint8_t>(raw), static_cast<std::uint8_t>(raw >> 8),
        static_cast<std::uint8_t>(raw >> 16),
        static_cast<std::uint8_t>(raw >> 24)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
  }
  if (!out) throw IoError("write failed on " + path.string());
}

void write_poses(const std::filesystem::path& path,
                 const std::vector<PoseSE3>& poses) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  char buf[32];
  for (const PoseSE3& pose : poses) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) {
        const double v = c < 3 ? pose.rotation(r, c) : pose.translation(r);
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf << (r == 2 && c == 3 ? "" : " ");
      }
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed on " + path.string());
}

void write_cloud(const PointCloud& cloud, const std::filesystem::path& path,
                 CloudFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");

  if (format == CloudFormat::BinaryXYZ) {
    std::vector<std::uint8_t> rec(16);
    for (const Point3& p : cloud.points) {
      store_f32_le(static_cast<float>(p.x), &rec[0]);
      store_f32_le(static_cast<float>(p.y), &rec[4]);
      store_f32_le(static_cast<float>(p.z), &rec[8]);
      store_f32_le(p.intensity, &rec[12]);
      out.write(reinterpret_cast<const char*>(rec.data()), 16);
    }
  } else {
    out << "ply\n"
        << "format ascii 1.0\n"
        << "element vertex " << cloud.size() << "\n"
        << "property float x\n"
        << "property float y\n"
        << "property float z\n"
        << "end_header\n";
    char buf[96];
    for (const Point3& p : cloud.points) {
      std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g\n",
                    static_cast<double>(static_cast<float>(p.x)),
                    static_cast<double>(static_cast<float>(p.y)),
                    static_cast<double>(static_cast<float>(p.z)));
      out << buf;
    }
  }
  if (!out) throw IoError("write failed on " + path.string());
}

PointCloud read_cloud_ply(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("ply", 0) != 0) {
    throw IoError(path.string() + ": not a PLY file");
  }
  std::size_t vertex_count = 0;
  std::vector<std::string> properties;
  bool in_vertex_element = false;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tok;
    ss >> tok;
    if (tok == "end_header") break;
    if (tok == "format") {
      std::string fmt;
      ss >> fmt;
      if (fmt != "ascii") throw IoError(path.string() + ": only ascii PLY supported");
    } else if (tok == "element") {
      std::string name;
      ss >> name >> vertex_count;
      in_vertex_element = name == "vertex";
      if (!in_vertex_element) vertex_count = 0;
    } else if (tok == "property" && in_vertex_element) {
      std::string type, name;
      ss >> type >> name;
      properties.push_back(name);
    }
  }
  const auto col_of = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(properties.begin(), properties.end(), name);
    if (it == properties.end()) {
      throw IoError(path.string() + ": PLY has no '" + name + "' property");
    }
    return static_cast<std::size_t>(it - properties.begin());
  };
  const std::size_t cx = col_of("x"), cy = col_of("y"), cz = col_of("z");

  PointCloud cloud;
  cloud.frame = CloudFrame::Map;
  cloud.points.reserve(vertex_count);
  std::vector<double> row(properties.size());
  for (std::size_t i = 0; i < vertex_count; ++i) {
    if (!std::getline(in, line)) {
      throw IoError(path.string() + ": truncated vertex data");
    }
    std::istringstream ss(line);
    for (double& v : row) {
      if (!(ss >> v)) throw IoError(path.string() + ": bad vertex row");
    }
    cloud.points.push_back({row[cx], row[cy], row[cz]});
  }
  return cloud;
}

PointCloud read_cloud(const std::filesystem::path& path) {
  if (path.extension() == ".ply") return read_cloud_ply(path);
  PointCloud cloud = read_scan(path);
  cloud.frame = CloudFrame::Map;
  return cloud;
}

SequenceSource SequenceSource::from_directory(
    const std::filesystem::path& sequence_dir,
    const std::filesystem::path& poses_path,
    const std::optional<std::filesystem::path>& calib_path, std::size_t start,
    std::size_t end) {
  namespace fs = std::filesystem;
  SequenceSource src;
  fs::path scan_dir = sequence_dir;
  if (fs::is_directory(sequence_dir / "velodyne")) {
    scan_dir = sequence_dir / "velodyne";
  }
  for (const auto& entry : fs::directory_iterator(scan_dir)) {
    if (entry.path().extension() == ".bin") src.scan_paths.push_back(entry.path());
  }
  std::sort(src.scan_paths.begin(), src.scan_paths.end());
  if (src.scan_paths.empty()) {
    throw IoError("no .bin scans under " + scan_dir.string());
  }

  const fs::path label_dir = sequence_dir / "labels";
  if (fs::is_directory(label_dir)) {
    for (const auto& entry : fs::directory_iterator(label_dir)) {
      if (entry.path().extension() == ".label") {
        src.label_paths.push_back(entry.path());
      }
    }
    std::sort(src.label_paths.begin(), src.label_paths.end());
  }

  if (calib_path) src.calib = read_calib(*calib_path);
  src.poses = read_poses(poses_path, src.calib);
  src.start_frame = start;
  src.end_frame = end;
  src.validate();
  return src;
}

void SequenceSource::validate() const {
  if (end_frame < start_frame) {
    throw ConfigError("frame range end < start");
  }
  const std::size_t n_scans = in_memory() ? memory_scans.size() : scan_paths.size();
  if (end_frame >= n_scans) {
    throw ConfigError("frame range [" + std::to_string(start_frame) + ", " +
                      std::to_string(end_frame) + "] exceeds " +
                      std::to_string(n_scans) + " scans");
  }
  if (poses.size() <= end_frame) {
    throw ConfigError("pose list has " + std::to_string(poses.size()) +
                      " entries, need > " + std::to_string(end_frame));
  }
  if (!in_memory() && !label_paths.empty() &&
      label_paths.size() != scan_paths.size()) {
    throw ConfigError("label file count does not match scan file count");
  }
}

PointCloud SequenceSource::load_scan(std::size_t frame) const {
  try {
    if (in_memory()) {
      if (frame >= memory_scans.size()) throw IoError("frame out of range");
      return memory_scans[frame];
    }
    if (frame >= scan_paths.size()) throw IoError("frame out of range");
    std::size_t dropped = 0;
    std::vector<std::uint32_t> kept;
    PointCloud cloud = read_scan(scan_paths[frame], &dropped, &kept);
    if (!label_paths.empty()) {
      // Labels pair with raw file records; drop the same records the scan
      // reader dropped.
      const auto raw_labels =
          read_labels(label_paths[frame], cloud.size() + dropped);
      cloud.labels.reserve(cloud.size());
      for (const std::uint32_t record : kept) {
        cloud.labels.push_back(raw_labels[record]);
      }
    }
    return cloud;
  } catch (const Error& e) {
    throw IoError("frame " + std::to_string(frame) + ": " + e.what());
  }
}

const PoseSE3& SequenceSource::pose(std::size_t frame) const {
  if (frame >= poses.size()) {
    throw ConfigError("no pose for frame " + std::to_string(frame));
  }
  return poses[frame];
}

}  // namespace mapclean
