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

#include <doctest.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <random>

#include "mapclean/errors.hpp"
#include "mapclean/io.hpp"
#include "support/test_helpers.hpp"

using namespace mapclean;

namespace {

void write_bytes(const std::filesystem::path& path,
                 const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

void push_f32(std::vector<std::uint8_t>& bytes, float v) {
  const auto u = std::bit_cast<std::uint32_t>(v);
  bytes.push_back(static_cast<std::uint8_t>(u));
  bytes.push_back(static_cast<std::uint8_t>(u >> 8));
  bytes.push_back(static_cast<std::uint8_t>(u >> 16));
  bytes.push_back(static_cast<std::uint8_t>(u >> 24));
}

void push_u32(std::vector<std::uint8_t>& bytes, std::uint32_t u) {
  bytes.push_back(static_cast<std::uint8_t>(u));
  bytes.push_back(static_cast<std::uint8_t>(u >> 8));
  bytes.push_back(static_cast<std::uint8_t>(u >> 16));
  bytes.push_back(static_cast<std::uint8_t>(u >> 24));
}

}  // namespace

TEST_CASE("read_scan decodes 16-byte records") {
  const auto dir = testutil::scratch_dir("scan");
  std::vector<std::uint8_t> bytes;
  for (float v : {1.f, 2.f, 3.f, 0.5f, 4.f, 5.f, 6.f, 0.1f}) push_f32(bytes, v);
  write_bytes(dir / "a.bin", bytes);

  const PointCloud cloud = read_scan(dir / "a.bin");
  REQUIRE(cloud.size() == 2);
  CHECK(cloud.points[0].x == 1.0);
  CHECK(cloud.points[0].intensity == 0.5f);
  CHECK(cloud.points[1].z == 6.0);
  CHECK(cloud.points[1].intensity == 0.1f);
}

TEST_CASE("read_scan of an empty file gives an empty cloud") {
  const auto dir = testutil::scratch_dir("scan_empty");
  write_bytes(dir / "e.bin", {});
  CHECK(read_scan(dir / "e.bin").empty());
}

TEST_CASE("read_scan rejects a 17-byte file") {
  const auto dir = testutil::scratch_dir("scan_bad");
  write_bytes(dir / "b.bin", std::vector<std::uint8_t>(17, 0));
  CHECK_THROWS_AS(read_scan(dir / "b.bin"), MalformedScan);
}

TEST_CASE("read_scan drops non-finite points and reports them") {
  const auto dir = testutil::scratch_dir("scan_nan");
  std::vector<std::uint8_t> bytes;
  for (float v : {1.f, 2.f, 3.f, 0.f}) push_f32(bytes, v);
  for (float v : {std::numeric_limits<float>::quiet_NaN(), 0.f, 0.f, 0.f}) {
    push_f32(bytes, v);
  }
  for (float v : {7.f, 8.f, 9.f, 0.f}) push_f32(bytes, v);
  write_bytes(dir / "n.bin", bytes);

  std::size_t dropped = 0;
  std::vector<std::uint32_t> kept;
  const PointCloud cloud = read_scan(dir / "n.bin", &dropped, &kept);
  CHECK(cloud.size() == 2);
  CHECK(dropped == 1);
  CHECK(kept == std::vector<std::uint32_t>{0, 2});
}

TEST_CASE("read_labels splits semantic and instance halves") {
  const auto dir = testutil::scratch_dir("labels");
  std::vector<std::uint8_t> bytes;
  push_u32(bytes, 0x000100FEu);
  push_u32(bytes, 0u);
  write_bytes(dir / "l.label", bytes);

  const auto labels = read_labels(dir / "l.label", 2);
  REQUIRE(labels.size() == 2);
  CHECK(labels[0].semantic == 254);
  CHECK(labels[0].instance == 1);
  CHECK(labels[1].semantic == 0);
  CHECK(labels[1].instance == 0);

  CHECK_THROWS_AS(read_labels(dir / "l.label", 3), LabelCountMismatch);
}

TEST_CASE("read_poses parses 3x4 rows") {
  const auto dir = testutil::scratch_dir("poses");
  {
    std::ofstream out(dir / "poses.txt");
    out << "1 0 0 0 0 1 0 0 0 0 1 0\n";
    out << "1 0 0 5 0 1 0 0 0 0 1 0\n";
  }
  const auto poses = read_poses(dir / "poses.txt");
  REQUIRE(poses.size() == 2);
  CHECK((poses[0].rotation - Eigen::Matrix3d::Identity()).norm() == 0.0);
  CHECK(poses[0].translation.norm() == 0.0);
  CHECK(poses[1].translation.x() == 5.0);

  SUBCASE("identity calibration changes nothing") {
    const auto conj = read_poses(dir / "poses.txt", PoseSE3{});
    CHECK((conj[1].translation - poses[1].translation).norm() == 0.0);
    CHECK((conj[1].rotation - poses[1].rotation).norm() == 0.0);
  }

  SUBCASE("calibration conjugates each pose") {
    std::mt19937_64 rng(3);
    const PoseSE3 calib = testutil::random_pose(rng);
    const auto conj = read_poses(dir / "poses.txt", calib);
    const PoseSE3 expected =
        compose(compose(invert_pose(calib), poses[1]), calib);
    CHECK((conj[1].rotation - expected.rotation).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((conj[1].translation - expected.translation).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("read_poses rejects malformed lines") {
  const auto dir = testutil::scratch_dir("poses_bad");
  {
    std::ofstream out(dir / "poses.txt");
    out << "1 0 0 0 0 1 0\n";
  }
  CHECK_THROWS_AS(read_poses(dir / "poses.txt"), MalformedPoseLine);
}

TEST_CASE("read_calib finds the Tr line") {
  const auto dir = testutil::scratch_dir("calib");
  {
    std::ofstream out(dir / "calib.txt");
    out << "P0: 1 0 0 0 0 1 0 0 0 0 1 0\n";
    out << "Tr: 1 0 0 0.5 0 1 0 0 0 0 1 -0.1\n";
  }
  const PoseSE3 tr = read_calib(dir / "calib.txt");
  CHECK(tr.translation.x() == 0.5);
  CHECK(tr.translation.z() == -0.1);
}

TEST_CASE("write_cloud AsciiPly emits a standard header") {
  const auto dir = testutil::scratch_dir("ply");
  PointCloud cloud;
  cloud.points = {{1, 2, 3}};
  write_cloud(cloud, dir / "one.ply", CloudFormat::AsciiPly);

  std::ifstream in(dir / "one.ply");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("element vertex 1") != std::string::npos);
  CHECK(text.find("property float x") != std::string::npos);
  CHECK(text.find("end_header\n1 2 3\n") != std::string::npos);

  const PointCloud back = read_cloud_ply(dir / "one.ply");
  REQUIRE(back.size() == 1);
  CHECK(back.points[0].y == 2.0);
}

TEST_CASE("empty cloud writes a valid PLY with zero vertices") {
  const auto dir = testutil::scratch_dir("ply_empty");
  write_cloud(PointCloud{}, dir / "zero.ply", CloudFormat::AsciiPly);
  const PointCloud back = read_cloud_ply(dir / "zero.ply");
  CHECK(back.empty());
}

TEST_CASE("BinaryXYZ round trip is bit-exact at float precision") {
  const auto dir = testutil::scratch_dir("roundtrip");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(-80.0, 80.0);
  PointCloud cloud;
  for (int i = 0; i < 500; ++i) {
    // Disk format is float32; quantize the fixture the same way the
    // sensor data is stored.
    cloud.points.push_back({static_cast<float>(coord(rng)),
                            static_cast<float>(coord(rng)),
                            static_cast<float>(coord(rng)),
                            static_cast<float>(std::abs(coord(rng)) / 80.0)});
  }
  write_cloud(cloud, dir / "c.bin", CloudFormat::BinaryXYZ);
  const PointCloud back = read_scan(dir / "c.bin");
  REQUIRE(back.size() == cloud.size());
  for (std::size_t k = 0; k < cloud.size(); ++k) {
    CHECK(back.points[k].x == cloud.points[k].x);
    CHECK(back.points[k].y == cloud.points[k].y);
    CHECK(back.points[k].z == cloud.points[k].z);
    CHECK(back.points[k].intensity == cloud.points[k].intensity);
  }
}

TEST_CASE("sequence source pairs labels with kept records") {
  const auto dir = testutil::scratch_dir("seq");
  std::filesystem::create_directories(dir / "velodyne");
  std::filesystem::create_directories(dir / "labels");

  std::vector<std::uint8_t> scan_bytes;
  for (float v : {1.f, 0.f, 0.f, 0.f}) push_f32(scan_bytes, v);
  for (float v : {std::numeric_limits<float>::infinity(), 0.f, 0.f, 0.f}) {
    push_f32(scan_bytes, v);
  }
  for (float v : {2.f, 0.f, 0.f, 0.f}) push_f32(scan_bytes, v);
  write_bytes(dir / "velodyne" / "000000.bin", scan_bytes);

  std::vector<std::uint8_t> label_bytes;
  push_u32(label_bytes, 40);
  push_u32(label_bytes, 99);
  push_u32(label_bytes, 252);
  write_bytes(dir / "labels" / "000000.label", label_bytes);

  {
    std::ofstream out(dir / "poses.txt");
    out << "1 0 0 0 0 1 0 0 0 0 1 0\n";
  }

  const auto source =
      SequenceSource::from_directory(dir, dir / "poses.txt", {}, 0, 0);
  const PointCloud scan = source.load_scan(0);
  REQUIRE(scan.size() == 2);
  REQUIRE(scan.has_labels());
  CHECK(scan.labels[0].semantic == 40);
  CHECK(scan.labels[1].semantic == 252);  // label 99 dropped with its point
}

TEST_CASE("sequence source validates range against poses") {
  SequenceSource src;
  src.memory_scans.resize(3);
  src.poses.resize(2);
  src.start_frame = 0;
  src.end_frame = 2;
  CHECK_THROWS_AS(src.validate(), ConfigError);
  src.poses.resize(3);
  CHECK_NOTHROW(src.validate());
}
