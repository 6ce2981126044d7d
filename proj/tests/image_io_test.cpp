// Copyright 2026 The ttcomplete Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttc/image_io.hpp"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "ttc/error.hpp"

namespace ttc {
namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ttc_image_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream os(p, std::ios::binary);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

ErrorCode code_of(const std::string& path) {
  try {
    load_image(path);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << path;
  return ErrorCode::kIo;
}

TEST(ImageIoTest, ReadsPgmRowMajorBytes) {
  const auto p = scratch("tiny.pgm");
  write_bytes(p, std::string("P5\n# comment\n3 2\n255\n") + std::string("\x00\x33\x66\x99\xcc\xff", 6));
  const auto t = load_image(p.string());
  ASSERT_EQ(t.dims(), (Dims{2, 3}));
  // Row 0: 0x00 0x33 0x66, row 1: 0x99 0xcc 0xff.
  const std::size_t r1c2[] = {1, 2};
  const std::size_t r0c1[] = {0, 1};
  EXPECT_EQ(t.at(r1c2), 1.0);
  EXPECT_EQ(t.at(r0c1), 0x33 / 255.0);
}

TEST(ImageIoTest, PpmRoundTrip) {
  DenseTensor t(Dims{3, 4, 3});
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>((i * 37) % 256) / 255.0;
  const auto p = scratch("rt.ppm");
  save_image(t, p.string());
  EXPECT_EQ(load_image(p.string()), t);
}

TEST(ImageIoTest, PpmChannelsInterleaved) {
  const auto p = scratch("px.ppm");
  write_bytes(p, std::string("P6 1 1 255\n") + std::string("\xff\x00\x80", 3));
  const auto t = load_image(p.string());
  ASSERT_EQ(t.dims(), (Dims{1, 1, 3}));
  EXPECT_EQ(t[0], 1.0);
  EXPECT_EQ(t[1], 0.0);
  EXPECT_EQ(t[2], 128.0 / 255.0);
}

TEST(ImageIoTest, SaveClampsAndRounds) {
  const auto p = scratch("clamp.pgm");
  save_image(DenseTensor(Dims{1, 3}, {-0.5, 0.5, 2.0}), p.string());
  const auto t = load_image(p.string());
  EXPECT_EQ(t[0], 0.0);
  EXPECT_EQ(t[1], 128.0 / 255.0);
  EXPECT_EQ(t[2], 1.0);
}

TEST(ImageIoTest, MalformedFiles) {
  const auto cut = scratch("cut.pgm");
  write_bytes(cut, std::string("P5\n4 4\n255\n") + std::string(10, '\x10'));
  EXPECT_EQ(code_of(cut.string()), ErrorCode::kMalformedInput);
  const auto ascii = scratch("ascii.pgm");
  write_bytes(ascii, "P2\n1 1\n255\n7\n");
  EXPECT_EQ(code_of(ascii.string()), ErrorCode::kMalformedInput);
  const auto deep = scratch("deep.pgm");
  write_bytes(deep, std::string("P5\n1 1\n65535\n") + std::string(2, '\x01'));
  EXPECT_EQ(code_of(deep.string()), ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of(scratch("absent.pgm").string()), ErrorCode::kIo);
}

TEST(ImageIoTest, RejectsNonImageShapes) {
  EXPECT_THROW(save_image(DenseTensor(Dims{2, 2, 2}), scratch("bad.ppm").string()), Error);
}

}  // namespace
}  // namespace ttc
