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

#include "ttc/tensor_io.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "ttc/error.hpp"

namespace ttc {
namespace {

TEST(TensorIoTest, Dt1RoundTripIsBitExact) {
  DenseTensor t(Dims{2, 3}, {0.1, -2.5, 1e-300, 3.0, 0.0, 1.0 / 3.0});
  std::stringstream ss;
  write_dt1(ss, t);
  EXPECT_EQ(read_dt1(ss), t);
}

TEST(TensorIoTest, Dt1HeaderLayout) {
  std::stringstream ss;
  write_dt1(ss, DenseTensor(Dims{1, 2}, {1.0, 2.0}));
  const std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 10), "DT1 2 1 2\n");
  EXPECT_EQ(bytes.size(), 10u + 16u);
  // 1.0 little-endian: 00 .. 00 f0 3f
  EXPECT_EQ(static_cast<unsigned char>(bytes[10 + 7]), 0x3f);
  EXPECT_EQ(static_cast<unsigned char>(bytes[10 + 6]), 0xf0);
}

TEST(TensorIoTest, TruncatedDt1IsMalformed) {
  std::stringstream full;
  write_dt1(full, DenseTensor(Dims{4}, 1.0));
  std::string bytes = full.str();
  bytes.resize(bytes.size() - 3);
  std::stringstream cut(bytes);
  try {
    read_dt1(cut);
    FAIL() << "expected malformed-input";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedInput);
  }
}

TEST(TensorIoTest, BadMagicIsMalformed) {
  std::stringstream ss("DT2 1 1\n00000000");
  EXPECT_THROW(read_dt1(ss), Error);
}

TEST(TensorIoTest, Dm1RoundTrip) {
  const auto m = sample_mask({3, 4, 2}, 0.4, 11);
  std::stringstream ss;
  write_dm1(ss, m);
  EXPECT_EQ(read_dm1(ss), m);
}

TEST(TensorIoTest, Dm1RejectsNonBinary) {
  std::stringstream ss(std::string("DM1 1 2\n\x01\x05", 10));
  try {
    read_dm1(ss);
    FAIL() << "expected malformed-input";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedInput);
  }
}

TEST(TensorIoTest, MissingFileIsIoError) {
  try {
    load_dt1("/nonexistent/file.dt1");
    FAIL() << "expected io";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace ttc
