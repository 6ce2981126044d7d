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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <vector>

#include "ttc/error.hpp"

namespace ttc {
namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& is) {
  std::string token;
  int ch = is.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = is.get();
    } else if (std::isspace(ch)) {
      if (!token.empty()) return token;
    } else {
      token.push_back(static_cast<char>(ch));
    }
    ch = is.get();
  }
  return token;
}

std::size_t header_number(std::istream& is, const char* what) {
  const auto token = header_token(is);
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
    fail(ErrorCode::kMalformedInput, std::string("bad netpbm ") + what);
  }
  return std::stoul(token);
}

}  // namespace

DenseTensor load_image(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::kIo, "cannot open " + path);
  const auto magic = header_token(is);
  std::size_t channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    fail(ErrorCode::kMalformedInput, path + ": expected binary PGM (P5) or PPM (P6)");
  }
  const auto cols = header_number(is, "width");
  const auto rows = header_number(is, "height");
  const auto maxval = header_number(is, "maxval");
  if (maxval != 255) fail(ErrorCode::kMalformedInput, path + ": only maxval 255 is supported");
  if (rows == 0 || cols == 0) fail(ErrorCode::kMalformedInput, path + ": empty image");

  std::vector<unsigned char> bytes(rows * cols * channels);
  if (!is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()))) {
    fail(ErrorCode::kMalformedInput, path + ": truncated pixel data");
  }
  Dims dims{rows, cols};
  if (channels == 3) dims.push_back(3);
  DenseTensor t(dims);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t ch = 0; ch < channels; ++ch) {
        t[r + rows * (c + cols * ch)] = bytes[(r * cols + c) * channels + ch] / 255.0;
      }
    }
  }
  return t;
}

void save_image(const DenseTensor& t, const std::string& path) {
  const auto& dims = t.dims();
  std::size_t channels = 0;
  if (dims.size() == 2) {
    channels = 1;
  } else if (dims.size() == 3 && dims[2] == 3) {
    channels = 3;
  } else {
    fail(ErrorCode::kUnsupportedShape, "images must be (rows, cols) or (rows, cols, 3)");
  }
  const std::size_t rows = dims[0];
  const std::size_t cols = dims[1];
  std::vector<unsigned char> bytes(rows * cols * channels);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t ch = 0; ch < channels; ++ch) {
        const double v = std::clamp(t[r + rows * (c + cols * ch)], 0.0, 1.0);
        bytes[(r * cols + c) * channels + ch] = static_cast<unsigned char>(std::lround(v * 255.0));
      }
    }
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  os << (channels == 1 ? "P5" : "P6") << '\n' << cols << ' ' << rows << "\n255\n";
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!os) fail(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace ttc
