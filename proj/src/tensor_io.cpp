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

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ttc/error.hpp"

namespace ttc {
namespace {

void write_header(std::ostream& os, const char* tag, const Dims& dims) {
  os << tag << ' ' << dims.size();
  for (auto d : dims) os << ' ' << d;
  os << '\n';
}

Dims read_header(std::istream& is, const char* tag) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::kMalformedInput, std::string("missing ") + tag + " header");
  std::istringstream hs(line);
  std::string got;
  long long order = 0;
  if (!(hs >> got) || got != tag) fail(ErrorCode::kMalformedInput, std::string("expected ") + tag + " magic");
  if (!(hs >> order) || order < 1 || order > 64) fail(ErrorCode::kMalformedInput, "bad tensor order in header");
  Dims dims;
  for (long long m = 0; m < order; ++m) {
    long long d = 0;
    if (!(hs >> d) || d < 1) fail(ErrorCode::kMalformedInput, "bad extent in header");
    dims.push_back(static_cast<std::size_t>(d));
  }
  std::string extra;
  if (hs >> extra) fail(ErrorCode::kMalformedInput, "trailing tokens in header");
  return dims;
}

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::kIo, "cannot open " + path);
  return is;
}

}  // namespace

void write_dt1(std::ostream& os, const DenseTensor& t) {
  write_header(os, "DT1", t.dims());
  for (double v : t.data()) {
    const auto bits = to_little(std::bit_cast<std::uint64_t>(v));
    char buf[8];
    std::memcpy(buf, &bits, 8);
    os.write(buf, 8);
  }
  if (!os) fail(ErrorCode::kIo, "write failed");
}

DenseTensor read_dt1(std::istream& is) {
  Dims dims = read_header(is, "DT1");
  std::vector<double> data(element_count(dims));
  for (auto& v : data) {
    char buf[8];
    if (!is.read(buf, 8)) fail(ErrorCode::kMalformedInput, "truncated DT1 payload");
    std::uint64_t bits = 0;
    std::memcpy(&bits, buf, 8);
    v = std::bit_cast<double>(to_little(bits));
  }
  return DenseTensor(std::move(dims), std::move(data));
}

void save_dt1(const std::string& path, const DenseTensor& t) {
  auto os = open_out(path);
  write_dt1(os, t);
}

DenseTensor load_dt1(const std::string& path) {
  auto is = open_in(path);
  return read_dt1(is);
}

void write_dm1(std::ostream& os, const ObservationMask& m) {
  write_header(os, "DM1", m.dims());
  os.write(reinterpret_cast<const char*>(m.bytes().data()),
           static_cast<std::streamsize>(m.bytes().size()));
  if (!os) fail(ErrorCode::kIo, "write failed");
}

ObservationMask read_dm1(std::istream& is) {
  Dims dims = read_header(is, "DM1");
  std::vector<std::uint8_t> known(element_count(dims));
  if (!is.read(reinterpret_cast<char*>(known.data()), static_cast<std::streamsize>(known.size()))) {
    fail(ErrorCode::kMalformedInput, "truncated DM1 payload");
  }
  return ObservationMask(std::move(dims), std::move(known));
}

void save_dm1(const std::string& path, const ObservationMask& m) {
  auto os = open_out(path);
  write_dm1(os, m);
}

ObservationMask load_dm1(const std::string& path) {
  auto is = open_in(path);
  return read_dm1(is);
}

}  // namespace ttc
