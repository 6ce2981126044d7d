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

#include "ttc/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "ttc/error.hpp"

namespace ttc {
namespace {

std::string dims_string(const Dims& dims) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ')';
  return os.str();
}

void validate_dims(const Dims& dims) {
  if (dims.empty()) fail(ErrorCode::kInvalidArgument, "tensor needs at least one mode");
  for (auto d : dims) {
    if (d == 0) fail(ErrorCode::kInvalidArgument, "zero extent in dims " + dims_string(dims));
  }
}

void check_mode(const Dims& dims, std::size_t k) {
  if (k < 1 || k + 1 > dims.size()) {
    fail(ErrorCode::kInvalidArgument,
         "mode " + std::to_string(k) + " out of range for order " + std::to_string(dims.size()));
  }
}

}  // namespace

void require_same_dims(const Dims& a, const Dims& b, const char* what) {
  if (a != b) {
    fail(ErrorCode::kInvalidArgument,
         std::string(what) + ": dims " + dims_string(a) + " vs " + dims_string(b));
  }
}

std::size_t element_count(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t mode_rows(const Dims& dims, std::size_t k) {
  check_mode(dims, k);
  return std::accumulate(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(k),
                         std::size_t{1}, std::multiplies<>());
}

std::size_t mode_cols(const Dims& dims, std::size_t k) {
  check_mode(dims, k);
  return std::accumulate(dims.begin() + static_cast<std::ptrdiff_t>(k), dims.end(),
                         std::size_t{1}, std::multiplies<>());
}

DenseTensor::DenseTensor(Dims dims, double fill) : dims_(std::move(dims)) {
  validate_dims(dims_);
  data_.assign(element_count(dims_), fill);
}

DenseTensor::DenseTensor(Dims dims, std::vector<double> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  validate_dims(dims_);
  if (data_.size() != element_count(dims_)) {
    fail(ErrorCode::kInvalidArgument, "buffer length " + std::to_string(data_.size()) +
                                          " does not match dims " + dims_string(dims_));
  }
}

std::size_t DenseTensor::linear_index(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size()) {
    fail(ErrorCode::kInvalidArgument, "multi-index has wrong length");
  }
  std::size_t linear = 0;
  std::size_t stride = 1;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (index[m] >= dims_[m]) fail(ErrorCode::kInvalidArgument, "multi-index out of range");
    linear += index[m] * stride;
    stride *= dims_[m];
  }
  return linear;
}

Eigen::Map<const Eigen::MatrixXd> DenseTensor::unfold_view(std::size_t k) const {
  return {data_.data(), static_cast<Eigen::Index>(mode_rows(dims_, k)),
          static_cast<Eigen::Index>(mode_cols(dims_, k))};
}

Eigen::Map<Eigen::MatrixXd> DenseTensor::unfold_view(std::size_t k) {
  return {data_.data(), static_cast<Eigen::Index>(mode_rows(dims_, k)),
          static_cast<Eigen::Index>(mode_cols(dims_, k))};
}

DenseTensor DenseTensor::reshaped(Dims dims) const {
  validate_dims(dims);
  if (element_count(dims) != size()) {
    fail(ErrorCode::kInvalidArgument,
         "cannot reshape " + dims_string(dims_) + " into " + dims_string(dims));
  }
  return DenseTensor(std::move(dims), data_);
}

ObservationMask::ObservationMask(Dims dims, bool known) : dims_(std::move(dims)) {
  validate_dims(dims_);
  known_.assign(element_count(dims_), known ? 1 : 0);
}

ObservationMask::ObservationMask(Dims dims, std::vector<std::uint8_t> known)
    : dims_(std::move(dims)), known_(std::move(known)) {
  validate_dims(dims_);
  if (known_.size() != element_count(dims_)) {
    fail(ErrorCode::kInvalidArgument, "mask length does not match dims " + dims_string(dims_));
  }
  for (auto& b : known_) {
    if (b > 1) fail(ErrorCode::kMalformedInput, "mask entries must be 0 or 1");
  }
}

std::size_t ObservationMask::known_count() const {
  return static_cast<std::size_t>(std::count(known_.begin(), known_.end(), std::uint8_t{1}));
}

double ObservationMask::known_fraction() const {
  return static_cast<double>(known_count()) / static_cast<double>(known_.size());
}

Eigen::Map<const KnownMatrix> ObservationMask::unfold_view(std::size_t k) const {
  return {known_.data(), static_cast<Eigen::Index>(mode_rows(dims_, k)),
          static_cast<Eigen::Index>(mode_cols(dims_, k))};
}

ObservationMask ObservationMask::reshaped(Dims dims) const {
  validate_dims(dims);
  if (element_count(dims) != size()) {
    fail(ErrorCode::kInvalidArgument,
         "cannot reshape mask " + dims_string(dims_) + " into " + dims_string(dims));
  }
  return ObservationMask(std::move(dims), known_);
}

ModeMatrix matricize(const DenseTensor& t, std::size_t k) {
  return ModeMatrix{k, t.dims(), t.unfold_view(k)};
}

DenseTensor fold_matricize(const ModeMatrix& m) {
  const auto& dims = m.parent_dims;
  validate_dims(dims);
  if (static_cast<std::size_t>(m.rows()) != mode_rows(dims, m.mode) ||
      static_cast<std::size_t>(m.cols()) != mode_cols(dims, m.mode)) {
    fail(ErrorCode::kInvalidArgument, "mode matrix shape does not match parent dims " +
                                          dims_string(dims));
  }
  return DenseTensor(dims, std::vector<double>(m.entries.data(),
                                               m.entries.data() + m.entries.size()));
}

DenseTensor hadamard(const DenseTensor& a, const DenseTensor& b) {
  require_same_dims(a.dims(), b.dims(), "hadamard");
  std::vector<double> out(a.size());
  std::transform(a.data().begin(), a.data().end(), b.data().begin(), out.begin(),
                 std::multiplies<>());
  return DenseTensor(a.dims(), std::move(out));
}

ModeMatrix hadamard(const ModeMatrix& a, const ModeMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::kInvalidArgument, "hadamard: mode matrix shapes differ");
  }
  return ModeMatrix{a.mode, a.parent_dims, a.entries.cwiseProduct(b.entries)};
}

double frobenius_norm(const DenseTensor& t) {
  double sum = 0.0;
  for (double v : t.data()) sum += v * v;
  return std::sqrt(sum);
}

ObservationMask sample_mask(const Dims& dims, double missing_rate, std::uint64_t seed) {
  if (!(missing_rate >= 0.0) || missing_rate >= 1.0) {
    fail(ErrorCode::kInvalidArgument, "missing rate must lie in [0, 1)");
  }
  ObservationMask mask(dims, true);
  const std::size_t total = mask.size();
  const auto missing = static_cast<std::size_t>(std::llround(missing_rate * static_cast<double>(total)));
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < missing; ++i) mask.set_known(order[i], false);
  return mask;
}

DenseTensor observed_part(const DenseTensor& t, const ObservationMask& mask) {
  require_same_dims(t.dims(), mask.dims(), "observed_part");
  DenseTensor out(t.dims());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = mask.known(i) ? t[i] : 0.0;
  return out;
}

}  // namespace ttc
