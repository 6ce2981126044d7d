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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ttc {

using Dims = std::vector<std::size_t>;
using KnownMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

std::size_t element_count(const Dims& dims);

/// Rows of the mode-k canonical matricization: I_1 * ... * I_k.
/// Modes are numbered 1..N-1 as in the usual TT notation.
std::size_t mode_rows(const Dims& dims, std::size_t k);
/// Columns of the mode-k canonical matricization: I_{k+1} * ... * I_N.
std::size_t mode_cols(const Dims& dims, std::size_t k);

/// Dense N-way array of doubles stored first-index-fastest, so the element
/// at 0-based multi-index (i_1, ..., i_N) lives at
/// i_1 + i_2 I_1 + ... + i_N I_1 ... I_{N-1}.
///
/// With this layout the mode-k canonical matricization is the same buffer
/// read as a column-major m_k x n_k matrix, which `unfold_view` exposes
/// without copying.
class DenseTensor {
 public:
  DenseTensor() : DenseTensor(Dims{1}) {}
  explicit DenseTensor(Dims dims, double fill = 0.0);
  DenseTensor(Dims dims, std::vector<double> data);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t order() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  double operator[](std::size_t linear) const { return data_[linear]; }
  double& operator[](std::size_t linear) { return data_[linear]; }

  std::size_t linear_index(std::span<const std::size_t> index) const;
  double at(std::span<const std::size_t> index) const {
    return data_[linear_index(index)];
  }
  double& at(std::span<const std::size_t> index) {
    return data_[linear_index(index)];
  }

  Eigen::Map<const Eigen::MatrixXd> unfold_view(std::size_t k) const;
  Eigen::Map<Eigen::MatrixXd> unfold_view(std::size_t k);

  /// Same buffer under new extents with an equal element count.
  DenseTensor reshaped(Dims dims) const;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  Dims dims_;
  std::vector<double> data_;
};

/// Marks the observed entries (the index set Omega) of a tensor.
class ObservationMask {
 public:
  ObservationMask() : ObservationMask(Dims{1}) {}
  explicit ObservationMask(Dims dims, bool known = false);
  ObservationMask(Dims dims, std::vector<std::uint8_t> known);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return known_.size(); }

  bool known(std::size_t linear) const { return known_[linear] != 0; }
  void set_known(std::size_t linear, bool value) { known_[linear] = value ? 1 : 0; }

  std::span<const std::uint8_t> bytes() const noexcept { return known_; }

  /// Mode-k matricization of the mask, sharing the buffer.
  Eigen::Map<const KnownMatrix> unfold_view(std::size_t k) const;

  std::size_t known_count() const;
  double known_fraction() const;

  ObservationMask reshaped(Dims dims) const;

  friend bool operator==(const ObservationMask&, const ObservationMask&) = default;

 private:
  Dims dims_;
  std::vector<std::uint8_t> known_;
};

/// Mode-k canonical matricization X_<k> together with the extents it came
/// from, so it can be folded back.
struct ModeMatrix {
  std::size_t mode = 1;
  Dims parent_dims;
  Eigen::MatrixXd entries;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

ModeMatrix matricize(const DenseTensor& t, std::size_t k);
DenseTensor fold_matricize(const ModeMatrix& m);

DenseTensor hadamard(const DenseTensor& a, const DenseTensor& b);
ModeMatrix hadamard(const ModeMatrix& a, const ModeMatrix& b);

double frobenius_norm(const DenseTensor& t);

/// Marks exactly round(missing_rate * total) entries missing, chosen
/// uniformly at random from `seed`.
ObservationMask sample_mask(const Dims& dims, double missing_rate, std::uint64_t seed);

/// Copy of `t` with every unobserved entry set to zero.
DenseTensor observed_part(const DenseTensor& t, const ObservationMask& mask);

void require_same_dims(const Dims& a, const Dims& b, const char* what);

}  // namespace ttc
