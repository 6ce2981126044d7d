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
#include <vector>

#include <Eigen/Dense>

#include "ttc/tensor.hpp"

namespace ttc {

struct SyntheticSpec {
  std::size_t order = 4;
  std::size_t extent = 20;
  std::size_t rank = 5;
  std::uint64_t seed = 0;
};

/// Standard-normal factors U_1..U_N, each extent x rank.
std::vector<Eigen::MatrixXd> synthetic_factors(const SyntheticSpec& spec);

/// T(i_1..i_N) = sum_a U_1(i_1,a) ... U_N(i_N,a).
DenseTensor tensor_from_factors(const std::vector<Eigen::MatrixXd>& factors);

DenseTensor gen_synthetic(const SyntheticSpec& spec);

/// Divides by (max - min) so the values span an interval of length 1. No
/// shift is applied, which keeps the multilinear rank unchanged.
DenseTensor scale_to_unit_range(DenseTensor t);

}  // namespace ttc
