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

#include "ttc/synth.hpp"

#include <algorithm>
#include <random>

#include "ttc/error.hpp"

namespace ttc {

std::vector<Eigen::MatrixXd> synthetic_factors(const SyntheticSpec& spec) {
  if (spec.order < 3) fail(ErrorCode::kInvalidArgument, "synthetic tensors need order >= 3");
  if (spec.rank < 1 || spec.rank > spec.extent) {
    fail(ErrorCode::kInvalidArgument, "synthetic rank must lie in [1, extent]");
  }
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::MatrixXd> factors;
  for (std::size_t m = 0; m < spec.order; ++m) {
    Eigen::MatrixXd u(spec.extent, spec.rank);
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      for (Eigen::Index i = 0; i < u.rows(); ++i) u(i, j) = normal(rng);
    }
    factors.push_back(std::move(u));
  }
  return factors;
}

DenseTensor tensor_from_factors(const std::vector<Eigen::MatrixXd>& factors) {
  if (factors.empty()) fail(ErrorCode::kInvalidArgument, "no factors");
  const auto rank = factors.front().cols();
  Dims dims;
  for (const auto& f : factors) {
    if (f.cols() != rank) fail(ErrorCode::kInvalidArgument, "factor ranks disagree");
    dims.push_back(static_cast<std::size_t>(f.rows()));
  }
  DenseTensor t(dims);
  // Build mode by mode: after processing modes 1..m the partial products
  // for every (i_1..i_m, a) are held in `partial` (prefix-size x rank).
  Eigen::MatrixXd partial = factors.front();
  for (std::size_t m = 1; m < factors.size(); ++m) {
    const auto& f = factors[m];
    Eigen::MatrixXd next(partial.rows() * f.rows(), rank);
    for (Eigen::Index a = 0; a < rank; ++a) {
      for (Eigen::Index i = 0; i < f.rows(); ++i) {
        next.col(a).segment(i * partial.rows(), partial.rows()) = partial.col(a) * f(i, a);
      }
    }
    partial = std::move(next);
  }
  const Eigen::VectorXd sum = partial.rowwise().sum();
  std::copy(sum.data(), sum.data() + sum.size(), t.data().begin());
  return t;
}

DenseTensor gen_synthetic(const SyntheticSpec& spec) {
  return tensor_from_factors(synthetic_factors(spec));
}

DenseTensor scale_to_unit_range(DenseTensor t) {
  const auto [lo, hi] = std::minmax_element(t.data().begin(), t.data().end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) fail(ErrorCode::kInvalidArgument, "cannot rescale a constant tensor");
  for (double& v : t.data()) v /= range;
  return t;
}

}  // namespace ttc
