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
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ttc/tensor.hpp"

namespace ttc {

struct MetricsReport {
  double rse = 0.0;
  double psnr = 0.0;
  double ssim = 0.0;
};

inline constexpr double kPsnrCap = 100.0;

/// |estimate - truth|_F / |truth|_F.
double rse(const DenseTensor& estimate, const DenseTensor& truth);

/// 10 log10(peak^2 / MSE), capped at kPsnrCap (identical inputs).
double psnr(const DenseTensor& estimate, const DenseTensor& truth, double peak = 1.0);

/// Mean SSIM over all 8x8 windows (clipped to the image size) of every
/// frontal slice; modes beyond the first two are treated as slices.
/// K1 = 0.01, K2 = 0.03, dynamic range 1.
double ssim(const DenseTensor& estimate, const DenseTensor& truth);

MetricsReport evaluate(const DenseTensor& estimate, const DenseTensor& truth);

/// |T_<k> - X_k| for each supplied mode estimate. With a mask, entries at
/// known positions are zeroed so only missing entries remain.
std::vector<Eigen::MatrixXd> per_mode_abs_error(const DenseTensor& truth,
                                                const std::vector<ModeMatrix>& estimates,
                                                const ObservationMask* missing_only = nullptr);

/// Spearman rank correlation with midranks for ties; 0 when either side is
/// constant.
double weight_error_correlation(std::span<const double> weights, std::span<const double> errors);

/// `count` distinct missing positions drawn uniformly (fewer if the mask has
/// fewer missing entries), in draw order.
std::vector<std::size_t> sample_missing_entries(const ObservationMask& mask, std::size_t count,
                                                std::uint64_t seed);

}  // namespace ttc
