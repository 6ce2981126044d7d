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

#include "ttc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ttc/error.hpp"

namespace ttc {
namespace {

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

double window_ssim(const double* a, const double* b, std::size_t rows, std::size_t r0,
                   std::size_t c0, std::size_t wr, std::size_t wc) {
  constexpr double kC1 = 0.01 * 0.01;
  constexpr double kC2 = 0.03 * 0.03;
  double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t c = c0; c < c0 + wc; ++c) {
    for (std::size_t r = r0; r < r0 + wr; ++r) {
      const double x = a[r + rows * c];
      const double y = b[r + rows * c];
      sa += x;
      sb += y;
      saa += x * x;
      sbb += y * y;
      sab += x * y;
    }
  }
  const double n = static_cast<double>(wr * wc);
  const double mu_a = sa / n;
  const double mu_b = sb / n;
  const double var_a = std::max(0.0, saa / n - mu_a * mu_a);
  const double var_b = std::max(0.0, sbb / n - mu_b * mu_b);
  const double cov = sab / n - mu_a * mu_b;
  return ((2 * mu_a * mu_b + kC1) * (2 * cov + kC2)) /
         ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
}

}  // namespace

double rse(const DenseTensor& estimate, const DenseTensor& truth) {
  require_same_dims(estimate.dims(), truth.dims(), "rse");
  double diff = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = estimate[i] - truth[i];
    diff += d * d;
  }
  const double base = frobenius_norm(truth);
  if (base == 0.0) fail(ErrorCode::kInvalidArgument, "rse: reference tensor is zero");
  return std::sqrt(diff) / base;
}

double psnr(const DenseTensor& estimate, const DenseTensor& truth, double peak) {
  require_same_dims(estimate.dims(), truth.dims(), "psnr");
  double mse = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = estimate[i] - truth[i];
    mse += d * d;
  }
  mse /= static_cast<double>(truth.size());
  if (mse == 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(peak * peak / mse));
}

double ssim(const DenseTensor& estimate, const DenseTensor& truth) {
  require_same_dims(estimate.dims(), truth.dims(), "ssim");
  const auto& dims = truth.dims();
  const std::size_t rows = dims[0];
  const std::size_t cols = dims.size() > 1 ? dims[1] : 1;
  const std::size_t slices = truth.size() / (rows * cols);
  const std::size_t wr = std::min<std::size_t>(8, rows);
  const std::size_t wc = std::min<std::size_t>(8, cols);
  double total = 0.0;
  std::size_t windows = 0;
  for (std::size_t s = 0; s < slices; ++s) {
    const double* a = estimate.data().data() + s * rows * cols;
    const double* b = truth.data().data() + s * rows * cols;
    for (std::size_t c0 = 0; c0 + wc <= cols; ++c0) {
      for (std::size_t r0 = 0; r0 + wr <= rows; ++r0) {
        total += window_ssim(a, b, rows, r0, c0, wr, wc);
        ++windows;
      }
    }
  }
  return total / static_cast<double>(windows);
}

MetricsReport evaluate(const DenseTensor& estimate, const DenseTensor& truth) {
  return {rse(estimate, truth), psnr(estimate, truth), ssim(estimate, truth)};
}

std::vector<Eigen::MatrixXd> per_mode_abs_error(const DenseTensor& truth,
                                                const std::vector<ModeMatrix>& estimates,
                                                const ObservationMask* missing_only) {
  if (missing_only) require_same_dims(missing_only->dims(), truth.dims(), "per_mode_abs_error");
  std::vector<Eigen::MatrixXd> out;
  for (const auto& est : estimates) {
    require_same_dims(est.parent_dims, truth.dims(), "per_mode_abs_error");
    Eigen::MatrixXd delta = (truth.unfold_view(est.mode) - est.entries).cwiseAbs();
    if (missing_only) {
      const auto known = missing_only->unfold_view(est.mode);
      delta = (known.array() != 0).select(0.0, delta);
    }
    out.push_back(std::move(delta));
  }
  return out;
}

double weight_error_correlation(std::span<const double> weights, std::span<const double> errors) {
  if (weights.size() != errors.size() || weights.size() < 2) {
    fail(ErrorCode::kInvalidArgument, "correlation needs two equal-length samples of size >= 2");
  }
  const auto rw = midranks(weights);
  const auto re = midranks(errors);
  const double n = static_cast<double>(rw.size());
  const double mw = std::accumulate(rw.begin(), rw.end(), 0.0) / n;
  const double me = std::accumulate(re.begin(), re.end(), 0.0) / n;
  double sww = 0.0, see = 0.0, swe = 0.0;
  for (std::size_t i = 0; i < rw.size(); ++i) {
    sww += (rw[i] - mw) * (rw[i] - mw);
    see += (re[i] - me) * (re[i] - me);
    swe += (rw[i] - mw) * (re[i] - me);
  }
  if (sww == 0.0 || see == 0.0) return 0.0;
  return swe / std::sqrt(sww * see);
}

std::vector<std::size_t> sample_missing_entries(const ObservationMask& mask, std::size_t count,
                                                std::uint64_t seed) {
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask.known(i)) missing.push_back(i);
  }
  std::mt19937_64 rng(seed);
  const std::size_t take = std::min(count, missing.size());
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < take; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, missing.size() - 1);
    std::swap(missing[i], missing[pick(rng)]);
  }
  missing.resize(take);
  return missing;
}

}  // namespace ttc
