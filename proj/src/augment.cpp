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

#include "ttc/augment.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "ttc/error.hpp"

namespace ttc {
namespace {

std::size_t halve_with_overlap(std::size_t extent) {
  return extent % 2 == 1 ? (extent + 1) / 2 + 1 : extent / 2 + 1;
}

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

Dims compute_output_dims(const AugmentationPlan& plan) {
  Dims dims;
  const auto& last = plan.sizes.back();
  if (plan.merge_frontal) {
    dims.push_back(last.rows * last.cols);
  } else {
    dims.push_back(last.rows);
    dims.push_back(last.cols);
  }
  dims.insert(dims.end(), plan.levels, 4);
  if (plan.channel_extent) dims.push_back(*plan.channel_extent);
  return dims;
}

Dims input_dims_of(const AugmentationPlan& plan) {
  Dims dims{plan.sizes.front().rows, plan.sizes.front().cols};
  if (plan.channel_extent) dims.push_back(*plan.channel_extent);
  return dims;
}

void check_input(const Dims& dims, const AugmentationPlan& plan) {
  if (dims != input_dims_of(plan)) {
    fail(ErrorCode::kInvalidArgument, "tensor dims do not match the augmentation plan input");
  }
}

void check_augmented(const Dims& dims, const AugmentationPlan& plan) {
  if (dims != plan.output_dims) {
    fail(ErrorCode::kInvalidArgument, "augmented dims do not match the augmentation plan output");
  }
}

std::size_t smallest_prime_factor(std::size_t n) {
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return p;
  }
  return n;
}

Dims split_extent(std::size_t extent) {
  std::vector<std::size_t> primes;
  for (std::size_t n = extent; n > 1;) {
    const auto p = smallest_prime_factor(n);
    primes.push_back(p);
    n /= p;
  }
  if (primes.empty()) return {extent};
  // Greedily merge ascending primes until each factor reaches at least 4.
  Dims factors;
  std::size_t acc = 1;
  for (auto p : primes) {
    acc *= p;
    if (acc >= 4) {
      factors.push_back(acc);
      acc = 1;
    }
  }
  if (acc > 1) {
    if (factors.empty()) {
      factors.push_back(acc);
    } else {
      factors.back() *= acc;
    }
  }
  return factors;
}

}  // namespace

std::size_t AugmentationPlan::overlap_rows(std::size_t level) const {
  return 2 * sizes.at(level).rows - sizes.at(level - 1).rows;
}

std::size_t AugmentationPlan::overlap_cols(std::size_t level) const {
  return 2 * sizes.at(level).cols - sizes.at(level - 1).cols;
}

AugmentationPlan plan_from_sizes(std::vector<BlockShape> sizes,
                                 std::optional<std::size_t> channels, bool merge_frontal) {
  if (sizes.empty()) fail(ErrorCode::kInvalidArgument, "size trace is empty");
  if (channels && *channels == 0) fail(ErrorCode::kInvalidArgument, "channel extent must be positive");
  AugmentationPlan plan;
  plan.levels = sizes.size() - 1;
  for (std::size_t t = 1; t < sizes.size(); ++t) {
    const auto& prev = sizes[t - 1];
    const auto& next = sizes[t];
    if (next.rows == 0 || next.cols == 0 || next.rows > prev.rows || next.cols > prev.cols ||
        2 * next.rows < prev.rows || 2 * next.cols < prev.cols) {
      fail(ErrorCode::kInvalidArgument, "size trace level " + std::to_string(t) +
                                            " does not tile its parent block");
    }
    plan.starts.push_back({prev.rows - next.rows + 1, prev.cols - next.cols + 1});
  }
  if (sizes.front().rows == 0 || sizes.front().cols == 0) {
    fail(ErrorCode::kInvalidArgument, "input extents must be positive");
  }
  plan.sizes = std::move(sizes);
  plan.channel_extent = channels;
  plan.merge_frontal = merge_frontal;
  plan.output_dims = compute_output_dims(plan);
  return plan;
}

AugmentationPlan plan_oka(std::size_t rows, std::size_t cols, std::optional<std::size_t> channels) {
  if (rows < 2 || cols < 2) fail(ErrorCode::kInvalidArgument, "OKA needs at least a 2x2 frontal slice");
  std::vector<BlockShape> sizes{{rows, cols}};
  while (rows > 4 && cols > 4) {
    rows = halve_with_overlap(rows);
    cols = halve_with_overlap(cols);
    sizes.push_back({rows, cols});
  }
  return plan_from_sizes(std::move(sizes), channels, false);
}

AugmentationPlan plan_ka(std::size_t rows, std::size_t cols, std::optional<std::size_t> channels) {
  if (rows != cols || rows < 2 || !is_power_of_two(rows)) {
    fail(ErrorCode::kUnsupportedShape,
         "KA failed to increase the order: it needs a 2^n x 2^n frontal slice, got " + std::to_string(rows) + "x" +
             std::to_string(cols) + "; use OKA, which handles arbitrary extents");
  }
  std::vector<BlockShape> sizes{{rows, cols}};
  while (rows > 2) {
    rows /= 2;
    cols /= 2;
    sizes.push_back({rows, cols});
  }
  return plan_from_sizes(std::move(sizes), channels, true);
}

std::vector<std::size_t> source_index_map(const AugmentationPlan& plan) {
  const auto& frontal = plan.sizes.back();
  const std::size_t in_rows = plan.sizes.front().rows;
  const std::size_t in_cols = plan.sizes.front().cols;
  const std::size_t channels = plan.channel_extent.value_or(1);
  const std::size_t levels = plan.levels;

  // Output modes: frontal rows, frontal cols, level 1 .. level L, channel.
  std::vector<std::size_t> row_offset(levels), col_offset(levels);
  for (std::size_t t = 0; t < levels; ++t) {
    row_offset[t] = plan.starts[t].row - 1;
    col_offset[t] = plan.starts[t].col - 1;
  }

  std::size_t quadrant_count = 1;
  for (std::size_t t = 0; t < levels; ++t) quadrant_count *= 4;

  std::vector<std::size_t> map;
  map.reserve(frontal.rows * frontal.cols * quadrant_count * channels);
  std::vector<std::size_t> quadrant(levels, 0);
  for (std::size_t ch = 0; ch < channels; ++ch) {
    std::fill(quadrant.begin(), quadrant.end(), 0);
    for (std::size_t q = 0; q < quadrant_count; ++q) {
      std::size_t base_row = 0;
      std::size_t base_col = 0;
      for (std::size_t t = 0; t < levels; ++t) {
        base_row += (quadrant[t] / 2) * row_offset[t];
        base_col += (quadrant[t] % 2) * col_offset[t];
      }
      for (std::size_t c = 0; c < frontal.cols; ++c) {
        for (std::size_t r = 0; r < frontal.rows; ++r) {
          map.push_back((base_row + r) + in_rows * ((base_col + c) + in_cols * ch));
        }
      }
      // Odometer over level indices, first level fastest.
      for (std::size_t t = 0; t < levels; ++t) {
        if (++quadrant[t] < 4) break;
        quadrant[t] = 0;
      }
    }
  }
  return map;
}

DenseTensor apply_oka(const DenseTensor& t, const AugmentationPlan& plan) {
  check_input(t.dims(), plan);
  const auto map = source_index_map(plan);
  std::vector<double> out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = t[map[i]];
  return DenseTensor(plan.output_dims, std::move(out));
}

DenseTensor invert_oka(const DenseTensor& aug, const AugmentationPlan& plan) {
  check_augmented(aug.dims(), plan);
  const auto map = source_index_map(plan);
  DenseTensor out(input_dims_of(plan));
  std::vector<std::size_t> copies(out.size(), 0);
  // Running mean: exact whenever all copies of a position agree.
  for (std::size_t i = 0; i < map.size(); ++i) {
    const auto s = map[i];
    const auto n = ++copies[s];
    out[s] += (aug[i] - out[s]) / static_cast<double>(n);
  }
  return out;
}

ObservationMask augment_mask(const ObservationMask& mask, const AugmentationPlan& plan) {
  check_input(mask.dims(), plan);
  const auto map = source_index_map(plan);
  std::vector<std::uint8_t> out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = mask.bytes()[map[i]];
  return ObservationMask(plan.output_dims, std::move(out));
}

namespace {

std::optional<std::size_t> channel_of(const Dims& dims) {
  if (dims.size() == 3) return dims[2];
  if (dims.size() == 2) return std::nullopt;
  fail(ErrorCode::kUnsupportedShape, "augmentation expects an order-2 or order-3 tensor");
}

}  // namespace

DenseTensor apply_ka(const DenseTensor& t) {
  const auto channels = channel_of(t.dims());
  return apply_oka(t, plan_ka(t.dims()[0], t.dims()[1], channels));
}

DenseTensor invert_ka(const DenseTensor& aug, const Dims& original_dims) {
  const auto channels = channel_of(original_dims);
  return invert_oka(aug, plan_ka(original_dims[0], original_dims[1], channels));
}

DenseTensor apply_reshape(const DenseTensor& t, const Dims& target_dims) {
  return t.reshaped(target_dims);
}

DenseTensor invert_reshape(const DenseTensor& aug, const Dims& original_dims) {
  return aug.reshaped(original_dims);
}

Dims default_reshape_dims(const Dims& dims) {
  const auto channels = channel_of(dims);
  Dims out = split_extent(dims[0]);
  const auto cols = split_extent(dims[1]);
  out.insert(out.end(), cols.begin(), cols.end());
  if (channels) out.push_back(*channels);
  return out;
}

std::string_view augment_kind_name(AugmentKind kind) {
  switch (kind) {
    case AugmentKind::kNone: return "none";
    case AugmentKind::kReshape: return "reshape";
    case AugmentKind::kKa: return "ka";
    case AugmentKind::kOka: return "oka";
  }
  return "none";
}

AugmentKind parse_augment_kind(std::string_view name) {
  if (name == "none") return AugmentKind::kNone;
  if (name == "reshape") return AugmentKind::kReshape;
  if (name == "ka") return AugmentKind::kKa;
  if (name == "oka") return AugmentKind::kOka;
  fail(ErrorCode::kInvalidArgument, "unknown augmentation '" + std::string(name) + "'");
}

Augmentation::Augmentation(AugmentKind kind, const Dims& input_dims, Dims reshape_dims)
    : kind_(kind), input_dims_(input_dims) {
  switch (kind_) {
    case AugmentKind::kNone:
      output_dims_ = input_dims_;
      break;
    case AugmentKind::kReshape:
      output_dims_ = reshape_dims.empty() ? default_reshape_dims(input_dims_) : std::move(reshape_dims);
      if (element_count(output_dims_) != element_count(input_dims_)) {
        fail(ErrorCode::kInvalidArgument, "reshape target does not preserve the element count");
      }
      break;
    case AugmentKind::kKa:
      plan_ = plan_ka(input_dims_.at(0), input_dims_.at(1), channel_of(input_dims_));
      output_dims_ = plan_->output_dims;
      break;
    case AugmentKind::kOka:
      plan_ = plan_oka(input_dims_.at(0), input_dims_.at(1), channel_of(input_dims_));
      output_dims_ = plan_->output_dims;
      break;
  }
}

DenseTensor Augmentation::forward(const DenseTensor& t) const {
  require_same_dims(t.dims(), input_dims_, "augmentation input");
  if (plan_) return apply_oka(t, *plan_);
  return t.reshaped(output_dims_);
}

ObservationMask Augmentation::forward(const ObservationMask& m) const {
  require_same_dims(m.dims(), input_dims_, "augmentation mask");
  if (plan_) return augment_mask(m, *plan_);
  return m.reshaped(output_dims_);
}

DenseTensor Augmentation::inverse(const DenseTensor& aug) const {
  require_same_dims(aug.dims(), output_dims_, "augmentation inverse");
  if (plan_) return invert_oka(aug, *plan_);
  return aug.reshaped(input_dims_);
}

AugmentedPair augment_pair(const DenseTensor& t, const ObservationMask& mask,
                           const Augmentation& augmentation) {
  return {augmentation.forward(t), augmentation.forward(mask)};
}

std::string format_plan(const AugmentationPlan& plan) {
  std::ostringstream os;
  os << "levels        " << plan.levels << '\n';
  os << "channel       ";
  if (plan.channel_extent) {
    os << *plan.channel_extent;
  } else {
    os << '-';
  }
  os << "\n\n";
  os << std::setw(6) << "level" << std::setw(8) << "rows" << std::setw(8) << "cols"
     << std::setw(9) << "x_start" << std::setw(9) << "y_start" << std::setw(7) << "ov_x"
     << std::setw(7) << "ov_y" << '\n';
  for (std::size_t t = 0; t <= plan.levels; ++t) {
    os << std::setw(6) << t << std::setw(8) << plan.sizes[t].rows << std::setw(8)
       << plan.sizes[t].cols;
    if (t == 0) {
      os << std::setw(9) << '-' << std::setw(9) << '-' << std::setw(7) << '-' << std::setw(7) << '-';
    } else {
      os << std::setw(9) << plan.starts[t - 1].row << std::setw(9) << plan.starts[t - 1].col
         << std::setw(7) << plan.overlap_rows(t) << std::setw(7) << plan.overlap_cols(t);
    }
    os << '\n';
  }
  os << "\noutput dims   (";
  for (std::size_t i = 0; i < plan.output_dims.size(); ++i) {
    os << (i ? "," : "") << plan.output_dims[i];
  }
  os << ")  order " << plan.output_dims.size() << '\n';
  return os.str();
}

}  // namespace ttc
