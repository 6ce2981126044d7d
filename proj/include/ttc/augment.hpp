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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttc/tensor.hpp"

namespace ttc {

struct BlockShape {
  std::size_t rows = 0;
  std::size_t cols = 0;
  friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

/// 1-based origin of the far quadrant at one division level.
struct BlockOrigin {
  std::size_t row = 1;
  std::size_t col = 1;
  friend bool operator==(const BlockOrigin&, const BlockOrigin&) = default;
};

/// Division schedule for (overlapping) ket augmentation.
///
/// Level t (1-based) cuts the current frontal block of shape sizes[t-1] into
/// four sub-blocks of shape sizes[t] with origins (1,1), (1,y), (x,1), (x,y)
/// where (x,y) = starts[t-1]. Quadrants are numbered 0..3 in that
/// (row-major) order.
struct AugmentationPlan {
  std::size_t levels = 0;
  std::vector<BlockOrigin> starts;  // one per level
  std::vector<BlockShape> sizes;    // levels + 1 entries, sizes[0] is the input
  std::optional<std::size_t> channel_extent;
  /// KA collapses its final 2x2 frontal block into a single mode of extent 4.
  bool merge_frontal = false;
  Dims output_dims;

  std::size_t overlap_rows(std::size_t level) const;
  std::size_t overlap_cols(std::size_t level) const;
};

/// Overlapping schedule: halve each extent keeping an overlap of 2 rows
/// (even extent) or 3 rows (odd extent) while both extents exceed 4.
AugmentationPlan plan_oka(std::size_t rows, std::size_t cols,
                          std::optional<std::size_t> channels = std::nullopt);

/// Non-overlapping 2x2 recursive schedule; both extents must be the same
/// power of two.
AugmentationPlan plan_ka(std::size_t rows, std::size_t cols,
                         std::optional<std::size_t> channels = std::nullopt);

/// Plan with an explicit size trace (sizes[0] is the input). Every level must
/// satisfy prev/2 <= next <= prev so the two quadrants cover the block.
AugmentationPlan plan_from_sizes(std::vector<BlockShape> sizes,
                                 std::optional<std::size_t> channels = std::nullopt,
                                 bool merge_frontal = false);

DenseTensor apply_oka(const DenseTensor& t, const AugmentationPlan& plan);
/// Each original position receives the mean of all its augmented copies.
DenseTensor invert_oka(const DenseTensor& aug, const AugmentationPlan& plan);
ObservationMask augment_mask(const ObservationMask& mask, const AugmentationPlan& plan);

/// For every augmented entry, the linear index of its source position.
std::vector<std::size_t> source_index_map(const AugmentationPlan& plan);

DenseTensor apply_ka(const DenseTensor& t);
DenseTensor invert_ka(const DenseTensor& aug, const Dims& original_dims);

DenseTensor apply_reshape(const DenseTensor& t, const Dims& target_dims);
DenseTensor invert_reshape(const DenseTensor& aug, const Dims& original_dims);

/// Splits each spatial extent into small factors (primes merged up to >= 4);
/// a trailing channel mode is kept as is.
Dims default_reshape_dims(const Dims& dims);

enum class AugmentKind { kNone, kReshape, kKa, kOka };

std::string_view augment_kind_name(AugmentKind kind);
AugmentKind parse_augment_kind(std::string_view name);

/// A chosen augmentation bound to the input extents it was built for.
class Augmentation {
 public:
  /// `reshape_dims` is only consulted for kReshape; empty picks
  /// default_reshape_dims.
  Augmentation(AugmentKind kind, const Dims& input_dims, Dims reshape_dims = {});

  AugmentKind kind() const noexcept { return kind_; }
  const Dims& input_dims() const noexcept { return input_dims_; }
  const Dims& output_dims() const noexcept { return output_dims_; }
  const std::optional<AugmentationPlan>& plan() const noexcept { return plan_; }

  DenseTensor forward(const DenseTensor& t) const;
  ObservationMask forward(const ObservationMask& m) const;
  DenseTensor inverse(const DenseTensor& aug) const;

 private:
  AugmentKind kind_;
  Dims input_dims_;
  Dims output_dims_;
  std::optional<AugmentationPlan> plan_;
};

struct AugmentedPair {
  DenseTensor tensor;
  ObservationMask mask;
};

AugmentedPair augment_pair(const DenseTensor& t, const ObservationMask& mask,
                           const Augmentation& augmentation);

std::string format_plan(const AugmentationPlan& plan);

}  // namespace ttc
