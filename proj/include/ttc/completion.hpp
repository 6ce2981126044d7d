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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ttc/augment.hpp"
#include "ttc/tensor.hpp"

namespace ttc {

enum class Scheme {
  kModeWeighted,     // TMac-TT: mask weights, folds averaged with balance weights
  kElementWeighted,  // TWMac-TT: adaptive element-wise weights and fold
};

std::string_view scheme_name(Scheme scheme);
/// Accepts "tmac-tt"/"mode-weighted" and "twmac-tt"/"element-weighted".
Scheme parse_scheme(std::string_view name);

struct CompletionConfig {
  /// Per-mode ranks r_1..r_{N-1}. Empty means min(m_k, n_k, max_rank); a
  /// single value is broadcast and capped at min(m_k, n_k).
  std::vector<std::size_t> ranks;
  std::size_t max_rank = 20;
  double lambda_u = 1e-3;
  double lambda_v = 1e-3;
  double c = 1.0;
  double gamma = 10.0;
  double threshold = 1e-4;
  std::size_t max_iters = 300;
  Scheme scheme = Scheme::kElementWeighted;
  std::uint64_t seed = 0;
  /// Record the per-mode objective around each V and U update.
  bool record_descent = false;
};

/// Objective of one mode before and after its V and U updates, all at the
/// same weights and the same tensor iterate.
struct DescentRecord {
  std::size_t iteration = 0;
  std::size_t mode = 0;
  double before = 0.0;
  double after_v = 0.0;
  double after_u = 0.0;
};

struct CompletionResult {
  DenseTensor estimate;
  std::size_t iterations = 0;
  bool converged = false;
  /// Sum over modes of |W_k .* (U_k V_k^T - X_<k>)|^2 + ridge terms, one
  /// entry per iteration, evaluated after the factor updates.
  std::vector<double> objective_trace;
  std::vector<double> change_trace;
  /// Element-weighted scheme only: W_k per mode after the last iteration.
  std::vector<Eigen::MatrixXd> final_weights;
  std::vector<std::size_t> ranks;
  std::vector<DescentRecord> descent_trace;
};

/// State exposed to an observer after every outer iteration. Matrices are in
/// mode-k layout; approximations[k-1] is U_k V_k^T.
struct IterationSnapshot {
  std::size_t iteration = 0;
  const DenseTensor& estimate;
  std::span<const Eigen::MatrixXd> approximations;
  std::span<const Eigen::MatrixXd> weights;
  double objective = 0.0;
  double relative_change = 0.0;
};

using IterationObserver = std::function<void(const IterationSnapshot&)>;

/// Which weights drive the factor updates, and how per-mode estimates are
/// folded back into one tensor.
struct BcdPolicy {
  enum class Weights { kMask, kAdaptive } weights = Weights::kAdaptive;
  enum class Fold { kBalance, kElementWise } fold = Fold::kElementWise;
};

BcdPolicy policy_for(Scheme scheme);

/// alpha_k = min(m_k, n_k) / sum_j min(m_j, n_j), k = 1..N-1.
std::vector<double> balance_weights(const Dims& dims);

std::vector<std::size_t> resolve_ranks(const Dims& dims, const CompletionConfig& config);

/// Element-wise weighted fold: at missing entries the weighted mean
/// sum_k W_k U_kV_k^T / sum_k W_k of the folded mode estimates, at known
/// entries the observed value.
DenseTensor aggregate_fold(const std::vector<ModeMatrix>& approximations,
                           const std::vector<ModeMatrix>& weights, const ObservationMask& mask,
                           const DenseTensor& observed);

/// Block coordinate descent shared by both schemes.
CompletionResult run_bcd(const DenseTensor& observed, const ObservationMask& mask,
                         const CompletionConfig& config, const BcdPolicy& policy,
                         const IterationObserver& observer = {});

CompletionResult tmac_tt(const DenseTensor& observed, const ObservationMask& mask,
                         const CompletionConfig& config, const IterationObserver& observer = {});
CompletionResult twmac_tt(const DenseTensor& observed, const ObservationMask& mask,
                          const CompletionConfig& config, const IterationObserver& observer = {});
/// Dispatches on config.scheme.
CompletionResult complete(const DenseTensor& observed, const ObservationMask& mask,
                          const CompletionConfig& config, const IterationObserver& observer = {});

struct PipelineResult {
  DenseTensor estimate;
  Dims augmented_dims;
  CompletionResult inner;
};

/// Augment, complete, invert the augmentation, then restore the observed
/// entries in the original space. Unobserved values of `input` are ignored.
PipelineResult complete_pipeline(const DenseTensor& input, const ObservationMask& mask,
                                 const Augmentation& augmentation, const CompletionConfig& config,
                                 const IterationObserver& observer = {});
PipelineResult complete_pipeline(const DenseTensor& input, const ObservationMask& mask,
                                 AugmentKind augmentation, const CompletionConfig& config,
                                 const IterationObserver& observer = {});

}  // namespace ttc
