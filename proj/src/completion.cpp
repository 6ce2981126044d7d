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

#include "ttc/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ttc/error.hpp"
#include "ttc/wlrf.hpp"

namespace ttc {
namespace {

using Eigen::MatrixXd;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void validate_config(const CompletionConfig& config) {
  if (!(config.lambda_u >= 0.0) || !(config.lambda_v >= 0.0)) {
    fail(ErrorCode::kInvalidArgument, "lambda_u and lambda_v must be non-negative");
  }
  if (!(config.threshold > 0.0)) fail(ErrorCode::kInvalidArgument, "threshold must be positive");
  if (config.max_iters == 0) fail(ErrorCode::kInvalidArgument, "max_iters must be positive");
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  return scheme == Scheme::kModeWeighted ? "tmac-tt" : "twmac-tt";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "tmac-tt" || name == "mode-weighted") return Scheme::kModeWeighted;
  if (name == "twmac-tt" || name == "element-weighted") return Scheme::kElementWeighted;
  fail(ErrorCode::kInvalidArgument, "unknown scheme '" + std::string(name) + "'");
}

BcdPolicy policy_for(Scheme scheme) {
  if (scheme == Scheme::kModeWeighted) {
    return {BcdPolicy::Weights::kMask, BcdPolicy::Fold::kBalance};
  }
  return {BcdPolicy::Weights::kAdaptive, BcdPolicy::Fold::kElementWise};
}

std::vector<double> balance_weights(const Dims& dims) {
  if (dims.size() < 2) fail(ErrorCode::kInvalidArgument, "balance weights need order >= 2");
  std::vector<double> xi;
  for (std::size_t k = 1; k < dims.size(); ++k) {
    xi.push_back(static_cast<double>(std::min(mode_rows(dims, k), mode_cols(dims, k))));
  }
  const double total = std::accumulate(xi.begin(), xi.end(), 0.0);
  for (auto& v : xi) v /= total;
  return xi;
}

std::vector<std::size_t> resolve_ranks(const Dims& dims, const CompletionConfig& config) {
  if (dims.size() < 2) fail(ErrorCode::kInvalidArgument, "completion needs a tensor of order >= 2");
  const std::size_t modes = dims.size() - 1;
  std::vector<std::size_t> ranks(modes);
  if (config.ranks.size() > 1 && config.ranks.size() != modes) {
    fail(ErrorCode::kInvalidArgument, "expected " + std::to_string(modes) + " ranks, got " +
                                          std::to_string(config.ranks.size()));
  }
  for (std::size_t k = 1; k <= modes; ++k) {
    const std::size_t bound = std::min(mode_rows(dims, k), mode_cols(dims, k));
    std::size_t r = 0;
    if (config.ranks.empty()) {
      r = std::min(bound, config.max_rank);
    } else if (config.ranks.size() == 1) {
      r = std::min(bound, config.ranks.front());
    } else {
      r = config.ranks[k - 1];
      if (r > bound) {
        fail(ErrorCode::kInvalidArgument, "rank " + std::to_string(r) + " of mode " +
                                              std::to_string(k) + " exceeds min(m_k, n_k) = " +
                                              std::to_string(bound));
      }
    }
    if (r == 0) fail(ErrorCode::kInvalidArgument, "ranks must be positive");
    ranks[k - 1] = r;
  }
  return ranks;
}

namespace {

void fold_elementwise(std::span<const MatrixXd> approximations, std::span<const MatrixXd> weights,
                      const ObservationMask& mask, const DenseTensor& observed, DenseTensor& out) {
  const std::size_t total = observed.size();
  for (std::size_t i = 0; i < total; ++i) {
    if (mask.known(i)) {
      out[i] = observed[i];
      continue;
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < approximations.size(); ++k) {
      const double w = weights[k].data()[i];
      num += w * approximations[k].data()[i];
      den += w;
    }
    if (!(den > 0.0)) {
      fail(ErrorCode::kDegenerateWeights,
           "weights sum to zero at missing entry " + std::to_string(i));
    }
    out[i] = num / den;
  }
}

void fold_balanced(std::span<const MatrixXd> approximations, const std::vector<double>& alpha,
                   const ObservationMask& mask, const DenseTensor& observed, DenseTensor& out) {
  const std::size_t total = observed.size();
  for (std::size_t i = 0; i < total; ++i) {
    if (mask.known(i)) {
      out[i] = observed[i];
      continue;
    }
    double value = 0.0;
    for (std::size_t k = 0; k < approximations.size(); ++k) {
      value += alpha[k] * approximations[k].data()[i];
    }
    out[i] = value;
  }
}

double relative_change(const DenseTensor& next, const DenseTensor& prev) {
  double diff = 0.0;
  double base = 0.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    const double d = next[i] - prev[i];
    diff += d * d;
    base += prev[i] * prev[i];
  }
  if (base == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(diff / base);
}

}  // namespace

DenseTensor aggregate_fold(const std::vector<ModeMatrix>& approximations,
                           const std::vector<ModeMatrix>& weights, const ObservationMask& mask,
                           const DenseTensor& observed) {
  require_same_dims(mask.dims(), observed.dims(), "aggregate_fold mask");
  if (approximations.empty() || approximations.size() != weights.size()) {
    fail(ErrorCode::kInvalidArgument, "aggregate_fold needs one weight matrix per approximation");
  }
  std::vector<MatrixXd> approx;
  std::vector<MatrixXd> w;
  for (std::size_t k = 0; k < approximations.size(); ++k) {
    // Folding is a relabelling of the buffer, so validate shapes and reuse
    // the column-major storage directly.
    require_same_dims(fold_matricize(approximations[k]).dims(), observed.dims(), "aggregate_fold");
    require_same_dims(fold_matricize(weights[k]).dims(), observed.dims(), "aggregate_fold weights");
    approx.push_back(approximations[k].entries);
    w.push_back(weights[k].entries);
  }
  DenseTensor out(observed.dims());
  fold_elementwise(approx, w, mask, observed, out);
  return out;
}

CompletionResult run_bcd(const DenseTensor& observed, const ObservationMask& mask,
                         const CompletionConfig& config, const BcdPolicy& policy,
                         const IterationObserver& observer) {
  require_same_dims(observed.dims(), mask.dims(), "completion mask");
  validate_config(config);
  const bool adaptive = policy.weights == BcdPolicy::Weights::kAdaptive;
  if (adaptive && (!(config.c > 0.0) || !(config.gamma > 0.0))) {
    fail(ErrorCode::kInvalidArgument, "c and gamma must be positive");
  }
  const Dims& dims = observed.dims();
  CompletionResult result;
  result.ranks = resolve_ranks(dims, config);
  const std::size_t modes = result.ranks.size();
  const auto alpha = balance_weights(dims);

  DenseTensor x = observed_part(observed, mask);
  std::vector<FactorPair> factors;
  std::vector<MatrixXd> weights;
  std::vector<MatrixXd> approx(modes);
  for (std::size_t k = 1; k <= modes; ++k) {
    const auto m = static_cast<Eigen::Index>(mode_rows(dims, k));
    const auto n = static_cast<Eigen::Index>(mode_cols(dims, k));
    factors.push_back(init_factors(m, n, static_cast<Eigen::Index>(result.ranks[k - 1]),
                                   mix_seed(config.seed, k)));
    if (adaptive) {
      weights.emplace_back(MatrixXd::Ones(m, n));
    } else {
      weights.emplace_back(mask.unfold_view(k).cast<double>());
    }
  }

  DenseTensor next(dims);
  for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
    double objective = 0.0;
    for (std::size_t k = 1; k <= modes; ++k) {
      const auto xk = x.unfold_view(k);
      auto& f = factors[k - 1];
      auto& w = weights[k - 1];
      DescentRecord record{iter, k};
      if (config.record_descent) {
        record.before = weighted_objective(xk, f.u, f.v, w, config.lambda_u, config.lambda_v);
      }
      f.v = update_v(f.u, xk, w, config.lambda_v);
      if (config.record_descent) {
        record.after_v = weighted_objective(xk, f.u, f.v, w, config.lambda_u, config.lambda_v);
      }
      f.u = update_u(f.v, xk, w, config.lambda_u);
      approx[k - 1].noalias() = f.u * f.v.transpose();
      if (config.record_descent) {
        record.after_u = weighted_objective(xk, f.u, f.v, w, config.lambda_u, config.lambda_v);
        result.descent_trace.push_back(record);
      }
      balance_scales(f);
      const double mode_objective = w.cwiseProduct(xk - approx[k - 1]).squaredNorm() +
                                    config.lambda_u * f.u.squaredNorm() +
                                    config.lambda_v * f.v.squaredNorm();
      objective += mode_objective;
      if (adaptive) {
        w = update_weights(xk, approx[k - 1], config.c, config.gamma, mask.unfold_view(k));
      }
    }

    if (policy.fold == BcdPolicy::Fold::kElementWise) {
      fold_elementwise(approx, weights, mask, observed, next);
    } else {
      fold_balanced(approx, alpha, mask, observed, next);
    }
    const double change = relative_change(next, x);
    std::swap(x, next);
    result.iterations = iter;
    result.objective_trace.push_back(objective);
    result.change_trace.push_back(change);
    if (observer) observer(IterationSnapshot{iter, x, approx, weights, objective, change});
    if (change < config.threshold) {
      result.converged = true;
      break;
    }
  }
  result.estimate = std::move(x);
  if (adaptive) result.final_weights = std::move(weights);
  return result;
}

CompletionResult tmac_tt(const DenseTensor& observed, const ObservationMask& mask,
                         const CompletionConfig& config, const IterationObserver& observer) {
  if (config.scheme != Scheme::kModeWeighted) {
    fail(ErrorCode::kInvalidArgument, "tmac_tt requires the mode-weighted scheme");
  }
  return run_bcd(observed, mask, config, policy_for(Scheme::kModeWeighted), observer);
}

CompletionResult twmac_tt(const DenseTensor& observed, const ObservationMask& mask,
                          const CompletionConfig& config, const IterationObserver& observer) {
  if (config.scheme != Scheme::kElementWeighted) {
    fail(ErrorCode::kInvalidArgument, "twmac_tt requires the element-weighted scheme");
  }
  return run_bcd(observed, mask, config, policy_for(Scheme::kElementWeighted), observer);
}

CompletionResult complete(const DenseTensor& observed, const ObservationMask& mask,
                          const CompletionConfig& config, const IterationObserver& observer) {
  return config.scheme == Scheme::kModeWeighted ? tmac_tt(observed, mask, config, observer)
                                                : twmac_tt(observed, mask, config, observer);
}

PipelineResult complete_pipeline(const DenseTensor& input, const ObservationMask& mask,
                                 const Augmentation& augmentation, const CompletionConfig& config,
                                 const IterationObserver& observer) {
  require_same_dims(input.dims(), mask.dims(), "pipeline mask");
  const DenseTensor observed = observed_part(input, mask);
  const auto pair = augment_pair(observed, mask, augmentation);
  PipelineResult out{DenseTensor(input.dims()), pair.tensor.dims(),
                     complete(pair.tensor, pair.mask, config, observer)};
  out.estimate = augmentation.inverse(out.inner.estimate);
  for (std::size_t i = 0; i < out.estimate.size(); ++i) {
    if (mask.known(i)) out.estimate[i] = input[i];
  }
  return out;
}

PipelineResult complete_pipeline(const DenseTensor& input, const ObservationMask& mask,
                                 AugmentKind augmentation, const CompletionConfig& config,
                                 const IterationObserver& observer) {
  return complete_pipeline(input, mask, Augmentation(augmentation, input.dims()), config, observer);
}

}  // namespace ttc
