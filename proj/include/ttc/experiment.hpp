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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ttc/augment.hpp"
#include "ttc/completion.hpp"
#include "ttc/metrics.hpp"

namespace ttc {

enum class InputKind { kAuto, kPgm, kPpm, kDt1 };

/// Everything one `complete` run needs. Keys accepted by `apply_setting`
/// match the CLI flag names without the leading dashes.
struct ExperimentConfig {
  std::string input;
  InputKind kind = InputKind::kAuto;
  std::string mask_path;  // DM1; sampled from missing_rate/seed when empty
  bool no_truth = false;  // input is genuinely incomplete, skip metrics
  std::string dataset;    // label for the metrics row; defaults to the input stem
  double missing_rate = 0.5;
  std::uint64_t seed = 0;
  AugmentKind augment = AugmentKind::kOka;
  Dims reshape_dims;
  CompletionConfig completion;

  std::string estimate_path;
  std::string metrics_csv;
  std::string trace_csv;
  std::string diagnostics_csv;
  std::string mode_errors_csv;
};

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);
std::vector<std::pair<std::string, std::string>> load_config_file(const std::string& path);

struct ExperimentOutcome {
  std::optional<MetricsReport> metrics;
  Dims input_dims;
  Dims augmented_dims;
  std::size_t iterations = 0;
  bool converged = false;
  double seconds = 0.0;
};

/// Label used in the scheme column, e.g. "twmac-tt+oka".
std::string method_label(Scheme scheme, AugmentKind augment);

DenseTensor load_input(const std::string& path, InputKind kind);

ExperimentOutcome run_experiment(const ExperimentConfig& config);

inline constexpr std::string_view kMetricsHeader =
    "dataset,missing_rate,scheme,rse,psnr,ssim,iters,seconds";

struct MetricsRow {
  std::string dataset;
  double missing_rate = 0.0;
  std::string scheme;
  MetricsReport metrics;
  std::size_t iterations = 0;
  double seconds = 0.0;
};

void write_metrics_row(std::ostream& os, const MetricsRow& row);

struct SynthBenchConfig {
  std::size_t order = 4;
  std::size_t extent = 20;
  std::size_t rank = 5;
  std::vector<double> missing_rates{0.5};
  std::vector<Scheme> schemes{Scheme::kModeWeighted, Scheme::kElementWeighted};
  std::uint64_t seed = 0;
  /// Ranks default to the generating rank when left empty.
  CompletionConfig completion;
};

/// Generates one synthetic tensor (rescaled to unit value range, the scale
/// the default c and gamma assume) and completes it for every rate x scheme
/// pair; writes a header plus one metrics row per run.
std::vector<MetricsRow> run_synth_bench(const SynthBenchConfig& config, std::ostream& csv);

std::vector<double> parse_double_list(std::string_view text);
std::vector<std::size_t> parse_size_list(std::string_view text);

}  // namespace ttc
