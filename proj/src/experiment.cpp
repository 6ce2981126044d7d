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

#include "ttc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "ttc/error.hpp"
#include "ttc/image_io.hpp"
#include "ttc/synth.hpp"
#include "ttc/tensor_io.hpp"

namespace ttc {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double parse_double(std::string_view key, std::string_view value) {
  const std::string s = trim(value);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    fail(ErrorCode::kInvalidArgument, std::string(key) + ": expected a number, got '" + s + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
  const std::string s = trim(value);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    fail(ErrorCode::kInvalidArgument, std::string(key) + ": expected a non-negative integer, got '" + s + "'");
  }
  return std::stoull(s);
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string s = trim(value);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  fail(ErrorCode::kInvalidArgument, std::string(key) + ": expected a boolean, got '" + s + "'");
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : text) {
    if (ch == ',' || ch == 'x' || ch == ' ') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item.push_back(ch);
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

InputKind parse_kind(std::string_view name) {
  if (name == "auto") return InputKind::kAuto;
  if (name == "pgm") return InputKind::kPgm;
  if (name == "ppm") return InputKind::kPpm;
  if (name == "dt1") return InputKind::kDt1;
  fail(ErrorCode::kInvalidArgument, "unknown input kind '" + std::string(name) + "'");
}

bool has_image_extension(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  return os;
}

std::size_t most_balanced_mode(const Dims& dims) {
  const auto alpha = balance_weights(dims);
  return static_cast<std::size_t>(std::max_element(alpha.begin(), alpha.end()) - alpha.begin()) + 1;
}

bool diagnostic_iteration(std::size_t iter) { return iter <= 10 || iter % 10 == 0; }

}  // namespace

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double("list", item));
  return out;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) out.push_back(parse_unsigned("list", item));
  return out;
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  auto& cc = config.completion;
  if (key == "input") {
    config.input = trim(value);
  } else if (key == "kind") {
    config.kind = parse_kind(trim(value));
  } else if (key == "mask") {
    config.mask_path = trim(value);
  } else if (key == "no-truth") {
    config.no_truth = parse_bool(key, value);
  } else if (key == "dataset") {
    config.dataset = trim(value);
  } else if (key == "missing-rate") {
    config.missing_rate = parse_double(key, value);
    if (!(config.missing_rate >= 0.0) || config.missing_rate >= 1.0) {
      fail(ErrorCode::kInvalidArgument, "missing-rate must lie in [0, 1)");
    }
  } else if (key == "seed") {
    config.seed = parse_unsigned(key, value);
  } else if (key == "augment") {
    config.augment = parse_augment_kind(trim(value));
  } else if (key == "reshape-dims") {
    config.reshape_dims = parse_size_list(value);
  } else if (key == "scheme") {
    cc.scheme = parse_scheme(trim(value));
  } else if (key == "ranks") {
    cc.ranks = parse_size_list(value);
  } else if (key == "max-rank") {
    cc.max_rank = parse_unsigned(key, value);
  } else if (key == "c") {
    cc.c = parse_double(key, value);
  } else if (key == "gamma") {
    cc.gamma = parse_double(key, value);
  } else if (key == "lambda-u") {
    cc.lambda_u = parse_double(key, value);
  } else if (key == "lambda-v") {
    cc.lambda_v = parse_double(key, value);
  } else if (key == "th") {
    cc.threshold = parse_double(key, value);
  } else if (key == "max-iters") {
    cc.max_iters = parse_unsigned(key, value);
  } else if (key == "output") {
    config.estimate_path = trim(value);
  } else if (key == "metrics-csv") {
    config.metrics_csv = trim(value);
  } else if (key == "trace-csv") {
    config.trace_csv = trim(value);
  } else if (key == "diagnostics-csv") {
    config.diagnostics_csv = trim(value);
  } else if (key == "mode-errors-csv") {
    config.mode_errors_csv = trim(value);
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown setting '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::kMalformedInput, "config line " + std::to_string(lineno) + ": expected key = value");
    }
    out.emplace_back(trim(std::string_view(body).substr(0, eq)),
                     trim(std::string_view(body).substr(eq + 1)));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::kIo, "cannot open config " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_config_text(buf.str());
}

std::string method_label(Scheme scheme, AugmentKind augment) {
  std::string label(scheme_name(scheme));
  if (augment != AugmentKind::kNone) label += "+" + std::string(augment_kind_name(augment));
  return label;
}

DenseTensor load_input(const std::string& path, InputKind kind) {
  if (kind == InputKind::kAuto) kind = has_image_extension(path) ? InputKind::kPpm : InputKind::kDt1;
  if (kind == InputKind::kDt1) return load_dt1(path);
  auto t = load_image(path);
  if (kind == InputKind::kPgm && t.order() != 2) fail(ErrorCode::kMalformedInput, path + " is not a PGM");
  if (kind == InputKind::kPpm && t.order() == 2 && !has_image_extension(path)) {
    fail(ErrorCode::kMalformedInput, path + " is not a PPM");
  }
  return t;
}

void write_metrics_row(std::ostream& os, const MetricsRow& row) {
  os << row.dataset << ',' << num(row.missing_rate) << ',' << row.scheme << ','
     << num(row.metrics.rse) << ',' << num(row.metrics.psnr) << ',' << num(row.metrics.ssim) << ','
     << row.iterations << ',' << num(row.seconds) << '\n';
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  if (config.input.empty()) fail(ErrorCode::kInvalidArgument, "no input path given");
  const auto start = std::chrono::steady_clock::now();
  const DenseTensor input = load_input(config.input, config.kind);
  if (input.order() < 2 || input.order() > 3) {
    fail(ErrorCode::kUnsupportedShape, "inputs must be order 2 or 3");
  }

  ObservationMask mask;
  if (!config.mask_path.empty()) {
    mask = load_dm1(config.mask_path);
    require_same_dims(mask.dims(), input.dims(), "mask file");
  } else if (config.no_truth) {
    fail(ErrorCode::kInvalidArgument, "no-truth runs need an explicit mask file");
  } else {
    mask = sample_mask(input.dims(), config.missing_rate, config.seed);
  }

  const Augmentation augmentation(config.augment, input.dims(), config.reshape_dims);

  CompletionConfig cc = config.completion;
  cc.seed = config.seed;
  const bool have_truth = !config.no_truth;
  const Dims aug_dims = augmentation.output_dims();
  const DenseTensor aug_truth = have_truth ? augmentation.forward(input) : DenseTensor();
  const ObservationMask aug_mask = augmentation.forward(mask);

  std::vector<std::string> trace_rows;
  std::ostringstream diag;
  std::ostringstream mode_err;
  const std::size_t balanced = aug_dims.size() >= 2 ? most_balanced_mode(aug_dims) : 1;
  std::vector<std::size_t> diag_entries;
  std::vector<std::size_t> profile_entries;
  if (have_truth && !config.diagnostics_csv.empty()) {
    diag_entries = sample_missing_entries(aug_mask, 1000, config.seed + 1);
  }
  if (have_truth && !config.mode_errors_csv.empty()) {
    profile_entries = sample_missing_entries(aug_mask, 50, config.seed + 2);
  }
  const std::set<std::size_t> profile_iters{1, 4, 7, 80};

  IterationObserver observer = [&](const IterationSnapshot& s) {
    std::string row = std::to_string(s.iteration) + "," + num(s.objective);
    if (have_truth) {
      DenseTensor est = augmentation.inverse(s.estimate);
      for (std::size_t i = 0; i < est.size(); ++i) {
        if (mask.known(i)) est[i] = input[i];
      }
      row += "," + num(rse(est, input));
    }
    trace_rows.push_back(std::move(row));

    if (!diag_entries.empty() && !s.weights.empty() && cc.scheme == Scheme::kElementWeighted &&
        diagnostic_iteration(s.iteration)) {
      const auto& w = s.weights[balanced - 1];
      const auto& a = s.approximations[balanced - 1];
      for (auto e : diag_entries) {
        diag << e << ',' << num(w.data()[e]) << ',' << num(std::abs(aug_truth[e] - a.data()[e]))
             << ',' << s.iteration << '\n';
      }
    }
    if (!profile_entries.empty() && profile_iters.contains(s.iteration)) {
      std::vector<std::size_t> order(profile_entries.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      const auto& ab = s.approximations[balanced - 1];
      auto err = [&](std::size_t mode, std::size_t e) {
        return std::abs(aug_truth[e] - s.approximations[mode - 1].data()[e]);
      };
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(aug_truth[profile_entries[x]] - ab.data()[profile_entries[x]]) <
               std::abs(aug_truth[profile_entries[y]] - ab.data()[profile_entries[y]]);
      });
      for (std::size_t r = 0; r < order.size(); ++r) {
        const auto e = profile_entries[order[r]];
        for (std::size_t mode = 1; mode <= s.approximations.size(); ++mode) {
          mode_err << s.iteration << ',' << r << ',' << e << ',' << mode << ',' << num(err(mode, e))
                   << '\n';
        }
      }
    }
  };

  const auto result = complete_pipeline(input, mask, augmentation, cc, observer);
  const auto stop = std::chrono::steady_clock::now();

  ExperimentOutcome outcome;
  outcome.input_dims = input.dims();
  outcome.augmented_dims = aug_dims;
  outcome.iterations = result.inner.iterations;
  outcome.converged = result.inner.converged;
  outcome.seconds = std::chrono::duration<double>(stop - start).count();
  if (have_truth) outcome.metrics = evaluate(result.estimate, input);

  if (!config.estimate_path.empty()) {
    if (has_image_extension(config.estimate_path)) {
      save_image(result.estimate, config.estimate_path);
    } else {
      save_dt1(config.estimate_path, result.estimate);
    }
  }
  if (!config.metrics_csv.empty()) {
    if (!outcome.metrics) fail(ErrorCode::kInvalidArgument, "metrics requested for a run without ground truth");
    auto os = open_csv(config.metrics_csv);
    os << kMetricsHeader << '\n';
    const std::string dataset = config.dataset.empty()
                                    ? std::filesystem::path(config.input).stem().string()
                                    : config.dataset;
    write_metrics_row(os, {dataset, config.missing_rate, method_label(cc.scheme, config.augment),
                           *outcome.metrics, outcome.iterations, outcome.seconds});
  }
  if (!config.trace_csv.empty()) {
    auto os = open_csv(config.trace_csv);
    os << (have_truth ? "iteration,objective,rse\n" : "iteration,objective\n");
    for (const auto& row : trace_rows) os << row << '\n';
  }
  if (!config.diagnostics_csv.empty()) {
    auto os = open_csv(config.diagnostics_csv);
    os << "entry_id,weight,abs_error,iteration\n" << diag.str();
  }
  if (!config.mode_errors_csv.empty()) {
    auto os = open_csv(config.mode_errors_csv);
    os << "iteration,order,entry_id,mode,abs_error\n" << mode_err.str();
  }
  return outcome;
}

std::vector<MetricsRow> run_synth_bench(const SynthBenchConfig& config, std::ostream& csv) {
  const DenseTensor truth =
      scale_to_unit_range(gen_synthetic({config.order, config.extent, config.rank, config.seed}));
  const std::string dataset = "synth-N" + std::to_string(config.order) + "-I" +
                              std::to_string(config.extent) + "-r" + std::to_string(config.rank);
  csv << kMetricsHeader << '\n';
  std::vector<MetricsRow> rows;
  for (double rate : config.missing_rates) {
    const auto mask = sample_mask(truth.dims(), rate, config.seed + 1);
    for (Scheme scheme : config.schemes) {
      CompletionConfig cc = config.completion;
      cc.scheme = scheme;
      cc.seed = config.seed;
      if (cc.ranks.empty()) cc.ranks = {config.rank};
      const auto start = std::chrono::steady_clock::now();
      const auto result = complete(observed_part(truth, mask), mask, cc);
      const auto stop = std::chrono::steady_clock::now();
      MetricsRow row{dataset, rate, std::string(scheme_name(scheme)), evaluate(result.estimate, truth),
                     result.iterations, std::chrono::duration<double>(stop - start).count()};
      write_metrics_row(csv, row);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace ttc
