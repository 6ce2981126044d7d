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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ttc/augment.hpp"
#include "ttc/error.hpp"
#include "ttc/experiment.hpp"
#include "ttc/metrics.hpp"
#include "ttc/parallel.hpp"
#include "ttc/tensor_io.hpp"

namespace {

std::string format_dims(const ttc::Dims& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(dims[i]);
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct CompleteArgs {
  std::string config_path;
  std::map<std::string, std::string> values;
  bool no_truth = false;
};

void add_complete(CLI::App& app, CompleteArgs& args) {
  auto* cmd = app.add_subcommand("complete", "Mask, augment, complete and score one tensor or image");
  cmd->add_option("--config", args.config_path, "Flat key = value settings file; flags override it");
  const std::vector<std::pair<std::string, std::string>> options = {
      {"input", "Input path (.pgm/.ppm image or DT1 tensor)"},
      {"kind", "Input kind: auto, pgm, ppm or dt1"},
      {"mask", "DM1 observation mask; sampled when omitted"},
      {"dataset", "Dataset label in the metrics row"},
      {"missing-rate", "Fraction of entries hidden when sampling the mask"},
      {"seed", "Seed for the mask and the factor initialization"},
      {"augment", "Augmentation: none, reshape, ka or oka"},
      {"reshape-dims", "Target dims for reshape, e.g. 4x4x4x3"},
      {"scheme", "Completion scheme: tmac-tt or twmac-tt"},
      {"ranks", "One rank for every mode, or a comma list of N-1 ranks"},
      {"max-rank", "Rank cap used when --ranks is omitted"},
      {"c", "Weight scale c"},
      {"gamma", "Weight decay rate gamma"},
      {"lambda-u", "Ridge penalty on U"},
      {"lambda-v", "Ridge penalty on V"},
      {"th", "Relative change threshold for stopping"},
      {"max-iters", "Iteration cap"},
      {"output", "Estimate path (.pgm/.ppm written as an image, otherwise DT1)"},
      {"metrics-csv", "Metrics CSV path"},
      {"trace-csv", "Per-iteration objective/RSE CSV path"},
      {"diagnostics-csv", "Weight vs error scatter CSV path"},
      {"mode-errors-csv", "Per-mode error profile CSV path"},
  };
  for (const auto& [name, help] : options) {
    cmd->add_option("--" + name, args.values[name], help);
  }
  cmd->add_flag("--no-truth", args.no_truth, "Input is genuinely incomplete; report no metrics");
}

int run_complete(CLI::App& cmd, const CompleteArgs& args) {
  ttc::ExperimentConfig config;
  if (!args.config_path.empty()) {
    for (const auto& [key, value] : ttc::load_config_file(args.config_path)) {
      ttc::apply_setting(config, key, value);
    }
  }
  for (const auto& [name, value] : args.values) {
    if (cmd.count("--" + name) > 0) ttc::apply_setting(config, name, value);
  }
  if (args.no_truth) config.no_truth = true;

  const auto outcome = ttc::run_experiment(config);
  std::cout << "input " << format_dims(outcome.input_dims) << " augmented "
            << format_dims(outcome.augmented_dims) << '\n';
  std::cout << "iterations " << outcome.iterations << (outcome.converged ? " converged" : " capped")
            << " seconds " << fmt(outcome.seconds) << '\n';
  if (outcome.metrics) {
    std::cout << "rse " << fmt(outcome.metrics->rse) << " psnr " << fmt(outcome.metrics->psnr)
              << " ssim " << fmt(outcome.metrics->ssim) << '\n';
  }
  return 0;
}

struct SynthArgs {
  ttc::SynthBenchConfig config;
  std::string rates = "0.5";
  std::string schemes = "tmac-tt,twmac-tt";
  std::string ranks;
  std::string output;
};

void add_synth(CLI::App& app, SynthArgs& args) {
  auto* cmd = app.add_subcommand("synth-bench", "Complete a synthetic low-rank tensor at several missing rates");
  auto& c = args.config;
  cmd->add_option("--order", c.order, "Tensor order N")->capture_default_str();
  cmd->add_option("--extent", c.extent, "Extent I of every mode")->capture_default_str();
  cmd->add_option("--rank", c.rank, "Generating rank")->capture_default_str();
  cmd->add_option("--missing-rates", args.rates, "Comma list of missing rates")->capture_default_str();
  cmd->add_option("--schemes", args.schemes, "Comma list of schemes")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed")->capture_default_str();
  cmd->add_option("--ranks", args.ranks, "Completion ranks; defaults to the generating rank");
  cmd->add_option("--c", c.completion.c, "Weight scale c")->capture_default_str();
  cmd->add_option("--gamma", c.completion.gamma, "Weight decay rate gamma")->capture_default_str();
  cmd->add_option("--lambda-u", c.completion.lambda_u, "Ridge penalty on U")->capture_default_str();
  cmd->add_option("--lambda-v", c.completion.lambda_v, "Ridge penalty on V")->capture_default_str();
  cmd->add_option("--th", c.completion.threshold, "Relative change threshold")->capture_default_str();
  cmd->add_option("--max-iters", c.completion.max_iters, "Iteration cap")->capture_default_str();
  cmd->add_option("--output", args.output, "CSV path; stdout when omitted");
}

int run_synth(SynthArgs& args) {
  auto& c = args.config;
  c.missing_rates = ttc::parse_double_list(args.rates);
  c.schemes.clear();
  std::string item;
  for (char ch : args.schemes + ",") {
    if (ch == ',') {
      if (!item.empty()) c.schemes.push_back(ttc::parse_scheme(item));
      item.clear();
    } else {
      item.push_back(ch);
    }
  }
  if (c.missing_rates.empty() || c.schemes.empty()) {
    ttc::fail(ttc::ErrorCode::kInvalidArgument, "need at least one missing rate and one scheme");
  }
  if (!args.ranks.empty()) c.completion.ranks = ttc::parse_size_list(args.ranks);
  if (args.output.empty()) {
    ttc::run_synth_bench(c, std::cout);
  } else {
    std::ofstream os(args.output);
    if (!os) ttc::fail(ttc::ErrorCode::kIo, "cannot open " + args.output + " for writing");
    ttc::run_synth_bench(c, os);
  }
  return 0;
}

struct InspectArgs {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t channels = 0;
  std::string input;
  std::string scheme = "oka";
  std::string output;
};

void add_inspect(CLI::App& app, InspectArgs& args) {
  auto* cmd = app.add_subcommand("augment-inspect", "Print an OKA or KA plan and optionally write the augmented tensor");
  cmd->add_option("--rows", args.rows, "Frontal rows");
  cmd->add_option("--cols", args.cols, "Frontal columns");
  cmd->add_option("--channels", args.channels, "Channel extent; 0 for a matrix");
  cmd->add_option("--input", args.input, "Take the shape (and data) from an image or DT1 file");
  cmd->add_option("--scheme", args.scheme, "oka or ka")->capture_default_str();
  cmd->add_option("--output", args.output, "Write the augmented tensor as DT1 (needs --input)");
}

int run_inspect(const InspectArgs& args) {
  const auto kind = ttc::parse_augment_kind(args.scheme);
  if (kind != ttc::AugmentKind::kOka && kind != ttc::AugmentKind::kKa) {
    ttc::fail(ttc::ErrorCode::kInvalidArgument, "augment-inspect supports oka and ka only");
  }
  std::optional<ttc::DenseTensor> input;
  ttc::Dims dims;
  if (!args.input.empty()) {
    input = ttc::load_input(args.input, ttc::InputKind::kAuto);
    dims = input->dims();
  } else {
    if (args.rows == 0 || args.cols == 0) {
      ttc::fail(ttc::ErrorCode::kInvalidArgument, "give --input or both --rows and --cols");
    }
    dims = {args.rows, args.cols};
    if (args.channels > 0) dims.push_back(args.channels);
  }
  if (!args.output.empty() && !input) {
    ttc::fail(ttc::ErrorCode::kInvalidArgument, "--output needs --input");
  }
  const ttc::Augmentation aug(kind, dims);
  std::cout << ttc::format_plan(*aug.plan());
  if (input) ttc::save_dt1(args.output, aug.forward(*input));
  return 0;
}

struct MetricsArgs {
  std::string estimate;
  std::string truth;
};

void add_metrics(CLI::App& app, MetricsArgs& args) {
  auto* cmd = app.add_subcommand("metrics", "Score an estimate against a ground truth");
  cmd->add_option("--estimate", args.estimate, "Estimate (image or DT1)")->required();
  cmd->add_option("--truth", args.truth, "Ground truth (image or DT1)")->required();
}

int run_metrics(const MetricsArgs& args) {
  const auto est = ttc::load_input(args.estimate, ttc::InputKind::kAuto);
  const auto truth = ttc::load_input(args.truth, ttc::InputKind::kAuto);
  const auto report = ttc::evaluate(est, truth);
  std::cout << "rse,psnr,ssim\n"
            << fmt(report.rse) << ',' << fmt(report.psnr) << ',' << fmt(report.ssim) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor-train completion with element-wise weights and overlapping ket augmentation"};
  app.require_subcommand(1);
  std::size_t workers = 0;
  app.add_option("--workers", workers, "Worker threads (overrides TTC_WORKERS)");

  CompleteArgs complete_args;
  SynthArgs synth_args;
  InspectArgs inspect_args;
  MetricsArgs metrics_args;
  add_complete(app, complete_args);
  add_synth(app, synth_args);
  add_inspect(app, inspect_args);
  add_metrics(app, metrics_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: invalid-argument: " << e.what() << '\n';
    return ttc::error_exit_status(ttc::ErrorCode::kInvalidArgument);
  }

  try {
    if (workers > 0) ttc::set_worker_count(workers);
    if (app.got_subcommand("complete")) return run_complete(*app.get_subcommand("complete"), complete_args);
    if (app.got_subcommand("synth-bench")) return run_synth(synth_args);
    if (app.got_subcommand("augment-inspect")) return run_inspect(inspect_args);
    return run_metrics(metrics_args);
  } catch (const ttc::Error& e) {
    std::cerr << "error: " << ttc::error_code_name(e.code()) << ": " << e.what() << '\n';
    return ttc::error_exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
}
