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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ttc/error.hpp"
#include "ttc/image_io.hpp"
#include "ttc/tensor_io.hpp"

namespace ttc {
namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "ttc_experiment_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

DenseTensor gradient_image(std::size_t rows, std::size_t cols, std::size_t channels) {
  DenseTensor t(channels > 1 ? Dims{rows, cols, channels} : Dims{rows, cols});
  for (std::size_t ch = 0; ch < channels; ++ch) {
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t r = 0; r < rows; ++r) {
        t[r + rows * (c + cols * ch)] =
            std::round(255.0 * (0.2 + 0.5 * r / rows + 0.2 * c / cols + 0.05 * ch)) / 255.0;
      }
    }
  }
  return t;
}

TEST(ExperimentTest, ConfigTextParsing) {
  const auto kv = parse_config_text("# run\nscheme = tmac-tt\n\n missing-rate=0.7  # inline\n");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"scheme", "tmac-tt"}));
  EXPECT_EQ(kv[1], (std::pair<std::string, std::string>{"missing-rate", "0.7"}));
  EXPECT_THROW(parse_config_text("no equals sign\n"), Error);
}

TEST(ExperimentTest, SettingsMapOntoConfig) {
  ExperimentConfig c;
  apply_setting(c, "scheme", "tmac-tt");
  apply_setting(c, "augment", "ka");
  apply_setting(c, "ranks", "3,4,5");
  apply_setting(c, "gamma", "2.5");
  apply_setting(c, "lambda-u", "0.01");
  apply_setting(c, "th", "1e-6");
  apply_setting(c, "max-iters", "12");
  apply_setting(c, "seed", "42");
  apply_setting(c, "reshape-dims", "4x4x3");
  EXPECT_EQ(c.completion.scheme, Scheme::kModeWeighted);
  EXPECT_EQ(c.augment, AugmentKind::kKa);
  EXPECT_EQ(c.completion.ranks, (std::vector<std::size_t>{3, 4, 5}));
  EXPECT_EQ(c.completion.gamma, 2.5);
  EXPECT_EQ(c.completion.lambda_u, 0.01);
  EXPECT_EQ(c.completion.threshold, 1e-6);
  EXPECT_EQ(c.completion.max_iters, 12u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.reshape_dims, (Dims{4, 4, 3}));
}

TEST(ExperimentTest, BadSettingsAreInvalidArguments) {
  ExperimentConfig c;
  for (const auto& [k, v] : std::vector<std::pair<std::string, std::string>>{
           {"missing-rate", "1.0"}, {"missing-rate", "abc"}, {"scheme", "svd"},
           {"augment", "zigzag"}, {"max-iters", "-3"}, {"bogus", "1"}}) {
    try {
      apply_setting(c, k, v);
      ADD_FAILURE() << k << "=" << v << " accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument) << k;
    }
  }
}

TEST(ExperimentTest, MethodLabels) {
  EXPECT_EQ(method_label(Scheme::kElementWeighted, AugmentKind::kOka), "twmac-tt+oka");
  EXPECT_EQ(method_label(Scheme::kModeWeighted, AugmentKind::kNone), "tmac-tt");
}

TEST(ExperimentTest, RunWritesAllOutputs) {
  const auto dir = scratch_dir();
  const auto input = dir / "grad.ppm";
  const auto truth = gradient_image(12, 10, 3);
  save_image(truth, input.string());

  ExperimentConfig c;
  c.input = input.string();
  c.missing_rate = 0.5;
  c.seed = 3;
  c.completion.max_iters = 12;
  c.completion.ranks = {2};
  c.estimate_path = (dir / "est.dt1").string();
  c.metrics_csv = (dir / "metrics.csv").string();
  c.trace_csv = (dir / "trace.csv").string();
  c.diagnostics_csv = (dir / "diag.csv").string();
  c.mode_errors_csv = (dir / "modes.csv").string();
  const auto out = run_experiment(c);

  ASSERT_TRUE(out.metrics.has_value());
  EXPECT_EQ(out.input_dims, (Dims{12, 10, 3}));
  EXPECT_EQ(out.augmented_dims, (Dims{5, 4, 4, 4, 3}));
  EXPECT_LT(out.metrics->rse, 0.2);

  const auto est = load_dt1(c.estimate_path);
  const auto mask = sample_mask(truth.dims(), 0.5, 3);
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (mask.known(i)) EXPECT_EQ(est[i], truth[i]);
  }

  const auto metrics = slurp(c.metrics_csv);
  EXPECT_EQ(metrics.substr(0, metrics.find('\n')), std::string(kMetricsHeader));
  EXPECT_NE(metrics.find("grad,0.5,twmac-tt+oka,"), std::string::npos);
  const auto trace = slurp(c.trace_csv);
  EXPECT_EQ(trace.substr(0, trace.find('\n')), "iteration,objective,rse");
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), static_cast<long>(out.iterations) + 1);
  EXPECT_EQ(slurp(c.diagnostics_csv).substr(0, 35), "entry_id,weight,abs_error,iteration");
  EXPECT_NE(slurp(c.mode_errors_csv).find("\n1,0,"), std::string::npos);
}

TEST(ExperimentTest, NoTruthRunNeedsMaskAndSkipsMetrics) {
  const auto dir = scratch_dir();
  const auto input = dir / "nt.pgm";
  save_image(gradient_image(9, 9, 1), input.string());
  ExperimentConfig c;
  c.input = input.string();
  c.no_truth = true;
  c.completion.max_iters = 3;
  EXPECT_THROW(run_experiment(c), Error);
  const auto mask_path = dir / "nt.dm1";
  save_dm1(mask_path.string(), sample_mask({9, 9}, 0.3, 1));
  c.mask_path = mask_path.string();
  const auto out = run_experiment(c);
  EXPECT_FALSE(out.metrics.has_value());
  c.metrics_csv = (dir / "nt.csv").string();
  EXPECT_THROW(run_experiment(c), Error);
}

TEST(ExperimentTest, KaOnUnsupportedShapeExplainsFailure) {
  const auto dir = scratch_dir();
  const auto input = dir / "odd.pgm";
  save_image(gradient_image(6, 5, 1), input.string());
  ExperimentConfig c;
  c.input = input.string();
  c.augment = AugmentKind::kKa;
  try {
    run_experiment(c);
    FAIL() << "expected unsupported-shape";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedShape);
    EXPECT_NE(std::string(e.what()).find("KA failed to increase the order"), std::string::npos);
  }
}

TEST(ExperimentTest, SynthBenchRows) {
  SynthBenchConfig c;
  c.order = 3;
  c.extent = 6;
  c.rank = 2;
  c.missing_rates = {0.3, 0.6};
  c.completion.max_iters = 20;
  std::stringstream csv;
  const auto rows = run_synth_bench(c, csv);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].scheme, "tmac-tt");
  EXPECT_EQ(rows[1].scheme, "twmac-tt");
  EXPECT_EQ(rows[3].missing_rate, 0.6);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, std::string(kMetricsHeader));
}

TEST(ExperimentTest, ListParsing) {
  EXPECT_EQ(parse_double_list("0.1,0.5, 0.9"), (std::vector<double>{0.1, 0.5, 0.9}));
  EXPECT_EQ(parse_size_list("4x4x3"), (std::vector<std::size_t>{4, 4, 3}));
  EXPECT_THROW(parse_size_list("4,a"), Error);
}

}  // namespace
}  // namespace ttc
