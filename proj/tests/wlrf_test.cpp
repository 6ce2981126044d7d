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

#include "ttc/wlrf.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ttc/error.hpp"
#include "ttc/parallel.hpp"

namespace ttc {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

using Dense = std::vector<std::vector<double>>;

// Gauss-Jordan inverse with partial pivoting on plain nested vectors.
Dense invert(Dense a) {
  const std::size_t n = a.size();
  Dense inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const double d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<double> ridge_oracle(const MatrixXd& d, const VectorXd& t, const VectorXd& w, double lambda) {
  const std::size_t p = static_cast<std::size_t>(d.rows());
  const std::size_t r = static_cast<std::size_t>(d.cols());
  Dense a(r, std::vector<double>(r, 0.0));
  std::vector<double> b(r, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < p; ++k) a[i][j] += d(k, i) * w(k) * d(k, j);
    }
    a[i][i] += lambda;
    for (std::size_t k = 0; k < p; ++k) b[i] += d(k, i) * w(k) * t(k);
  }
  const Dense inv = invert(a);
  std::vector<double> x(r, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) x[i] += inv[i][j] * b[j];
  }
  return x;
}

MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, double lo = -1.0,
                       double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = u(rng);
  }
  return m;
}

TEST(WlrfTest, RidgeMatchesNormalEquationOracle) {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<int> pick_p(1, 50);
  std::uniform_int_distribution<int> pick_r(1, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = pick_p(rng);
    const int r = pick_r(rng);
    const MatrixXd d = random_matrix(p, r, rng);
    const VectorXd t = random_matrix(p, 1, rng);
    const VectorXd w = random_matrix(p, 1, rng, 0.0, 1.0);
    const double lambda = 1e-3 + 0.5 * random_matrix(1, 1, rng, 0.0, 1.0)(0, 0);
    const VectorXd got = ridge_wls(d, t, w, lambda);
    const auto want = ridge_oracle(d, t, w, lambda);
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < r; ++i) {
      num += (got(i) - want[i]) * (got(i) - want[i]);
      den += want[i] * want[i];
    }
    EXPECT_LE(std::sqrt(num), 1e-9 * std::max(std::sqrt(den), 1e-300)) << "trial " << trial;
  }
}

TEST(WlrfTest, RidgeReducesToLeastSquares) {
  std::mt19937_64 rng(5);
  const MatrixXd d = random_matrix(4, 4, rng) + 4.0 * MatrixXd::Identity(4, 4);
  const VectorXd t = random_matrix(4, 1, rng);
  const VectorXd x = ridge_wls(d, t, VectorXd::Ones(4), 1e-12);
  EXPECT_LT((x - d.lu().solve(t)).norm(), 1e-8);
}

TEST(WlrfTest, RidgeZeroWeightsGiveZero) {
  std::mt19937_64 rng(6);
  const VectorXd x = ridge_wls(random_matrix(7, 3, rng), random_matrix(7, 1, rng), VectorXd::Zero(7), 0.1);
  EXPECT_EQ(x, VectorXd::Zero(3));
}

TEST(WlrfTest, RidgeRejectsNonFinite) {
  MatrixXd d = MatrixXd::Ones(2, 1);
  d(1, 0) = std::nan("");
  try {
    ridge_wls(d, VectorXd::Ones(2), VectorXd::Ones(2), 0.1);
    FAIL() << "expected non-finite";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(WlrfTest, ScalarVUpdate) {
  MatrixXd u(1, 1), x(1, 1), w(1, 1);
  u << 2.0;
  x << 6.0;
  w << 1.0;
  EXPECT_NEAR(update_v(u, x, w, 0.5)(0, 0), 12.0 / 4.5, 1e-15);
}

TEST(WlrfTest, UpdatesMatchPerColumnAndPerRowRidge) {
  std::mt19937_64 rng(8);
  const MatrixXd x = random_matrix(9, 13, rng);
  const MatrixXd w = random_matrix(9, 13, rng, 0.0, 1.0);
  const MatrixXd u = random_matrix(9, 3, rng);
  const MatrixXd v = update_v(u, x, w, 0.2);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const VectorXd sq = w.col(j).cwiseAbs2();
    EXPECT_LT((v.row(j).transpose() - ridge_wls(u, x.col(j), sq, 0.2)).norm(), 1e-12);
  }
  const MatrixXd u2 = update_u(v, x, w, 0.3);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const VectorXd sq = w.row(i).transpose().cwiseAbs2();
    EXPECT_LT((u2.row(i).transpose() - ridge_wls(v, x.row(i).transpose(), sq, 0.3)).norm(), 1e-12);
  }
}

TEST(WlrfTest, ExactInterpolationOfLowRankData) {
  std::mt19937_64 rng(9);
  const MatrixXd u = random_matrix(12, 3, rng);
  const MatrixXd v0 = random_matrix(10, 3, rng);
  const MatrixXd x = u * v0.transpose();
  const MatrixXd v = update_v(u, x, MatrixXd::Ones(12, 10), 1e-14);
  EXPECT_LT((u * v.transpose() - x).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(WlrfTest, ZeroWeightColumnGivesZeroRow) {
  std::mt19937_64 rng(10);
  MatrixXd w = MatrixXd::Ones(5, 4);
  w.col(2).setZero();
  const MatrixXd v = update_v(random_matrix(5, 2, rng), random_matrix(5, 4, rng), w, 0.1);
  EXPECT_EQ(v.row(2).norm(), 0.0);
}

TEST(WlrfTest, RankAboveMinDimensionIsRejected) {
  try {
    update_v(MatrixXd::Ones(3, 4), MatrixXd::Ones(3, 5), MatrixXd::Ones(3, 5), 0.1);
    FAIL() << "expected invalid-argument";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(WlrfTest, UpdatesDoNotIncreaseObjective) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixXd x = random_matrix(15, 11, rng);
    const MatrixXd w = random_matrix(15, 11, rng, 0.0, 1.0);
    auto f = init_factors(15, 11, 4, trial);
    const double j0 = weighted_objective(x, f.u, f.v, w, 1e-3, 2e-3);
    f.v = update_v(f.u, x, w, 2e-3);
    const double j1 = weighted_objective(x, f.u, f.v, w, 1e-3, 2e-3);
    f.u = update_u(f.v, x, w, 1e-3);
    const double j2 = weighted_objective(x, f.u, f.v, w, 1e-3, 2e-3);
    EXPECT_LE(j1, j0 + 1e-12);
    EXPECT_LE(j2, j1 + 1e-12);
  }
}

TEST(WlrfTest, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixXd x = random_matrix(8, 6, rng);
    const MatrixXd w = random_matrix(8, 6, rng, 0.1, 1.0);
    const MatrixXd u = random_matrix(8, 2, rng);
    const MatrixXd v = random_matrix(6, 2, rng);
    const double lu = 0.05;
    const double lv = 0.07;
    const auto g = objective_gradient(x, u, v, w, lu, lv);
    const double h = 1e-6;
    MatrixXd du(8, 2), dv(6, 2);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      MatrixXd up = u, um = u;
      up.data()[i] += h;
      um.data()[i] -= h;
      du.data()[i] = (weighted_objective(x, up, v, w, lu, lv) - weighted_objective(x, um, v, w, lu, lv)) / (2 * h);
    }
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      MatrixXd vp = v, vm = v;
      vp.data()[i] += h;
      vm.data()[i] -= h;
      dv.data()[i] = (weighted_objective(x, u, vp, w, lu, lv) - weighted_objective(x, u, vm, w, lu, lv)) / (2 * h);
    }
    EXPECT_LE((g.du - du).norm(), 1e-5 * du.norm());
    EXPECT_LE((g.dv - dv).norm(), 1e-5 * dv.norm());
  }
}

TEST(WlrfTest, GradientVanishesAfterUpdate) {
  std::mt19937_64 rng(13);
  const MatrixXd x = random_matrix(8, 6, rng);
  const MatrixXd w = random_matrix(8, 6, rng, 0.1, 1.0);
  const MatrixXd u = random_matrix(8, 2, rng);
  const MatrixXd v = update_v(u, x, w, 0.1);
  EXPECT_LT(objective_gradient(x, u, v, w, 0.1, 0.1).dv.norm(), 1e-10);
}

TEST(WlrfTest, WeightMap) {
  MatrixXd x(1, 3), a(1, 3);
  x << 0.5, 1.0, 3.0;
  a << 0.5, 0.2, 0.0;
  KnownMatrix known = KnownMatrix::Zero(1, 3);
  auto w = update_weights(x, a, 0.7, 2.0, known);
  EXPECT_DOUBLE_EQ(w(0, 0), 0.7);
  EXPECT_NEAR(w(0, 1), 0.7 * std::exp(-0.8), 1e-15);
  EXPECT_NEAR(w(0, 2), 0.7 * std::exp(-3.0), 1e-15);
  known(0, 2) = 1;
  EXPECT_EQ(update_weights(x, a, 0.7, 2.0, known)(0, 2), 1.0);
  EXPECT_THROW(update_weights(x, a, 0.0, 2.0, known), Error);
  EXPECT_THROW(update_weights(x, a, 1.0, -1.0, known), Error);
}

TEST(WlrfTest, WeightsDecreaseAndStayPositive) {
  MatrixXd x(1, 6), a = MatrixXd::Zero(1, 6);
  x << 0.0, 0.1, 1.0, 10.0, 1e3, 1e6;
  const auto w = update_weights(x, a, 1.0, 10.0, KnownMatrix::Zero(1, 6));
  for (Eigen::Index j = 0; j < 6; ++j) {
    EXPECT_GT(w(0, j), 0.0);
    EXPECT_LE(w(0, j), 1.0);
    if (j > 0) EXPECT_LE(w(0, j), w(0, j - 1));
  }
  EXPECT_LT(w(0, 1), w(0, 0));
  EXPECT_LT(w(0, 3), w(0, 2));
}

TEST(WlrfTest, UpdatesIndependentOfWorkerCount) {
  std::mt19937_64 rng(14);
  // Wide enough that both updates split into several chunks.
  const MatrixXd x = random_matrix(8, 200000, rng);
  const MatrixXd w = random_matrix(8, 200000, rng, 0.0, 1.0);
  const auto f = init_factors(8, 200000, 6, 1);
  set_worker_count(1);
  const MatrixXd v1 = update_v(f.u, x, w, 1e-3);
  const MatrixXd u1 = update_u(f.v, x, w, 1e-3);
  set_worker_count(4);
  const MatrixXd v4 = update_v(f.u, x, w, 1e-3);
  const MatrixXd u4 = update_u(f.v, x, w, 1e-3);
  set_worker_count(0);
  EXPECT_EQ(v1, v4);
  EXPECT_EQ(u1, u4);
}

TEST(WlrfTest, InitFactorsScaleAndSeed) {
  const auto a = init_factors(200, 300, 4, 3);
  const auto b = init_factors(200, 300, 4, 3);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.v, b.v);
  const double var = a.u.squaredNorm() / static_cast<double>(a.u.size());
  EXPECT_NEAR(var, 0.25, 0.03);
  EXPECT_THROW(init_factors(3, 5, 4, 0), Error);
}

TEST(WlrfTest, BalanceScalesKeepsProductAndLowersPenalty) {
  auto f = init_factors(1000, 10, 3, 4);
  f.u *= 40.0;
  f.v.col(1) *= 1e-3;
  const MatrixXd before = f.product();
  const double penalty = f.u.squaredNorm() + f.v.squaredNorm();
  balance_scales(f);
  EXPECT_LT((f.product() - before).norm(), 1e-12 * before.norm());
  EXPECT_LT(f.u.squaredNorm() + f.v.squaredNorm(), penalty);
  for (Eigen::Index a = 0; a < f.rank(); ++a) {
    EXPECT_NEAR(f.u.col(a).norm(), f.v.col(a).norm(), 1e-12 * f.u.col(a).norm());
  }
  FactorPair zero{MatrixXd::Zero(4, 2), MatrixXd::Ones(3, 2)};
  balance_scales(zero);
  EXPECT_EQ(zero.v, MatrixXd::Ones(3, 2));
}

}  // namespace
}  // namespace ttc
