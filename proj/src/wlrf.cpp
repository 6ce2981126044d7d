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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "ttc/error.hpp"
#include "ttc/parallel.hpp"

namespace ttc {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr Index kChunkElements = Index{1} << 20;

Index packed_size(Index r) { return r * (r + 1) / 2; }

// Column i holds the lower triangle of design.row(i)^T * design.row(i),
// packed column by column.
MatrixXd packed_outer_products(const MatrixRef& design) {
  const Index r = design.cols();
  MatrixXd packed(packed_size(r), design.rows());
  for (Index i = 0; i < design.rows(); ++i) {
    Index t = 0;
    for (Index b = 0; b < r; ++b) {
      const double db = design(i, b);
      for (Index a = b; a < r; ++a) packed(t++, i) = design(i, a) * db;
    }
  }
  return packed;
}

Index chunk_length(Index count, Index packed, Index other_dim) {
  const Index width = std::max<Index>({packed, other_dim, 1});
  return std::clamp<Index>(kChunkElements / width, 1, std::max<Index>(count, 1));
}

VectorXd solve_packed(const Eigen::Ref<const VectorXd>& gram_packed,
                      const Eigen::Ref<const VectorXd>& rhs, double lambda) {
  const Index r = rhs.size();
  MatrixXd gram(r, r);
  Index t = 0;
  for (Index b = 0; b < r; ++b) {
    for (Index a = b; a < r; ++a) {
      gram(a, b) = gram_packed(t);
      gram(b, a) = gram_packed(t);
      ++t;
    }
    gram(b, b) += lambda;
  }
  Eigen::LLT<MatrixXd> llt(gram);
  if (llt.info() == Eigen::Success) return llt.solve(rhs);
  return gram.ldlt().solve(rhs);
}

void require_finite(const MatrixRef& m, const char* what) {
  if (!m.allFinite()) fail(ErrorCode::kNonFinite, std::string(what) + " contains non-finite values");
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    fail(ErrorCode::kInvalidArgument, "ridge parameter must be finite and non-negative");
  }
}

// Solves one weighted ridge problem per column of `x`, all sharing `design`
// (rows of design align with rows of x). Returns one solution per row.
MatrixXd solve_columns(const MatrixRef& design, const MatrixRef& x, const MatrixRef& w, double lambda) {
  const Index p = x.rows();
  const Index count = x.cols();
  const Index r = design.cols();
  const MatrixXd packed = packed_outer_products(design);
  const Index chunk = chunk_length(count, packed.rows(), p);
  const Index chunks = (count + chunk - 1) / chunk;
  MatrixXd out(count, r);
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    const Index begin = static_cast<Index>(c) * chunk;
    const Index len = std::min(chunk, count - begin);
    const MatrixXd sq = w.middleCols(begin, len).cwiseAbs2();
    const MatrixXd gram = packed * sq;
    const MatrixXd rhs = design.transpose() * sq.cwiseProduct(x.middleCols(begin, len));
    for (Index j = 0; j < len; ++j) {
      out.row(begin + j) = solve_packed(gram.col(j), rhs.col(j), lambda).transpose();
    }
  });
  return out;
}

// Row-wise counterpart of solve_columns: design rows align with columns of x.
MatrixXd solve_rows(const MatrixRef& design, const MatrixRef& x, const MatrixRef& w, double lambda) {
  const Index p = x.cols();
  const Index count = x.rows();
  const Index r = design.cols();
  const MatrixXd packed = packed_outer_products(design);
  const Index chunk = chunk_length(count, packed.rows(), p);
  const Index chunks = (count + chunk - 1) / chunk;
  MatrixXd out(count, r);
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    const Index begin = static_cast<Index>(c) * chunk;
    const Index len = std::min(chunk, count - begin);
    const MatrixXd sq = w.middleRows(begin, len).cwiseAbs2();
    const MatrixXd gram = packed * sq.transpose();
    const MatrixXd rhs = design.transpose() * sq.cwiseProduct(x.middleRows(begin, len)).transpose();
    for (Index i = 0; i < len; ++i) {
      out.row(begin + i) = solve_packed(gram.col(i), rhs.col(i), lambda).transpose();
    }
  });
  return out;
}

void check_update_shapes(const MatrixRef& factor, Index factor_rows, const MatrixRef& x,
                         const MatrixRef& w) {
  if (w.rows() != x.rows() || w.cols() != x.cols()) {
    fail(ErrorCode::kInvalidArgument, "weight matrix shape differs from data matrix");
  }
  if (factor.rows() != factor_rows) {
    fail(ErrorCode::kInvalidArgument, "factor rows do not match the data matrix");
  }
  if (factor.cols() < 1 || factor.cols() > std::min(x.rows(), x.cols())) {
    fail(ErrorCode::kInvalidArgument, "rank " + std::to_string(factor.cols()) +
                                          " exceeds min(rows, cols) of the mode matrix");
  }
}

}  // namespace

FactorPair init_factors(Index rows, Index cols, Index rank, std::uint64_t seed) {
  if (rank < 1 || rank > std::min(rows, cols)) {
    fail(ErrorCode::kInvalidArgument, "rank must lie in [1, min(rows, cols)]");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rank));
  FactorPair f{MatrixXd(rows, rank), MatrixXd(cols, rank)};
  for (Index j = 0; j < rank; ++j) {
    for (Index i = 0; i < rows; ++i) f.u(i, j) = normal(rng) * scale;
  }
  for (Index j = 0; j < rank; ++j) {
    for (Index i = 0; i < cols; ++i) f.v(i, j) = normal(rng) * scale;
  }
  return f;
}

void balance_scales(FactorPair& f) {
  for (Index a = 0; a < f.rank(); ++a) {
    const double nu = f.u.col(a).norm();
    const double nv = f.v.col(a).norm();
    if (!(nu > 0.0) || !(nv > 0.0)) continue;
    const double s = std::sqrt(nv / nu);
    f.u.col(a) *= s;
    f.v.col(a) /= s;
  }
}

VectorXd ridge_wls(const MatrixRef& design, const Eigen::Ref<const VectorXd>& targets,
                   const Eigen::Ref<const VectorXd>& weights, double lambda) {
  if (targets.size() != design.rows() || weights.size() != design.rows()) {
    fail(ErrorCode::kInvalidArgument, "ridge_wls: design, targets and weights disagree in length");
  }
  check_lambda(lambda);
  require_finite(design, "design");
  require_finite(targets, "targets");
  require_finite(weights, "weights");
  if ((weights.array() < 0.0).any()) fail(ErrorCode::kInvalidArgument, "ridge_wls: negative weight");
  MatrixXd gram = design.transpose() * weights.asDiagonal() * design;
  gram.diagonal().array() += lambda;
  const VectorXd rhs = design.transpose() * weights.cwiseProduct(targets);
  Eigen::LLT<MatrixXd> llt(gram);
  if (llt.info() == Eigen::Success) return llt.solve(rhs);
  return gram.ldlt().solve(rhs);
}

MatrixXd update_v(const MatrixRef& u, const MatrixRef& x, const MatrixRef& w, double lambda_v) {
  check_update_shapes(u, x.rows(), x, w);
  check_lambda(lambda_v);
  MatrixXd v = solve_columns(u, x, w, lambda_v);
  require_finite(v, "V update");
  return v;
}

MatrixXd update_u(const MatrixRef& v, const MatrixRef& x, const MatrixRef& w, double lambda_u) {
  check_update_shapes(v, x.cols(), x, w);
  check_lambda(lambda_u);
  MatrixXd u = solve_rows(v, x, w, lambda_u);
  require_finite(u, "U update");
  return u;
}

MatrixXd update_weights(const MatrixRef& x, const MatrixRef& approx, double c, double gamma,
                        const KnownRef& known) {
  if (!(c > 0.0) || !(gamma > 0.0)) fail(ErrorCode::kInvalidArgument, "c and gamma must be positive");
  if (approx.rows() != x.rows() || approx.cols() != x.cols() || known.rows() != x.rows() ||
      known.cols() != x.cols()) {
    fail(ErrorCode::kInvalidArgument, "update_weights: shape mismatch");
  }
  // sqrt(exp(-g|e|)) == exp(-g|e|/2); the floor keeps far-off entries
  // strictly positive instead of underflowing to zero.
  constexpr double kFloor = std::numeric_limits<double>::min();
  MatrixXd w(x.rows(), x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) {
      w(i, j) = known(i, j)
                    ? 1.0
                    : std::max(c * std::exp(-0.5 * gamma * std::abs(x(i, j) - approx(i, j))), kFloor);
    }
  }
  return w;
}

MatrixXd update_weights(const MatrixRef& x, const MatrixRef& u, const MatrixRef& v, double c,
                        double gamma, const KnownRef& known) {
  return update_weights(x, MatrixXd(u * v.transpose()), c, gamma, known);
}

double weighted_objective(const MatrixRef& x, const MatrixRef& u, const MatrixRef& v,
                          const MatrixRef& w, double lambda_u, double lambda_v) {
  const MatrixXd residual = w.cwiseProduct(x - u * v.transpose());
  return residual.squaredNorm() + lambda_u * u.squaredNorm() + lambda_v * v.squaredNorm();
}

ObjectiveGradient objective_gradient(const MatrixRef& x, const MatrixRef& u, const MatrixRef& v,
                                     const MatrixRef& w, double lambda_u, double lambda_v) {
  const MatrixXd weighted = w.cwiseAbs2().cwiseProduct(x - u * v.transpose());
  return {-2.0 * weighted * v + 2.0 * lambda_u * u,
          -2.0 * weighted.transpose() * u + 2.0 * lambda_v * v};
}

}  // namespace ttc
