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

#include <Eigen/Dense>

#include "ttc/tensor.hpp"

namespace ttc {

using MatrixRef = Eigen::Ref<const Eigen::MatrixXd>;
using KnownRef = Eigen::Ref<const KnownMatrix>;

/// Low-rank pair with approximation U * V^T (U is m x r, V is n x r).
struct FactorPair {
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;

  Eigen::Index rank() const { return u.cols(); }
  Eigen::MatrixXd product() const { return u * v.transpose(); }
};

/// Entries i.i.d. N(0, 1) / sqrt(r).
FactorPair init_factors(Eigen::Index rows, Eigen::Index cols, Eigen::Index rank, std::uint64_t seed);

/// Rescales column a of U by s_a and of V by 1/s_a so both have equal norms.
/// U * V^T is unchanged and |U|^2 + |V|^2 cannot increase. Columns where
/// either norm is zero are left alone.
void balance_scales(FactorPair& f);

/// argmin_x sum_i weights_i (design_i . x - targets_i)^2 + lambda |x|^2.
Eigen::VectorXd ridge_wls(const MatrixRef& design, const Eigen::Ref<const Eigen::VectorXd>& targets,
                          const Eigen::Ref<const Eigen::VectorXd>& weights, double lambda);

// The factor updates below minimise
//   J(U, V) = |W .* (X - U V^T)|_F^2 + lambda_u |U|_F^2 + lambda_v |V|_F^2,
// so each row/column solve uses the squared entries of W as its
// least-squares weights.

/// Exact minimiser of J over V with U fixed; one ridge solve per column of X.
Eigen::MatrixXd update_v(const MatrixRef& u, const MatrixRef& x, const MatrixRef& w, double lambda_v);
/// Exact minimiser of J over U with V fixed; one ridge solve per row of X.
Eigen::MatrixXd update_u(const MatrixRef& v, const MatrixRef& x, const MatrixRef& w, double lambda_u);

/// c * sqrt(exp(-gamma |X - A|)) at missing entries, 1 at known entries,
/// where A is the current low-rank approximation.
Eigen::MatrixXd update_weights(const MatrixRef& x, const MatrixRef& approx, double c, double gamma,
                               const KnownRef& known);
Eigen::MatrixXd update_weights(const MatrixRef& x, const MatrixRef& u, const MatrixRef& v, double c,
                               double gamma, const KnownRef& known);

double weighted_objective(const MatrixRef& x, const MatrixRef& u, const MatrixRef& v,
                          const MatrixRef& w, double lambda_u, double lambda_v);

struct ObjectiveGradient {
  Eigen::MatrixXd du;
  Eigen::MatrixXd dv;
};

ObjectiveGradient objective_gradient(const MatrixRef& x, const MatrixRef& u, const MatrixRef& v,
                                     const MatrixRef& w, double lambda_u, double lambda_v);

}  // namespace ttc
