// Copyright 2026 The latentprop Authors
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

#ifndef LATENTPROP_TESTS_CA_ORACLE_HPP_
#define LATENTPROP_TESTS_CA_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "latentprop/scaling.hpp"

namespace latentprop::testing {

struct CaOracle {
  Eigen::MatrixXd rows;  // principal coordinates, all nontrivial dims
  Eigen::MatrixXd cols;
  Eigen::VectorXd singular_values;
  double total_inertia = 0.0;
};

// Dense CA through the eigendecomposition of S^T S. Row coordinates come from
// the transition formula F = D_r^-1 P Gamma rather than from a second SVD
// factor.
inline CaOracle ca_oracle(const Eigen::MatrixXd& n) {
  const Eigen::MatrixXd p = n / n.sum();
  const Eigen::VectorXd r = p.rowwise().sum();
  const Eigen::VectorXd c = p.colwise().sum().transpose();
  Eigen::MatrixXd s(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      s(i, j) = (p(i, j) - r(i) * c(j)) / std::sqrt(r(i) * c(j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.transpose() * s);
  // Ascending order; reverse.
  const Eigen::Index k = p.cols();
  Eigen::VectorXd sv(k);
  Eigen::MatrixXd v(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    sv(j) = std::sqrt(std::max(0.0, eig.eigenvalues()(k - 1 - j)));
    v.col(j) = eig.eigenvectors().col(k - 1 - j);
  }
  CaOracle out;
  out.singular_values = sv;
  out.total_inertia = (s.transpose() * s).trace();
  Eigen::MatrixXd gamma(k, k);
  for (Eigen::Index j = 0; j < k; ++j) gamma.row(j) = v.row(j) / std::sqrt(c(j));
  out.cols = gamma * sv.asDiagonal();
  out.rows = r.cwiseInverse().asDiagonal() * p * gamma;
  return out;
}

inline BipartiteAdjacency from_dense(const Eigen::MatrixXd& m) {
  BipartiteAdjacency adj;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    adj.col_labels.push_back("c" + std::to_string(j));
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    adj.row_labels.push_back("r" + std::to_string(i));
    std::vector<std::uint32_t> row;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) row.push_back(static_cast<std::uint32_t>(j));
    }
    adj.rows.push_back(row);
  }
  return adj;
}

// Random 0/1 matrix with no empty row or column.
inline Eigen::MatrixXd random_binary(std::mt19937_64& rng, Eigen::Index rows,
                                     Eigen::Index cols, double density) {
  std::bernoulli_distribution coin(density);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = coin(rng) ? 1.0 : 0.0;
    if (m.row(i).sum() == 0) m(i, static_cast<Eigen::Index>(rng() % cols)) = 1.0;
  }
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (m.col(j).sum() == 0) m(static_cast<Eigen::Index>(rng() % rows), j) = 1.0;
  }
  return m;
}

inline double abs_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd x = a.array() - a.mean();
  const Eigen::VectorXd y = b.array() - b.mean();
  return std::fabs(x.dot(y)) / std::sqrt(x.squaredNorm() * y.squaredNorm());
}

}  // namespace latentprop::testing

#endif  // LATENTPROP_TESTS_CA_ORACLE_HPP_
