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

#include "latentprop/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

#include "latentprop/error.hpp"
#include "latentprop/rng.hpp"

namespace latentprop {
namespace {

// Matrix-free standardized residual operator over a 0/1 table.
class ResidualOperator {
 public:
  explicit ResidualOperator(const BipartiteAdjacency& adj)
      : adj_(adj),
        total_(static_cast<double>(adj.nonzeros())),
        sqrt_r_(static_cast<Eigen::Index>(adj.row_count())),
        sqrt_c_(static_cast<Eigen::Index>(adj.col_count())) {
    Eigen::VectorXd col_deg = Eigen::VectorXd::Zero(sqrt_c_.size());
    for (std::size_t i = 0; i < adj.row_count(); ++i) {
      sqrt_r_[static_cast<Eigen::Index>(i)] =
          std::sqrt(static_cast<double>(adj.rows[i].size()) / total_);
      for (const auto j : adj.rows[i]) col_deg[j] += 1.0;
    }
    sqrt_c_ = (col_deg / total_).cwiseSqrt();
  }

  Eigen::Index rows() const { return sqrt_r_.size(); }
  Eigen::Index cols() const { return sqrt_c_.size(); }

  // y = S x
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    const double s = sqrt_c_.dot(x);
    Eigen::VectorXd y(rows());
    for (Eigen::Index i = 0; i < rows(); ++i) {
      double acc = 0.0;
      for (const auto j : adj_.rows[static_cast<std::size_t>(i)]) {
        acc += x[j] / sqrt_c_[j];
      }
      const double r = sqrt_r_[i] * sqrt_r_[i];
      y[i] = (acc / total_ - r * s) / sqrt_r_[i];
    }
    return y;
  }

  // x = S^T y
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& y) const {
    const double t = sqrt_r_.dot(y);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(cols());
    for (Eigen::Index i = 0; i < rows(); ++i) {
      const double w = y[i] / sqrt_r_[i];
      for (const auto j : adj_.rows[static_cast<std::size_t>(i)]) acc[j] += w;
    }
    Eigen::VectorXd x(cols());
    for (Eigen::Index j = 0; j < cols(); ++j) {
      const double c = sqrt_c_[j] * sqrt_c_[j];
      x[j] = (acc[j] / total_ - c * t) / sqrt_c_[j];
    }
    return x;
  }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd s = -sqrt_r_ * sqrt_c_.transpose();
    for (Eigen::Index i = 0; i < rows(); ++i) {
      for (const auto j : adj_.rows[static_cast<std::size_t>(i)]) {
        s(i, j) += 1.0 / total_ / (sqrt_r_[i] * sqrt_c_[j]);
      }
    }
    return s;
  }

  // ||S||_F^2 = sum over nonzeros of 1 / (row degree * column degree) - 1.
  double total_inertia() const {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < rows(); ++i) {
      for (const auto j : adj_.rows[static_cast<std::size_t>(i)]) {
        acc += 1.0 / (sqrt_r_[i] * sqrt_r_[i] * sqrt_c_[j] * sqrt_c_[j]);
      }
    }
    return std::max(0.0, acc / (total_ * total_) - 1.0);
  }

  const Eigen::VectorXd& sqrt_row_masses() const { return sqrt_r_; }
  const Eigen::VectorXd& sqrt_col_masses() const { return sqrt_c_; }

 private:
  const BipartiteAdjacency& adj_;
  double total_;
  Eigen::VectorXd sqrt_r_;
  Eigen::VectorXd sqrt_c_;
};

struct Triplets {
  Eigen::MatrixXd u;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd v;
};

Triplets dense_svd(const ResidualOperator& op) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(op.dense(),
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

// Golub-Kahan-Lanczos bidiagonalization with full reorthogonalization. The
// Krylov dimension doubles until the leading `wanted` Ritz triplets have
// residual <= tolerance * sigma_1 or the subspace is exhausted.
Triplets lanczos_svd(const ResidualOperator& op, std::size_t wanted,
                     double tolerance, std::uint64_t seed) {
  const auto m = op.rows();
  const auto n = op.cols();
  const Eigen::Index full = std::min(m, n);
  Eigen::Index k = std::min<Eigen::Index>(
      full, static_cast<Eigen::Index>(2 * wanted + 20));

  for (;;) {
    Eigen::MatrixXd U = Eigen::MatrixXd::Zero(m, k);
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, k);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);

    Rng rng(seed);
    Eigen::VectorXd v(n);
    for (Eigen::Index j = 0; j < n; ++j) v[j] = rng.normal();
    v.normalize();

    Eigen::Index steps = 0;
    bool exhausted = false;
    Eigen::VectorXd u_prev = Eigen::VectorXd::Zero(m);
    double beta_prev = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      V.col(j) = v;
      Eigen::VectorXd u = op.apply(v) - beta_prev * u_prev;
      for (int pass = 0; pass < 2; ++pass) {
        u -= U.leftCols(j) * (U.leftCols(j).transpose() * u);
      }
      alpha[j] = u.norm();
      if (alpha[j] <= 1e-14) {
        exhausted = true;
        break;
      }
      u /= alpha[j];
      U.col(j) = u;
      steps = j + 1;

      Eigen::VectorXd w = op.apply_transpose(u) - alpha[j] * v;
      for (int pass = 0; pass < 2; ++pass) {
        w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
      }
      beta[j] = w.norm();
      if (beta[j] <= 1e-14) {
        exhausted = true;
        break;
      }
      v = w / beta[j];
      u_prev = u;
      beta_prev = beta[j];
    }

    if (steps == 0) {
      return {Eigen::MatrixXd(m, 0), Eigen::VectorXd(0), Eigen::MatrixXd(n, 0)};
    }

    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(steps, steps);
    for (Eigen::Index j = 0; j < steps; ++j) {
      B(j, j) = alpha[j];
      if (j + 1 < steps) B(j, j + 1) = beta[j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> small(
        B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sigma = small.singularValues();

    bool converged = exhausted || steps == full;
    if (!converged) {
      converged = true;
      const double scale = std::max(sigma[0], 1e-300);
      const double tail = beta[steps - 1];
      const auto check = std::min<Eigen::Index>(
          steps, static_cast<Eigen::Index>(wanted));
      for (Eigen::Index i = 0; i < check; ++i) {
        if (tail * std::abs(small.matrixU()(steps - 1, i)) > tolerance * scale) {
          converged = false;
          break;
        }
      }
    }
    if (converged) {
      return {U.leftCols(steps) * small.matrixU(), sigma,
              V.leftCols(steps) * small.matrixV()};
    }
    k = std::min(full, 2 * k);
  }
}

}  // namespace

std::size_t BipartiteAdjacency::nonzeros() const noexcept {
  std::size_t nnz = 0;
  for (const auto& r : rows) nnz += r.size();
  return nnz;
}

Eigen::MatrixXd BipartiteAdjacency::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(row_count()),
      static_cast<Eigen::Index>(col_count()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto j : rows[i]) m(static_cast<Eigen::Index>(i), j) = 1.0;
  }
  return m;
}

BipartiteAdjacency build_bipartite(const DirectedGraph& g,
                                   std::span<const NodeId> elites) {
  if (elites.empty()) {
    throw Error(ErrorCode::kEmpty, "no elite nodes given");
  }
  std::vector<std::int64_t> column(g.node_count(), -1);
  BipartiteAdjacency adj;
  for (const NodeId e : elites) {
    if (!g.contains(e)) {
      throw Error(ErrorCode::kNotFound, "elite node id not in graph");
    }
    if (column[e] >= 0) continue;
    column[e] = static_cast<std::int64_t>(adj.col_labels.size());
    adj.col_labels.push_back(g.label(e));
  }
  for (NodeId u = 0; u < g.node_count(); ++u) {
    std::vector<std::uint32_t> row;
    for (const NodeId v : g.neighbors(u, Direction::kUp)) {
      if (column[v] >= 0) row.push_back(static_cast<std::uint32_t>(column[v]));
    }
    if (row.empty()) continue;
    std::sort(row.begin(), row.end());
    adj.row_labels.push_back(g.label(u));
    adj.rows.push_back(std::move(row));
  }
  return adj;
}

FilteredBipartite filter_bipartite(const BipartiteAdjacency& adj,
                                   int min_degree) {
  if (min_degree < 1) {
    throw Error(ErrorCode::kInvalidArgument, "min_degree must be >= 1");
  }
  FilteredBipartite out;
  std::map<std::vector<std::uint32_t>, std::size_t> first_with_pattern;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < adj.rows.size(); ++i) {
    if (adj.rows[i].size() < static_cast<std::size_t>(min_degree)) {
      ++out.removed_low_degree;
      continue;
    }
    const auto [it, inserted] = first_with_pattern.emplace(adj.rows[i], i);
    if (!inserted) {
      out.duplicates.emplace_back(adj.row_labels[i], adj.row_labels[it->second]);
      continue;
    }
    kept.push_back(i);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kEmpty,
                "no rows left after filtering (min degree " +
                    std::to_string(min_degree) + ")");
  }

  std::vector<std::int64_t> remap(adj.col_count(), -1);
  for (const std::size_t i : kept) {
    for (const auto j : adj.rows[i]) remap[j] = 0;
  }
  for (std::size_t j = 0; j < adj.col_count(); ++j) {
    if (remap[j] < 0) {
      ++out.removed_columns;
      continue;
    }
    remap[j] = static_cast<std::int64_t>(out.matrix.col_labels.size());
    out.matrix.col_labels.push_back(adj.col_labels[j]);
  }
  for (const std::size_t i : kept) {
    std::vector<std::uint32_t> row;
    row.reserve(adj.rows[i].size());
    for (const auto j : adj.rows[i]) {
      row.push_back(static_cast<std::uint32_t>(remap[j]));
    }
    out.matrix.row_labels.push_back(adj.row_labels[i]);
    out.matrix.rows.push_back(std::move(row));
  }
  return out;
}

ScalingResult correspondence_analysis(const BipartiteAdjacency& adj,
                                      std::size_t n_dims,
                                      const ScalingOptions& options) {
  if (n_dims < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_dims must be >= 1");
  }
  if (adj.nonzeros() == 0) {
    throw Error(ErrorCode::kEmpty, "correspondence analysis of an empty table");
  }
  for (const auto& row : adj.rows) {
    if (row.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "table has an all-zero row; filter it first");
    }
  }
  const ResidualOperator op(adj);
  for (Eigen::Index j = 0; j < op.cols(); ++j) {
    if (op.sqrt_col_masses()[j] == 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "table has an all-zero column; filter it first");
    }
  }

  SvdMethod method = options.method;
  if (method == SvdMethod::kAuto) {
    method = (adj.row_count() < options.dense_limit &&
              adj.col_count() < options.dense_limit)
                 ? SvdMethod::kDense
                 : SvdMethod::kLanczos;
  }
  const Triplets t = method == SvdMethod::kDense
                         ? dense_svd(op)
                         : lanczos_svd(op, n_dims, options.tolerance,
                                       options.seed);

  ScalingResult result;
  result.method_used = method;
  result.dims = n_dims;
  result.total_inertia = op.total_inertia();
  result.row_masses = op.sqrt_row_masses().cwiseAbs2();
  result.col_masses = op.sqrt_col_masses().cwiseAbs2();
  for (Eigen::Index k = 0; k < t.sigma.size(); ++k) {
    result.singular_values.push_back(t.sigma[k]);
    result.inertia_fraction.push_back(
        result.total_inertia > 0.0
            ? t.sigma[k] * t.sigma[k] / result.total_inertia
            : 0.0);
    if (t.sigma[k] > options.rank_tolerance) ++result.rank;
  }
  if (result.rank < n_dims && options.require_rank) {
    throw RankDeficientError(result.rank, n_dims);
  }

  const auto dims = static_cast<Eigen::Index>(n_dims);
  const auto usable = std::min<Eigen::Index>(
      dims, static_cast<Eigen::Index>(result.rank));
  result.row_coords = Eigen::MatrixXd::Zero(op.rows(), dims);
  result.col_coords = Eigen::MatrixXd::Zero(op.cols(), dims);
  for (Eigen::Index k = 0; k < usable; ++k) {
    Eigen::VectorXd rows =
        t.u.col(k).cwiseQuotient(op.sqrt_row_masses()) * t.sigma[k];
    Eigen::VectorXd cols =
        t.v.col(k).cwiseQuotient(op.sqrt_col_masses()) * t.sigma[k];
    Eigen::Index pivot = 0;
    cols.cwiseAbs().maxCoeff(&pivot);
    if (cols[pivot] < 0.0) {
      rows = -rows;
      cols = -cols;
    }
    result.row_coords.col(k) = rows;
    result.col_coords.col(k) = cols;
  }
  return result;
}

FeatureStore seed_features_from_scaling(const ScalingResult& result,
                                        const FilteredBipartite& filtered,
                                        const DirectedGraph& g) {
  if (result.dims < 1) {
    throw Error(ErrorCode::kInvalidArgument, "scaling result has no dimensions");
  }
  const auto& labels = filtered.matrix.row_labels;
  if (static_cast<std::size_t>(result.row_coords.rows()) != labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "scaling result does not match the filtered table");
  }
  FeatureStore store(g.node_count(), result.dims);
  std::map<std::string, std::size_t> row_of;
  FeatureVector f(result.dims);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    row_of.emplace(labels[i], i);
    for (std::size_t k = 0; k < result.dims; ++k) {
      f[k] = result.row_coords(static_cast<Eigen::Index>(i),
                               static_cast<Eigen::Index>(k));
    }
    store.set_known(g.id(labels[i]), f);
  }
  for (const auto& [duplicate, representative] : filtered.duplicates) {
    const NodeId rep = g.id(representative);
    const FeatureVector copy(store.feature(rep).begin(),
                             store.feature(rep).end());
    store.set_known(g.id(duplicate), copy);
  }
  return store;
}

void write_column_coordinates(std::ostream& out, const ScalingResult& result,
                              const BipartiteAdjacency& adj) {
  out << "label";
  for (std::size_t k = 1; k <= result.dims; ++k) out << ",f" << k;
  out << '\n';
  for (std::size_t j = 0; j < adj.col_count(); ++j) {
    out << adj.col_labels[j];
    for (std::size_t k = 0; k < result.dims; ++k) {
      out << ',' << format_double(result.col_coords(
                        static_cast<Eigen::Index>(j),
                        static_cast<Eigen::Index>(k)));
    }
    out << '\n';
  }
}

std::string scaling_report_json(const ScalingResult& result,
                                const FilteredBipartite& filtered) {
  nlohmann::ordered_json j;
  j["rows"] = filtered.matrix.row_count();
  j["columns"] = filtered.matrix.col_count();
  j["nonzeros"] = filtered.matrix.nonzeros();
  j["removed_low_degree"] = filtered.removed_low_degree;
  j["removed_duplicates"] = filtered.duplicates.size();
  j["removed_columns"] = filtered.removed_columns;
  j["dims"] = result.dims;
  j["rank"] = result.rank;
  j["svd"] = result.method_used == SvdMethod::kDense ? "dense" : "lanczos";
  j["total_inertia"] = result.total_inertia;
  j["singular_values"] = result.singular_values;
  j["inertia_fraction"] = result.inertia_fraction;
  return j.dump(2);
}

NodeSet load_node_list(std::istream& in, const DirectedGraph& g) {
  NodeSet out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    NodeId v = 0;
    const std::string label = line.substr(start);
    if (!g.find(label, &v)) {
      throw Error(ErrorCode::kNotFound, "line " + std::to_string(line_no) +
                                            ": node '" + label +
                                            "' is not in the graph");
    }
    out.push_back(v);
  }
  normalize(out);
  return out;
}

NodeSet load_node_list_file(const std::string& path, const DirectedGraph& g) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open node list '" + path + "'");
  return load_node_list(in, g);
}

}  // namespace latentprop
