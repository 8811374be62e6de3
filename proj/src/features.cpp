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

#include "latentprop/features.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "latentprop/error.hpp"

namespace latentprop {
namespace {

double minkowski(FeatureView a, FeatureView b, double p) {
  double acc = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      acc += d * d;
    }
    return std::sqrt(acc);
  }
  if (p == 1.0) {
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::pow(std::abs(a[i] - b[i]), p);
  }
  return std::pow(acc, 1.0 / p);
}

void require_nonempty(std::span<const NodeId> nodes, const char* what) {
  if (nodes.empty()) {
    throw Error(ErrorCode::kEmpty, std::string(what) + " of an empty node set");
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, std::size_t line) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, "not a number: '" + text + "'");
  }
  return value;
}

}  // namespace

NormOrder::NormOrder(double p) : p_(p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::kInvalidArgument,
                "norm order p must lie in [1, inf), got " + format_double(p));
  }
}

double distance(FeatureView a, FeatureView b, NormOrder p) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature dimensions differ: " + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()));
  }
  return minkowski(a, b, p.value());
}

FeatureStore::FeatureStore(std::size_t node_count, std::size_t dimension)
    : dim_(dimension),
      values_(node_count * dimension, 0.0),
      provenance_(node_count, Provenance::kAbsent),
      steps_(node_count, -1) {
  if (dimension == 0) {
    throw Error(ErrorCode::kInvalidArgument, "feature dimension must be >= 1");
  }
}

Provenance FeatureStore::provenance(NodeId v) const {
  if (v >= provenance_.size()) {
    throw Error(ErrorCode::kNotFound,
                "node id " + std::to_string(v) + " outside feature store");
  }
  return provenance_[v];
}

int FeatureStore::step(NodeId v) const {
  return provenance(v) == Provenance::kEstimated ? steps_[v] : -1;
}

FeatureView FeatureStore::feature(NodeId v) const {
  if (!has(v)) {
    throw Error(ErrorCode::kMissingFeature,
                "node id " + std::to_string(v) + " has no feature");
  }
  return {values_.data() + static_cast<std::size_t>(v) * dim_, dim_};
}

void FeatureStore::check_write(NodeId v, FeatureView value) const {
  if (v >= provenance_.size()) {
    throw Error(ErrorCode::kNotFound,
                "node id " + std::to_string(v) + " outside feature store");
  }
  if (value.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(dim_) + " components, got " +
                    std::to_string(value.size()));
  }
  for (const double x : value) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite feature component");
    }
  }
  if (provenance_[v] == Provenance::kKnown) {
    throw Error(ErrorCode::kInvalidArgument,
                "known feature of node id " + std::to_string(v) +
                    " cannot be overwritten");
  }
}

void FeatureStore::set_known(NodeId v, FeatureView value) {
  check_write(v, value);
  if (provenance_[v] == Provenance::kAbsent) ++populated_;
  std::copy(value.begin(), value.end(),
            values_.begin() + static_cast<std::ptrdiff_t>(v * dim_));
  provenance_[v] = Provenance::kKnown;
  steps_[v] = -1;
}

void FeatureStore::set_estimated(NodeId v, FeatureView value, int step) {
  check_write(v, value);
  if (provenance_[v] == Provenance::kAbsent) ++populated_;
  std::copy(value.begin(), value.end(),
            values_.begin() + static_cast<std::ptrdiff_t>(v * dim_));
  provenance_[v] = Provenance::kEstimated;
  steps_[v] = step;
}

NodeSet FeatureStore::nodes() const {
  NodeSet out;
  out.reserve(populated_);
  for (NodeId v = 0; v < provenance_.size(); ++v) {
    if (provenance_[v] != Provenance::kAbsent) out.push_back(v);
  }
  return out;
}

double estimation_error(FeatureView estimate, FeatureView truth, NormOrder p) {
  return distance(estimate, truth, p);
}

double mean_error(std::span<const NodeId> nodes, const FeatureStore& estimates,
                  const FeatureStore& truth, NormOrder p) {
  require_nonempty(nodes, "mean error");
  double total = 0.0;
  for (const NodeId v : nodes) {
    total += estimation_error(estimates.feature(v), truth.feature(v), p);
  }
  return total / static_cast<double>(nodes.size());
}

FeatureVector centroid(std::span<const NodeId> nodes, const FeatureStore& store) {
  require_nonempty(nodes, "centroid");
  FeatureVector c(store.dimension(), 0.0);
  for (const NodeId v : nodes) {
    const FeatureView f = store.feature(v);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += f[i];
  }
  for (double& x : c) x /= static_cast<double>(nodes.size());
  return c;
}

double incoherence(std::span<const NodeId> nodes, const FeatureStore& store,
                   NormOrder p) {
  require_nonempty(nodes, "incoherence");
  if (nodes.size() == 1) {
    store.feature(nodes.front());
    return 0.0;
  }
  const FeatureVector c = centroid(nodes, store);
  double acc = 0.0;
  for (const NodeId v : nodes) {
    const double d = minkowski(store.feature(v), c, p.value());
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(nodes.size()));
}

double incoherence(std::span<const FeatureView> points, NormOrder p) {
  if (points.empty()) {
    throw Error(ErrorCode::kEmpty, "incoherence of an empty point set");
  }
  if (points.size() == 1) return 0.0;
  FeatureVector c(points.front().size(), 0.0);
  for (const FeatureView f : points) {
    if (f.size() != c.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "mixed feature dimensions");
    }
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += f[i];
  }
  for (double& x : c) x /= static_cast<double>(points.size());
  double acc = 0.0;
  for (const FeatureView f : points) {
    const double d = minkowski(f, c, p.value());
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(points.size()));
}

NeighborhoodCoherence neighborhood_coherence(const DirectedGraph& g,
                                             const FeatureStore& store,
                                             std::span<const NodeId> nodes,
                                             Direction d, NormOrder p) {
  for (const NodeId v : nodes) store.feature(v);
  const NodeMask in_set(g.node_count(), nodes);
  NeighborhoodCoherence out;
  out.neighborhood = neighborhood_of_set(g, nodes, d);
  out.incoherence.reserve(out.neighborhood.size());
  std::vector<FeatureView> back;
  for (const NodeId u : out.neighborhood) {
    back.clear();
    for (const NodeId w : g.neighbors(u, opposite(d))) {
      if (in_set.test(w)) back.push_back(store.feature(w));
    }
    out.incoherence.push_back(incoherence(back, p));
  }
  return out;
}

NodeSet coherent_neighborhood(const DirectedGraph& g, const FeatureStore& store,
                              std::span<const NodeId> nodes, Direction d,
                              double epsilon, NormOrder p) {
  if (!(epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be >= 0");
  }
  const auto scored = neighborhood_coherence(g, store, nodes, d, p);
  NodeSet out;
  for (std::size_t i = 0; i < scored.neighborhood.size(); ++i) {
    if (scored.incoherence[i] <= epsilon) out.push_back(scored.neighborhood[i]);
  }
  return out;
}

FeatureStore load_features(std::istream& in, const DirectedGraph& g,
                           std::size_t* skipped) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kEmpty, "features file is empty");
  }
  auto header = split_csv(line);
  bool has_provenance = !header.empty() && header.back() == "provenance";
  if (has_provenance) header.pop_back();
  if (header.size() < 2) {
    throw ParseError(1, "header must be node_label,f1,...,fN");
  }
  const std::size_t dim = header.size() - 1;
  FeatureStore store(g.node_count(), dim);
  std::size_t line_no = 1;
  std::size_t skip_count = 0;
  FeatureVector value(dim);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv(line);
    if (has_provenance && fields.size() == dim + 2) fields.pop_back();
    if (fields.size() != dim + 1) {
      throw ParseError(line_no, "expected " + std::to_string(dim + 1) +
                                    " fields, got " +
                                    std::to_string(fields.size()));
    }
    NodeId v = 0;
    if (!g.find(fields[0], &v)) {
      ++skip_count;
      continue;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      value[i] = parse_double(fields[i + 1], line_no);
    }
    if (store.has(v)) {
      throw ParseError(line_no, "duplicate node '" + fields[0] + "'");
    }
    store.set_known(v, value);
  }
  if (skipped != nullptr) *skipped = skip_count;
  return store;
}

FeatureStore load_features_file(const std::string& path, const DirectedGraph& g,
                                std::size_t* skipped) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open features '" + path + "'");
  return load_features(in, g, skipped);
}

void write_features(std::ostream& out, const FeatureStore& store,
                    const DirectedGraph& g, bool with_provenance) {
  out << "node_label";
  for (std::size_t i = 1; i <= store.dimension(); ++i) out << ",f" << i;
  if (with_provenance) out << ",provenance";
  out << '\n';
  for (const NodeId v : store.nodes()) {
    out << g.label(v);
    for (const double x : store.feature(v)) out << ',' << format_double(x);
    if (with_provenance) {
      if (store.provenance(v) == Provenance::kKnown) {
        out << ",known";
      } else {
        out << ",estimated:" << store.step(v);
      }
    }
    out << '\n';
  }
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace latentprop
