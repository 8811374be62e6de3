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

#include "latentprop/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "latentprop/error.hpp"
#include "latentprop/method_a.hpp"
#include "latentprop/method_b.hpp"
#include "latentprop/parallel.hpp"
#include "latentprop/rng.hpp"

namespace latentprop {

const char* const kReportCsvHeader =
    "epsilon,method,direction,fold,stat,error,size_delta_v,size_pivots,coverage";

namespace {

std::string opt(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string();
}

double stat_of(const ErrorStats& s, int which) {
  switch (which) {
    case 0: return s.median;
    case 1: return s.min;
    case 2: return s.max;
    default: return s.mean;
  }
}

constexpr const char* kStatNames[] = {"median", "min", "max", "mean"};

void check_epsilons(std::span<const double> epsilons) {
  if (epsilons.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon grid is empty");
  }
  for (const double e : epsilons) {
    if (!(e >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "epsilon values must be >= 0");
    }
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[order[t]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

NodeSet spatial_uniform_sample(const FeatureStore& store,
                               std::span<const NodeId> nodes, std::size_t n,
                               std::size_t grid_bins, std::uint64_t seed) {
  if (n > nodes.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot sample " + std::to_string(n) + " of " +
                    std::to_string(nodes.size()) + " nodes");
  }
  if (grid_bins < 1) {
    throw Error(ErrorCode::kInvalidArgument, "grid_bins must be >= 1");
  }
  NodeSet pool = make_node_set({nodes.begin(), nodes.end()});
  if (n == pool.size()) return pool;

  const std::size_t dim = store.dimension();
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (const NodeId v : pool) {
    const FeatureView f = store.feature(v);
    for (std::size_t k = 0; k < dim; ++k) {
      lo[k] = std::min(lo[k], f[k]);
      hi[k] = std::max(hi[k], f[k]);
    }
  }
  std::map<std::vector<std::size_t>, std::vector<NodeId>> cells;
  std::vector<std::size_t> key(dim);
  for (const NodeId v : pool) {
    const FeatureView f = store.feature(v);
    for (std::size_t k = 0; k < dim; ++k) {
      const double span = hi[k] - lo[k];
      std::size_t bin = 0;
      if (span > 0.0) {
        bin = static_cast<std::size_t>((f[k] - lo[k]) / span *
                                       static_cast<double>(grid_bins));
        bin = std::min(bin, grid_bins - 1);
      }
      key[k] = bin;
    }
    cells[key].push_back(v);
  }

  std::vector<std::vector<NodeId>*> active;
  for (auto& [cell, members] : cells) active.push_back(&members);
  Rng rng(seed);
  NodeSet out;
  out.reserve(n);
  while (out.size() < n) {
    rng.shuffle(std::span(active));
    for (auto* members : active) {
      if (out.size() == n) break;
      const std::size_t pick = rng.below(members->size());
      out.push_back((*members)[pick]);
      (*members)[pick] = members->back();
      members->pop_back();
    }
    std::erase_if(active, [](const auto* m) { return m->empty(); });
  }
  normalize(out);
  return out;
}

ErrorStats summarize(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmpty, "cannot summarize an empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  ErrorStats s;
  s.min = sorted.front();
  s.max = sorted.back();
  const std::size_t m = sorted.size();
  s.median = m % 2 == 1 ? sorted[m / 2]
                        : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  double total = 0.0;
  for (const double x : values) total += x;
  s.mean = total / static_cast<double>(m);
  return s;
}

EvaluationReport sweep_method_a(const DirectedGraph& g, const FeatureStore& truth,
                                std::span<const NodeId> seed_set, Direction d,
                                std::span<const double> epsilons,
                                const EvaluationOptions& options) {
  check_epsilons(epsilons);
  EvaluationReport report;
  report.protocol = "sweep-a";
  report.direction = d;
  report.p = options.p.value();
  report.seed_set_size = make_node_set({seed_set.begin(), seed_set.end()}).size();
  report.epsilons.assign(epsilons.begin(), epsilons.end());
  report.sweep.resize(epsilons.size());

  const NodeSet seed = make_node_set({seed_set.begin(), seed_set.end()});
  const FeatureVector seed_centroid = centroid(seed, truth);

  parallel_for(epsilons.size(), options.threads, [&](std::size_t i) {
    PropagationParams params;
    params.direction = d;
    params.epsilon = epsilons[i];
    params.p = options.p;
    PropagationState state = init_state(g, truth, seed, params);
    const StepDelta delta = step_method_a(state, g);

    SweepRow& row = report.sweep[i];
    row.epsilon = epsilons[i];
    row.delta_size = delta.added.size();
    std::vector<double> errors;
    double centroid_total = 0.0;
    for (const NodeId v : delta.added) {
      if (!truth.has(v)) continue;
      errors.push_back(estimation_error(state.estimates().feature(v),
                                        truth.feature(v), options.p));
      centroid_total +=
          estimation_error(seed_centroid, truth.feature(v), options.p);
    }
    row.evaluated = errors.size();
    if (!errors.empty()) {
      row.error = summarize(errors);
      row.centroid_error = centroid_total / static_cast<double>(errors.size());
    }
  });
  return report;
}

std::vector<std::vector<NodeId>> kfold_partition(std::span<const NodeId> nodes,
                                                 std::size_t k,
                                                 std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "k must be >= 2");
  NodeSet shuffled = make_node_set({nodes.begin(), nodes.end()});
  if (k > shuffled.size()) {
    throw Error(ErrorCode::kEmpty,
                "k = " + std::to_string(k) + " exceeds the " +
                    std::to_string(shuffled.size()) + " featured nodes");
  }
  Rng rng(seed);
  rng.shuffle(std::span(shuffled));
  std::vector<std::vector<NodeId>> folds(k);
  const std::size_t n = shuffled.size();
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t begin = f * n / k;
    const std::size_t end = (f + 1) * n / k;
    folds[f].assign(shuffled.begin() + static_cast<std::ptrdiff_t>(begin),
                    shuffled.begin() + static_cast<std::ptrdiff_t>(end));
    normalize(folds[f]);
  }
  return folds;
}

EvaluationReport kfold_eval_method_b(const DirectedGraph& g,
                                     const FeatureStore& truth,
                                     std::span<const NodeId> seed_set,
                                     std::size_t k, Direction d,
                                     std::span<const double> epsilons,
                                     std::uint64_t seed,
                                     const EvaluationOptions& options) {
  check_epsilons(epsilons);
  const NodeSet all = make_node_set({seed_set.begin(), seed_set.end()});
  for (const NodeId v : all) {
    if (truth.provenance(v) != Provenance::kKnown) {
      throw Error(ErrorCode::kMissingFeature,
                  "node '" + g.label(v) + "' of the evaluation set has no feature");
    }
  }
  const auto folds = kfold_partition(all, k, seed);

  EvaluationReport report;
  report.protocol = "kfold-b";
  report.direction = d;
  report.p = options.p.value();
  report.k = k;
  report.seed = seed;
  report.seed_set_size = all.size();
  report.epsilons.assign(epsilons.begin(), epsilons.end());
  report.folds.resize(k * epsilons.size());

  parallel_for(k, options.threads, [&](std::size_t f) {
    const NodeSet& test = folds[f];
    NodeSet train;
    std::set_difference(all.begin(), all.end(), test.begin(), test.end(),
                        std::back_inserter(train));
    const FeatureVector train_centroid = centroid(train, truth);
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      PropagationParams params;
      params.direction = d;
      params.epsilon = epsilons[e];
      params.p = options.p;
      params.candidate_test = options.candidate_test;
      const PropagationState state = init_state(g, truth, train, params);
      const PivotSet pivots = compute_pivots(state, g);
      const auto outcomes = evaluate_candidates(state, g, pivots, test);

      FoldRow& row = report.folds[e * k + f];
      row.epsilon = epsilons[e];
      row.fold = f;
      row.test_size = test.size();
      row.pivot_count = pivots.nodes.size();
      double total = 0.0;
      double centroid_total = 0.0;
      for (const CandidateOutcome& o : outcomes) {
        if (!o.accepted) continue;
        ++row.recovered;
        total += estimation_error(o.estimate, truth.feature(o.node), options.p);
        centroid_total += estimation_error(train_centroid,
                                           truth.feature(o.node), options.p);
      }
      row.coverage = static_cast<double>(row.recovered) /
                     static_cast<double>(row.test_size);
      if (row.recovered > 0) {
        row.error = total / static_cast<double>(row.recovered);
        row.centroid_error =
            centroid_total / static_cast<double>(row.recovered);
      }
    }
  });
  return report;
}

std::vector<FoldSummary> EvaluationReport::fold_summaries() const {
  std::vector<FoldSummary> out;
  if (folds.empty()) return out;
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    std::vector<double> errors;
    std::vector<double> coverage;
    std::vector<double> recovered;
    std::vector<double> pivots;
    for (std::size_t f = 0; f < k; ++f) {
      const FoldRow& row = folds[e * k + f];
      if (row.error) errors.push_back(*row.error);
      coverage.push_back(row.coverage);
      recovered.push_back(static_cast<double>(row.recovered));
      pivots.push_back(static_cast<double>(row.pivot_count));
    }
    FoldSummary s;
    s.epsilon = epsilons[e];
    s.folds_with_error = errors.size();
    if (!errors.empty()) s.error = summarize(errors);
    s.coverage = summarize(coverage);
    s.recovered = summarize(recovered);
    s.pivot_count = summarize(pivots);
    out.push_back(s);
  }
  return out;
}

void EvaluationReport::write_csv(std::ostream& out) const {
  out << kReportCsvHeader << '\n';
  const std::string dir(to_string(direction));
  if (protocol == "sweep-a") {
    for (const SweepRow& row : sweep) {
      for (int s = 0; s < 4; ++s) {
        out << format_double(row.epsilon) << ",a," << dir << ",all,"
            << kStatNames[s] << ','
            << (row.error ? format_double(stat_of(*row.error, s)) : "") << ','
            << row.delta_size << ",,\n";
      }
    }
    return;
  }
  const auto summaries = fold_summaries();
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    const std::string eps = format_double(epsilons[e]);
    for (std::size_t f = 0; f < k; ++f) {
      const FoldRow& row = folds[e * k + f];
      out << eps << ",b," << dir << ',' << f << ",value," << opt(row.error)
          << ',' << row.recovered << ',' << row.pivot_count << ','
          << format_double(row.coverage) << '\n';
    }
    const FoldSummary& s = summaries[e];
    for (int st = 0; st < 4; ++st) {
      out << eps << ",b," << dir << ",all," << kStatNames[st] << ','
          << (s.error ? format_double(stat_of(*s.error, st)) : "") << ','
          << format_double(stat_of(s.recovered, st)) << ','
          << format_double(stat_of(s.pivot_count, st)) << ','
          << format_double(stat_of(s.coverage, st)) << '\n';
    }
  }
}

std::string EvaluationReport::to_json() const {
  using nlohmann::ordered_json;
  const auto stats = [](const ErrorStats& s) {
    return ordered_json{{"mean", s.mean},
                        {"median", s.median},
                        {"min", s.min},
                        {"max", s.max}};
  };
  const auto maybe = [](const std::optional<double>& x) {
    return x ? ordered_json(*x) : ordered_json(nullptr);
  };
  ordered_json j;
  j["protocol"] = protocol;
  j["direction"] = std::string(to_string(direction));
  j["p"] = p;
  if (protocol == "kfold-b") {
    j["k"] = k;
    j["seed"] = seed;
  }
  j["seed_set_size"] = seed_set_size;
  j["epsilons"] = epsilons;
  if (protocol == "sweep-a") {
    ordered_json rows = ordered_json::array();
    for (const SweepRow& row : sweep) {
      ordered_json r;
      r["epsilon"] = row.epsilon;
      r["size_delta_v"] = row.delta_size;
      r["evaluated"] = row.evaluated;
      r["error"] = row.error ? stats(*row.error) : ordered_json(nullptr);
      r["error_absent"] = !row.error.has_value();
      r["centroid_error"] = maybe(row.centroid_error);
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
  } else {
    ordered_json rows = ordered_json::array();
    for (const FoldRow& row : folds) {
      rows.push_back({{"epsilon", row.epsilon},
                      {"fold", row.fold},
                      {"test_size", row.test_size},
                      {"recovered", row.recovered},
                      {"size_pivots", row.pivot_count},
                      {"coverage", row.coverage},
                      {"error", maybe(row.error)},
                      {"centroid_error", maybe(row.centroid_error)}});
    }
    j["folds"] = std::move(rows);
    ordered_json agg = ordered_json::array();
    for (const FoldSummary& s : fold_summaries()) {
      agg.push_back({{"epsilon", s.epsilon},
                     {"folds_with_error", s.folds_with_error},
                     {"error", s.error ? stats(*s.error) : ordered_json(nullptr)},
                     {"coverage", stats(s.coverage)},
                     {"recovered", stats(s.recovered)},
                     {"size_pivots", stats(s.pivot_count)}});
    }
    j["aggregate"] = std::move(agg);
  }
  return j.dump(2);
}

void merge_report_csv(std::span<const std::string> paths, std::ostream& out) {
  if (paths.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no reports to merge");
  }
  out << kReportCsvHeader << '\n';
  for (const std::string& path : paths) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIo, "cannot open report '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) {
      throw Error(ErrorCode::kParse, "report '" + path + "' is empty");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kReportCsvHeader) {
      throw Error(ErrorCode::kParse,
                  "report '" + path + "' does not have the standard header");
    }
    while (std::getline(in, line)) {
      if (!line.empty()) out << line << '\n';
    }
  }
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "correlation needs two equally sized samples of size >= 2");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw Error(ErrorCode::kUndefined, "correlation of a constant sample");
  }
  return sxy / std::sqrt(sxx * syy);
}

double spearman_correlation(std::span<const double> x,
                            std::span<const double> y) {
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  return pearson_correlation(rx, ry);
}

std::vector<ExternalCorrelation> correlate_with_external(
    const FeatureStore& positions, const std::map<NodeId, std::string>& groups,
    const ExternalScores& scores) {
  std::vector<ExternalCorrelation> out;
  const std::size_t dim = positions.dimension();
  for (std::size_t c = 0; c < scores.criteria.size(); ++c) {
    // group -> (score, per-dimension coordinate sums, count)
    struct Acc {
      double score = 0.0;
      std::vector<double> sum;
      std::size_t count = 0;
    };
    std::map<std::string, Acc> matched;
    std::vector<NodeId> nodes;
    for (const auto& [v, group] : groups) {
      if (!positions.has(v)) continue;
      const auto it = scores.values.find(group);
      if (it == scores.values.end() || std::isnan(it->second.at(c))) continue;
      Acc& acc = matched[group];
      if (acc.sum.empty()) {
        acc.sum.assign(dim, 0.0);
        acc.score = it->second[c];
      }
      const FeatureView f = positions.feature(v);
      for (std::size_t k = 0; k < dim; ++k) acc.sum[k] += f[k];
      ++acc.count;
      nodes.push_back(v);
    }
    if (matched.size() < 3) {
      throw Error(ErrorCode::kInvalidArgument,
                  "criterion '" + scores.criteria[c] + "' matches only " +
                      std::to_string(matched.size()) + " groups (need >= 3)");
    }
    for (std::size_t k = 0; k < dim; ++k) {
      std::vector<double> coord;
      std::vector<double> node_score;
      for (const NodeId v : nodes) {
        coord.push_back(positions.feature(v)[k]);
        node_score.push_back(matched.at(groups.at(v)).score);
      }
      std::vector<double> group_mean;
      std::vector<double> group_score;
      for (const auto& [name, acc] : matched) {
        group_mean.push_back(acc.sum[k] / static_cast<double>(acc.count));
        group_score.push_back(acc.score);
      }
      ExternalCorrelation r;
      r.criterion = scores.criteria[c];
      r.dimension = k;
      r.node_level = pearson_correlation(coord, node_score);
      r.group_level = pearson_correlation(group_mean, group_score);
      r.groups = matched.size();
      r.nodes = nodes.size();
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::map<NodeId, std::string> load_groups(std::istream& in,
                                          const DirectedGraph& g) {
  std::map<NodeId, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split(line, ',');
    if (fields.size() != 2) throw ParseError(line_no, "expected label,group");
    if (line_no == 1 && fields[0] == "node_label") continue;
    NodeId v = 0;
    if (g.find(fields[0], &v)) out[v] = fields[1];
  }
  return out;
}

ExternalScores load_scores(std::istream& in) {
  ExternalScores out;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kEmpty, "scores file is empty");
  auto header = split(line, ',');
  if (header.size() < 2) throw ParseError(1, "expected group,criterion...");
  out.criteria.assign(header.begin() + 1, header.end());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      throw ParseError(line_no, "wrong number of fields");
    }
    std::vector<double> values;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].empty()) {
        values.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      try {
        std::size_t used = 0;
        values.push_back(std::stod(fields[i], &used));
        if (used != fields[i].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(line_no, "not a number: '" + fields[i] + "'");
      }
    }
    out.values[fields[0]] = std::move(values);
  }
  return out;
}

}  // namespace latentprop
