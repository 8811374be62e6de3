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

// Command-line front end. Talks to the library only through latentprop.h.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "latentprop/latentprop.h"

namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(lprop_status status, const std::string& context) {
  if (status == LPROP_OK) return;
  std::string message = context + ": " + lprop_status_name(status);
  const std::string detail = lprop_last_error();
  if (!detail.empty()) message += ": " + detail;
  throw Failure(message);
}

struct GraphDeleter {
  void operator()(lprop_graph* p) const { lprop_graph_free(p); }
};
struct FeaturesDeleter {
  void operator()(lprop_features* p) const { lprop_features_free(p); }
};
struct ScalingDeleter {
  void operator()(lprop_scaling* p) const { lprop_scaling_free(p); }
};
struct PropagationDeleter {
  void operator()(lprop_propagation* p) const { lprop_propagation_free(p); }
};
struct ReportDeleter {
  void operator()(lprop_report* p) const { lprop_report_free(p); }
};
struct IdsDeleter {
  void operator()(uint32_t* p) const { lprop_free_ids(p); }
};

using Graph = std::unique_ptr<lprop_graph, GraphDeleter>;
using Features = std::unique_ptr<lprop_features, FeaturesDeleter>;
using Scaling = std::unique_ptr<lprop_scaling, ScalingDeleter>;
using Propagation = std::unique_ptr<lprop_propagation, PropagationDeleter>;
using Report = std::unique_ptr<lprop_report, ReportDeleter>;

struct Ids {
  std::unique_ptr<uint32_t, IdsDeleter> data;
  size_t count = 0;
};

// FNV-1a over the file bytes.
std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buffer[1 << 16];
  while (in) {
    in.read(buffer, sizeof(buffer));
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buffer[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

struct Globals {
  unsigned threads = 0;
  std::string out_dir;
};

std::string out_path(const Globals& g, const std::string& path) {
  if (path.empty() || g.out_dir.empty() || fs::path(path).is_absolute()) {
    return path;
  }
  return (fs::path(g.out_dir) / path).string();
}

std::string in_path(const std::string& path) {
  if (!fs::exists(path)) throw Failure("input file '" + path + "' does not exist");
  return path;
}

lprop_direction parse_direction(const std::string& s) {
  return s == "down" ? LPROP_DOWN : LPROP_UP;
}

Graph load_graph(const std::string& path, char separator) {
  lprop_graph* g = nullptr;
  check(lprop_graph_load(in_path(path).c_str(), separator, &g),
        "loading graph '" + path + "'");
  return Graph(g);
}

Features load_features(const lprop_graph* g, const std::string& path) {
  lprop_features* f = nullptr;
  size_t skipped = 0;
  check(lprop_features_load(g, in_path(path).c_str(), &f, &skipped),
        "loading features '" + path + "'");
  if (skipped > 0) {
    std::cerr << "warning: " << skipped << " feature rows in '" << path
              << "' name nodes absent from the graph\n";
  }
  return Features(f);
}

Ids load_nodes(const lprop_graph* g, const std::string& path) {
  uint32_t* ids = nullptr;
  Ids out;
  check(lprop_node_list_load(g, in_path(path).c_str(), &ids, &out.count),
        "loading node list '" + path + "'");
  out.data.reset(ids);
  return out;
}

// Records the options of `app` and hashes of `inputs` so the run can be
// repeated byte for byte.
void write_manifest(const CLI::App& app, const Globals& globals,
                    const std::vector<std::string>& inputs,
                    const std::string& anchor) {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    const auto& results = opt->results();
    const std::string key = opt->get_name().substr(opt->get_name().find_first_not_of('-'));
    if (results.empty()) {
      config[key] = nullptr;
    } else if (opt->get_items_expected_max() > 1 || results.size() > 1) {
      config[key] = results;
    } else {
      config[key] = results.front();
    }
  }
  nlohmann::ordered_json hashes = nlohmann::ordered_json::object();
  for (const std::string& path : inputs) {
    if (!path.empty()) hashes[path] = "fnv1a64:" + hash_file(path);
  }
  nlohmann::ordered_json manifest;
  manifest["tool"] = "latentprop";
  manifest["version"] = lprop_version();
  manifest["subcommand"] = app.get_name();
  manifest["threads"] = globals.threads;
  manifest["config"] = config;
  manifest["inputs"] = hashes;

  fs::path dir = globals.out_dir.empty() ? fs::path(anchor).parent_path()
                                         : fs::path(globals.out_dir);
  const fs::path file = dir / (app.get_name() + ".manifest.json");
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Failure("cannot write manifest '" + file.string() + "'");
  out << manifest.dump(2) << '\n';
}

const std::map<std::string, lprop_direction> kDirections{{"up", LPROP_UP},
                                                          {"down", LPROP_DOWN}};

// ---- ingest --------------------------------------------------------------

struct IngestArgs {
  std::string graph, out_edges, out_labels;
  char separator = ',';
};

void run_ingest(const CLI::App& app, const Globals& g, const IngestArgs& a) {
  Graph graph = load_graph(a.graph, a.separator);
  std::cout << "nodes " << lprop_graph_node_count(graph.get()) << "\nedges "
            << lprop_graph_edge_count(graph.get()) << "\nself_loops_dropped "
            << lprop_graph_self_loops_dropped(graph.get())
            << "\nduplicates_collapsed "
            << lprop_graph_duplicates_collapsed(graph.get()) << '\n';
  std::string anchor = a.graph;
  if (!a.out_edges.empty()) {
    anchor = out_path(g, a.out_edges);
    check(lprop_graph_write_edges(graph.get(), anchor.c_str(), ','),
          "writing edges");
  }
  if (!a.out_labels.empty()) {
    anchor = out_path(g, a.out_labels);
    check(lprop_graph_write_labels(graph.get(), anchor.c_str()),
          "writing label map");
  }
  write_manifest(app, g, {a.graph}, anchor);
}

// ---- scale ---------------------------------------------------------------

struct ScaleArgs {
  std::string graph, elites, out_rows, out_cols, report, svd = "auto";
  int min_degree = 3;
  size_t dims = 2;
  double tolerance = 1e-10;
  uint64_t seed = 1;
  bool allow_deficient = false;
};

void run_scale(const CLI::App& app, const Globals& g, const ScaleArgs& a) {
  Graph graph = load_graph(a.graph, ',');
  Ids elites = load_nodes(graph.get(), a.elites);
  lprop_scale_options opts;
  lprop_scale_options_init(&opts);
  opts.min_degree = a.min_degree;
  opts.dims = a.dims;
  opts.svd = a.svd == "dense"     ? LPROP_SVD_DENSE
             : a.svd == "lanczos" ? LPROP_SVD_LANCZOS
                                  : LPROP_SVD_AUTO;
  opts.tolerance = a.tolerance;
  opts.seed = a.seed;
  opts.require_rank = a.allow_deficient ? 0 : 1;
  lprop_scaling* s = nullptr;
  check(lprop_scale(graph.get(), elites.data.get(), elites.count, &opts, &s),
        "correspondence analysis");
  Scaling scaling(s);

  const std::string rows = out_path(g, a.out_rows);
  check(lprop_scaling_write_rows(scaling.get(), rows.c_str()), "writing rows");
  if (!a.out_cols.empty()) {
    check(lprop_scaling_write_cols(scaling.get(), out_path(g, a.out_cols).c_str()),
          "writing columns");
  }
  if (!a.report.empty()) {
    check(lprop_scaling_write_report(scaling.get(), out_path(g, a.report).c_str()),
          "writing report");
  }
  std::cout << "rows " << lprop_scaling_row_count(scaling.get()) << "\ncolumns "
            << lprop_scaling_col_count(scaling.get()) << "\nrank "
            << lprop_scaling_rank(scaling.get()) << '\n';
  for (size_t k = 0; k < a.dims; ++k) {
    double sv = 0, frac = 0;
    if (lprop_scaling_inertia(scaling.get(), k, &sv, &frac) != LPROP_OK) break;
    std::cout << "dim" << k + 1 << " singular_value " << sv
              << " inertia_fraction " << frac << '\n';
  }
  write_manifest(app, g, {a.graph, a.elites}, rows);
}

// ---- generate ------------------------------------------------------------

struct GenerateArgs {
  std::string config, out_edges, out_features, out_elites;
  std::optional<uint64_t> seed;
};

void run_generate(const CLI::App& app, const Globals& g, const GenerateArgs& a) {
  std::ifstream in(in_path(a.config));
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Failure("config '" + a.config + "': " + e.what());
  }
  if (a.seed) config["seed"] = *a.seed;
  if (g.threads > 0 && !config.contains("threads")) config["threads"] = g.threads;

  lprop_graph* gp = nullptr;
  lprop_features* fp = nullptr;
  uint32_t* ep = nullptr;
  size_t elite_count = 0;
  check(lprop_generate(config.dump().c_str(), &gp, &fp, &ep, &elite_count),
        "generating planted graph");
  Graph graph(gp);
  Features truth(fp);
  std::unique_ptr<uint32_t, IdsDeleter> elites(ep);

  const std::string edges = out_path(g, a.out_edges);
  check(lprop_graph_write_edges(graph.get(), edges.c_str(), ','), "writing edges");
  check(lprop_features_write(truth.get(), graph.get(),
                             out_path(g, a.out_features).c_str(), 0),
        "writing features");
  if (!a.out_elites.empty()) {
    check(lprop_node_list_write(graph.get(), elites.get(), elite_count,
                                out_path(g, a.out_elites).c_str()),
          "writing elites");
  }
  std::cout << "nodes " << lprop_graph_node_count(graph.get()) << "\nedges "
            << lprop_graph_edge_count(graph.get()) << "\nelites " << elite_count
            << '\n';
  write_manifest(app, g, {a.config}, edges);
}

// ---- propagate -----------------------------------------------------------

struct PropagateArgs {
  std::string method = "a", direction = "up", graph, seed_features, seed_nodes,
              out, log, log_pivots, candidate_test = "pivot";
  double epsilon = 0.1, p = 2.0;
  int max_steps = 1;
  bool with_provenance = false;
};

void run_propagate(const CLI::App& app, const Globals& g,
                   const PropagateArgs& a) {
  if (!a.log_pivots.empty() && a.method != "b") {
    throw Failure("--log-pivots requires --method b");
  }
  Graph graph = load_graph(a.graph, ',');
  Features seed = load_features(graph.get(), a.seed_features);
  Ids nodes;
  if (!a.seed_nodes.empty()) nodes = load_nodes(graph.get(), a.seed_nodes);

  lprop_propagate_options opts;
  lprop_propagate_options_init(&opts);
  opts.method = a.method == "b" ? LPROP_METHOD_B : LPROP_METHOD_A;
  opts.direction = parse_direction(a.direction);
  opts.epsilon = a.epsilon;
  opts.max_steps = a.max_steps;
  opts.p = a.p;
  opts.candidate_test = a.candidate_test == "co-neighbor"
                            ? LPROP_TEST_CO_NEIGHBOR_FEATURES
                            : LPROP_TEST_PIVOT_FEATURES;
  lprop_propagation* r = nullptr;
  check(lprop_propagate(graph.get(), seed.get(),
                        a.seed_nodes.empty() ? nullptr : nodes.data.get(),
                        nodes.count, &opts, &r),
        "propagation");
  Propagation result(r);

  const std::string out = out_path(g, a.out);
  check(lprop_features_write(lprop_propagation_estimates(result.get()),
                             graph.get(), out.c_str(), a.with_provenance ? 1 : 0),
        "writing estimates");
  if (!a.log.empty()) {
    check(lprop_propagation_write_log(result.get(), out_path(g, a.log).c_str()),
          "writing step log");
  }
  if (!a.log_pivots.empty()) {
    check(lprop_propagation_write_pivots(result.get(),
                                         out_path(g, a.log_pivots).c_str()),
          "writing pivots");
  }
  std::cout << "steps " << lprop_propagation_steps(result.get()) << "\nfeatured "
            << lprop_features_count(lprop_propagation_estimates(result.get()))
            << '\n';
  write_manifest(app, g, {a.graph, a.seed_features, a.seed_nodes}, out);
}

// ---- evaluate ------------------------------------------------------------

struct EvaluateArgs {
  std::string protocol = "sweep-a", direction = "up", graph, features,
              seed_nodes, out, out_json, candidate_test = "pivot";
  std::vector<double> epsilons{0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
  size_t k = 20, sample = 0, grid_bins = 20;
  double p = 2.0;
  uint64_t seed = 1;
};

void run_evaluate(const CLI::App& app, const Globals& g, const EvaluateArgs& a) {
  Graph graph = load_graph(a.graph, ',');
  Features truth = load_features(graph.get(), a.features);

  Ids set;
  if (!a.seed_nodes.empty()) set = load_nodes(graph.get(), a.seed_nodes);
  const uint32_t* pool = a.seed_nodes.empty() ? nullptr : set.data.get();
  if (a.sample > 0) {
    uint32_t* sampled = nullptr;
    size_t count = 0;
    check(lprop_sample_spatial(truth.get(), pool, set.count, a.sample,
                               a.grid_bins, a.seed, &sampled, &count),
          "spatial sampling");
    set.data.reset(sampled);
    set.count = count;
  } else if (a.seed_nodes.empty()) {
    uint32_t* all = nullptr;
    check(lprop_features_nodes(truth.get(), &all, &set.count), "listing nodes");
    set.data.reset(all);
  }

  lprop_evaluate_options opts;
  lprop_evaluate_options_init(&opts);
  opts.protocol = a.protocol == "kfold-b" ? LPROP_PROTOCOL_KFOLD_B
                                          : LPROP_PROTOCOL_SWEEP_A;
  opts.direction = parse_direction(a.direction);
  opts.epsilons = a.epsilons.data();
  opts.epsilon_count = a.epsilons.size();
  opts.k = a.k;
  opts.p = a.p;
  opts.seed = a.seed;
  opts.threads = g.threads;
  opts.candidate_test = a.candidate_test == "co-neighbor"
                            ? LPROP_TEST_CO_NEIGHBOR_FEATURES
                            : LPROP_TEST_PIVOT_FEATURES;
  lprop_report* r = nullptr;
  check(lprop_evaluate(graph.get(), truth.get(), set.data.get(), set.count, &opts,
                       &r),
        "evaluation");
  Report report(r);
  const std::string out = out_path(g, a.out);
  check(lprop_report_write_csv(report.get(), out.c_str()), "writing report");
  if (!a.out_json.empty()) {
    check(lprop_report_write_json(report.get(), out_path(g, a.out_json).c_str()),
          "writing report json");
  }
  write_manifest(app, g, {a.graph, a.features, a.seed_nodes}, out);
}

// ---- report / correlate --------------------------------------------------

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string out;
};

void run_report(const CLI::App& app, const Globals& g, const ReportArgs& a) {
  std::vector<const char*> paths;
  for (const auto& p : a.inputs) {
    in_path(p);
    paths.push_back(p.c_str());
  }
  const std::string out = out_path(g, a.out);
  check(lprop_report_merge(paths.data(), paths.size(), out.c_str()),
        "merging reports");
  write_manifest(app, g, a.inputs, out);
}

struct CorrelateArgs {
  std::string graph, positions, groups, scores, out;
};

void run_correlate(const CLI::App& app, const Globals& g,
                   const CorrelateArgs& a) {
  Graph graph = load_graph(a.graph, ',');
  Features positions = load_features(graph.get(), a.positions);
  const std::string out = out_path(g, a.out);
  check(lprop_correlate(graph.get(), positions.get(), in_path(a.groups).c_str(),
                        in_path(a.scores).c_str(), out.c_str()),
        "correlation");
  write_manifest(app, g, {a.graph, a.positions, a.groups, a.scores}, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latent feature scaling and propagation on directed graphs",
               "latentprop"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lprop_version()));
  app.set_config("--run-config", "",
                 "TOML file with option values; command-line flags take "
                 "precedence");

  Globals globals;
  app.add_option("--threads", globals.threads, "Worker threads (0 = all cores)")
      ->envname("LATENTPROP_THREADS");
  app.add_option("--out-dir", globals.out_dir,
                 "Directory for relative output paths and manifests")
      ->envname("LATENTPROP_OUT_DIR");

  const auto direction_check = CLI::IsMember({"up", "down"});
  const auto test_check = CLI::IsMember({"pivot", "co-neighbor"});

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Load an edge list and export "
                                                "the normalized graph");
  c_ingest->add_option("--graph", ingest.graph, "Edge list (follower,followee)")
      ->required();
  c_ingest->add_option("--separator", ingest.separator, "Field separator");
  c_ingest->add_option("--out-edges", ingest.out_edges, "Normalized edge list");
  c_ingest->add_option("--out-labels", ingest.out_labels, "label,node_id map");

  ScaleArgs scale;
  auto* c_scale = app.add_subcommand(
      "scale", "Correspondence analysis of the elite follower matrix");
  c_scale->add_option("--graph", scale.graph, "Edge list")->required();
  c_scale->add_option("--elites", scale.elites, "File with one elite label per line")
      ->required();
  c_scale->add_option("--min-degree", scale.min_degree,
                      "Minimum number of elites a follower must follow")
      ->capture_default_str();
  c_scale->add_option("--dims", scale.dims, "Number of dimensions")
      ->capture_default_str();
  c_scale->add_option("--svd", scale.svd, "auto, dense or lanczos")
      ->check(CLI::IsMember({"auto", "dense", "lanczos"}))
      ->capture_default_str();
  c_scale->add_option("--tolerance", scale.tolerance, "Lanczos tolerance")
      ->capture_default_str();
  c_scale->add_option("--seed", scale.seed, "Lanczos start vector seed")
      ->capture_default_str();
  c_scale->add_flag("--allow-rank-deficient", scale.allow_deficient,
                    "Zero-fill dimensions beyond the achieved rank");
  c_scale->add_option("--out-rows", scale.out_rows, "Follower coordinates CSV")
      ->required();
  c_scale->add_option("--out-cols", scale.out_cols, "Elite coordinates CSV");
  c_scale->add_option("--report", scale.report, "Singular values and inertia JSON");

  GenerateArgs gen;
  auto* c_gen = app.add_subcommand("generate", "Sample a planted graph");
  c_gen->add_option("--config", gen.config, "Planted model JSON")->required();
  c_gen->add_option("--seed", gen.seed, "Override the config seed");
  c_gen->add_option("--out-edges", gen.out_edges, "Edge list")->required();
  c_gen->add_option("--out-features", gen.out_features, "Ground-truth features")
      ->required();
  c_gen->add_option("--out-elites", gen.out_elites, "Elite labels");

  PropagateArgs prop;
  auto* c_prop = app.add_subcommand("propagate", "Propagate seed features");
  c_prop->add_option("--method", prop.method, "a (homophily) or b (structural)")
      ->check(CLI::IsMember({"a", "b"}))
      ->capture_default_str();
  c_prop->add_option("--direction", prop.direction, "up or down")
      ->check(direction_check)
      ->capture_default_str();
  c_prop->add_option("--epsilon", prop.epsilon, "Coherence threshold")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_prop->add_option("--max-steps", prop.max_steps, "Step budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_prop->add_option("--p", prop.p, "Norm order")->capture_default_str();
  c_prop->add_option("--candidate-test", prop.candidate_test,
                     "Method B candidate gate: pivot or co-neighbor")
      ->check(test_check)
      ->capture_default_str();
  c_prop->add_option("--graph", prop.graph, "Edge list")->required();
  c_prop->add_option("--seed-features", prop.seed_features, "Known features CSV")
      ->required();
  c_prop->add_option("--seed-nodes", prop.seed_nodes,
                     "Restrict the seed to these labels");
  c_prop->add_option("--out", prop.out, "Estimated features CSV")->required();
  c_prop->add_flag("--provenance", prop.with_provenance,
                   "Append a provenance column");
  c_prop->add_option("--log", prop.log, "Per-step sizes CSV");
  c_prop->add_option("--log-pivots", prop.log_pivots,
                     "Pivots and provisional features (method b)");

  EvaluateArgs eval;
  auto* c_eval = app.add_subcommand("evaluate", "Accuracy and coverage protocols");
  c_eval->add_option("--protocol", eval.protocol, "sweep-a or kfold-b")
      ->check(CLI::IsMember({"sweep-a", "kfold-b"}))
      ->capture_default_str();
  c_eval->add_option("--graph", eval.graph, "Edge list")->required();
  c_eval->add_option("--features", eval.features, "Ground-truth features")
      ->required();
  c_eval->add_option("--seed-nodes", eval.seed_nodes,
                     "Evaluated set (default: every featured node)");
  c_eval->add_option("--epsilon-grid", eval.epsilons, "Comma-separated thresholds")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  c_eval->add_option("--k", eval.k, "Number of folds")->capture_default_str();
  c_eval->add_option("--p", eval.p, "Norm order")->capture_default_str();
  c_eval->add_option("--seed", eval.seed, "Fold and sampling seed")
      ->capture_default_str();
  c_eval->add_option("--direction", eval.direction, "up or down")
      ->check(direction_check)
      ->capture_default_str();
  c_eval->add_option("--candidate-test", eval.candidate_test,
                     "Method B candidate gate: pivot or co-neighbor")
      ->check(test_check)
      ->capture_default_str();
  c_eval->add_option("--sample", eval.sample,
                     "Spatially uniform subsample size (0 = no sampling)");
  c_eval->add_option("--grid-bins", eval.grid_bins, "Sampling bins per axis")
      ->capture_default_str();
  c_eval->add_option("--out", eval.out, "Report CSV")->required();
  c_eval->add_option("--out-json", eval.out_json, "Report JSON");

  ReportArgs rep;
  auto* c_rep = app.add_subcommand("report", "Merge evaluation CSVs");
  c_rep->add_option("--inputs", rep.inputs, "Report CSVs")->required();
  c_rep->add_option("--out", rep.out, "Merged CSV")->required();

  CorrelateArgs cor;
  auto* c_cor = app.add_subcommand(
      "correlate", "Correlate positions with external group scores");
  c_cor->add_option("--graph", cor.graph, "Edge list")->required();
  c_cor->add_option("--positions", cor.positions, "Features CSV")->required();
  c_cor->add_option("--groups", cor.groups, "label,group CSV")->required();
  c_cor->add_option("--scores", cor.scores, "group,criterion... CSV")->required();
  c_cor->add_option("--out", cor.out, "Correlation CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!globals.out_dir.empty()) fs::create_directories(globals.out_dir);
    if (*c_ingest) run_ingest(*c_ingest, globals, ingest);
    if (*c_scale) run_scale(*c_scale, globals, scale);
    if (*c_gen) run_generate(*c_gen, globals, gen);
    if (*c_prop) run_propagate(*c_prop, globals, prop);
    if (*c_eval) run_evaluate(*c_eval, globals, eval);
    if (*c_rep) run_report(*c_rep, globals, rep);
    if (*c_cor) run_correlate(*c_cor, globals, cor);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
