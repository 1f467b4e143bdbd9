#include "gap/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <new>
#include <numeric>

#include "gap/oracle.hpp"

namespace gap {

namespace fs = std::filesystem;
using nlohmann::json;

Method parse_method(std::string_view name) {
  if (name == "gap") return Method::gap;
  if (name == "dense_ap") return Method::dense_ap;
  if (name == "k_cut") return Method::k_cut;
  if (name == "k_dcc_cut") return Method::k_dcc_cut;
  if (name == "decision_graph") return Method::decision_graph;
  throw UsageError("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::gap: return "gap";
    case Method::dense_ap: return "dense_ap";
    case Method::k_cut: return "k_cut";
    case Method::k_dcc_cut: return "k_dcc_cut";
    case Method::decision_graph: return "decision_graph";
  }
  return "?";
}

InputFormat parse_format(std::string_view name) {
  if (name == "csv") return InputFormat::csv;
  if (name == "mushroom") return InputFormat::mushroom;
  throw UsageError("unknown input format '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  if (input.empty()) throw UsageError("an input file is required");
  const bool needs_sigma = method != Method::dense_ap;
  if (needs_sigma && !sigma) throw UsageError(std::string(to_string(method)) + " requires --sigma");
  if (method == Method::gap && !alpha) throw UsageError("gap requires --alpha");
  if ((method == Method::k_cut || method == Method::k_dcc_cut) && !k) {
    throw UsageError(std::string(to_string(method)) + " requires --k");
  }
}

GapParams RunConfig::params() const {
  GapParams p;
  if (sigma) p.sigma = *sigma;
  if (alpha) p.alpha = *alpha;
  p.preference_rule = preference_rule;
  p.damping = damping;
  p.max_iterations = max_iterations;
  p.convergence_window = convergence_window;
  p.seed = seed;
  p.jitter = jitter;
  p.trace = verbose;
  p.threads = threads;
  return p;
}

fs::path resolve_output_dir(const std::optional<fs::path>& flag, const fs::path& fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GAP_OUTPUT_DIR"); env && *env) return env;
  return fallback;
}

namespace {

template <typename F>
auto in_stage(const std::string& stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const ParameterError& e) {
    throw StageError(stage, e.what(), kExitUsage);
  } catch (const UsageError& e) {
    throw StageError(stage, e.what(), kExitUsage);
  } catch (const Error& e) {
    throw StageError(stage, e.what(), kExitData);
  } catch (const std::bad_alloc&) {
    throw StageError(stage, "out of memory", kExitData);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

void write_trace(const std::vector<TracePoint>& trace, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(17);
  out << "iteration,net_similarity,exemplar_count\n";
  for (const auto& t : trace) out << t.iteration << ',' << t.net_similarity << ',' << t.exemplar_count << '\n';
}

struct Prepared {
  Dataset data;
  DistanceMatrix distances;
  fs::path out_dir;
};

Prepared prepare(const RunConfig& config) {
  in_stage("config", [&] {
    config.validate();
    if (config.threads <= 0) throw UsageError("--threads must be positive");
    return 0;
  });
  Prepared p;
  p.data = in_stage("load", [&] { return load_dataset(config); });
  p.distances = in_stage("distance", [&] { return compute_distance_matrix(p.data, config.metric, config.threads); });
  p.out_dir = config.output_dir;
  in_stage("output", [&] {
    std::error_code ec;
    fs::create_directories(p.out_dir, ec);
    if (ec) throw IoError("cannot create " + p.out_dir.string() + ": " + ec.message());
    return 0;
  });
  return p;
}

json empty_summary(const RunConfig& config, std::size_t n) {
  json s;
  s["method"] = to_string(config.method);
  s["input"] = config.input.string();
  s["format"] = config.format == InputFormat::csv ? "csv" : "mushroom";
  s["metric"] = to_string(config.metric);
  s["n"] = n;
  s["subsample"] = config.subsample ? json(*config.subsample) : json(nullptr);
  s["k"] = nullptr;
  s["error_rate"] = nullptr;
  s["converged"] = nullptr;
  s["iterations"] = nullptr;
  s["mp_seconds"] = nullptr;
  s["construction_seconds"] = nullptr;
  s["edge_count"] = nullptr;
  s["support_size"] = nullptr;
  s["dense_pair_count"] = static_cast<double>(n) * static_cast<double>(n == 0 ? 0 : n - 1);
  s["sigma"] = optional_number(config.sigma);
  s["alpha"] = optional_number(config.alpha);
  s["preference_rule"] = std::string(to_string(config.preference_rule));
  s["shared_preference"] = optional_number(config.shared_preference);
  s["seed"] = config.seed;
  s["warnings"] = json::array();
  return s;
}

}  // namespace

const std::vector<std::string>& summary_fields() {
  static const std::vector<std::string> fields = {
      "method",     "input",         "format",       "metric",           "n",
      "subsample",  "k",             "error_rate",   "converged",        "iterations",
      "mp_seconds", "construction_seconds", "edge_count", "support_size", "dense_pair_count",
      "sigma",      "alpha",         "preference_rule", "shared_preference", "seed",
      "warnings"};
  return fields;
}

Dataset load_dataset(const RunConfig& config) {
  Dataset data;
  if (config.format == InputFormat::mushroom) {
    data = load_mushroom(config.input);
  } else {
    CsvOptions opt;
    if (config.label_column) {
      opt.has_labels = true;
      opt.label_column = *config.label_column;
    }
    data = load_csv(config.input, opt);
  }
  if (config.subsample && *config.subsample < data.size()) {
    data = data.select(subsample_indices(data.size(), *config.subsample, config.seed));
  }
  return data;
}

GapStages build_gap_stages(const DistanceMatrix& d, double sigma, int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  GapStages st;
  st.field = compute_potentials(d, sigma, threads);
  st.tree = build_in_tree(d, st.field);
  st.graph = build_belief_graph(st.tree);
  st.construction_seconds = seconds_since(t0);
  return st;
}

GapOutcome run_gap(const GapStages& stages, const GapParams& params) {
  GapOutcome out;
  const auto model = build_similarity_model(stages.graph, params);
  out.state = sparse_ap(model, params);
  out.clustering = extract_exemplars(out.state, model);
  out.support_size = model.entry_count() - model.size();
  return out;
}

RunResult run(const RunConfig& config) {
  auto prep = prepare(config);
  const auto& data = prep.data;
  const auto& d = prep.distances;
  const std::size_t n = d.size();
  RunResult result;
  json s = empty_summary(config, n);
  const GapParams params = config.params();

  auto emit = [&](const fs::path& name) {
    result.files.push_back(prep.out_dir / name);
    return prep.out_dir / name;
  };

  std::vector<std::size_t> clusters;
  bool converged = true;

  switch (config.method) {
    case Method::gap: {
      in_stage("parameters", [&] { params.validate(); return 0; });
      for (auto& w : params.warnings()) result.warnings.push_back(w);
      const auto stages = in_stage("in-tree", [&] { return build_gap_stages(d, params.sigma, params.threads); });
      const auto outcome = in_stage("affinity propagation", [&] { return run_gap(stages, params); });
      for (auto& w : outcome.state.warnings) result.warnings.push_back(w);
      const auto& c = outcome.clustering;
      clusters = c.labels();
      converged = c.converged;
      s["k"] = c.k;
      s["converged"] = c.converged;
      s["iterations"] = c.iterations;
      s["mp_seconds"] = c.mp_seconds;
      s["construction_seconds"] = stages.construction_seconds;
      s["edge_count"] = stages.graph.edge_count();
      s["support_size"] = outcome.support_size;
      in_stage("output", [&] {
        export_exemplar_graph(c, stages.tree, &data, emit("exemplar_graph.csv"));
        result.files.push_back(prep.out_dir / "exemplar_graph_nodes.csv");
        if (config.verbose) write_trace(outcome.state.trace, emit("trace.csv"));
        return 0;
      });
      break;
    }
    case Method::dense_ap: {
      in_stage("parameters", [&] { params.validate_message_passing(); return 0; });
      const auto t0 = std::chrono::steady_clock::now();
      const auto model = in_stage("similarity", [&] { return dense_similarity_model(d, config.shared_preference); });
      const double construction = seconds_since(t0);
      const auto state = in_stage("affinity propagation", [&] { return propagate(model, params); });
      for (auto& w : state.warnings) result.warnings.push_back(w);
      const auto c = extract_exemplars(state, model);
      clusters = c.labels();
      converged = c.converged;
      s["k"] = c.k;
      s["converged"] = c.converged;
      s["iterations"] = c.iterations;
      s["mp_seconds"] = c.mp_seconds;
      s["construction_seconds"] = construction;
      s["support_size"] = model.entry_count() - model.size();
      if (!config.shared_preference) s["shared_preference"] = model.preference(0);
      in_stage("output", [&] {
        InTree no_tree;
        export_exemplar_graph(c, no_tree, &data, emit("exemplar_graph.csv"));
        result.files.push_back(prep.out_dir / "exemplar_graph_nodes.csv");
        if (config.verbose) write_trace(state.trace, emit("trace.csv"));
        return 0;
      });
      break;
    }
    case Method::k_cut:
    case Method::k_dcc_cut: {
      const auto t0 = std::chrono::steady_clock::now();
      const auto field = in_stage("potential", [&] { return compute_potentials(d, *config.sigma, config.threads); });
      const auto tree = in_stage("in-tree", [&] { return build_in_tree(d, field); });
      clusters = in_stage("cut", [&] {
        return config.method == Method::k_cut ? k_cut(tree, *config.k) : k_dcc_cut(tree, field, *config.k);
      });
      s["construction_seconds"] = seconds_since(t0);
      s["k"] = *config.k + 1;
      s["converged"] = true;
      s["iterations"] = 0;
      break;
    }
    case Method::decision_graph: {
      const auto t0 = std::chrono::steady_clock::now();
      const auto field = in_stage("potential", [&] { return compute_potentials(d, *config.sigma, config.threads); });
      const auto tree = in_stage("in-tree", [&] { return build_in_tree(d, field); });
      s["construction_seconds"] = seconds_since(t0);
      in_stage("output", [&] {
        write_decision_graph_csv(decision_graph(tree, field), emit("decision_graph.csv"));
        return 0;
      });
      clusters.assign(n, 0);
      break;
    }
  }

  if (data.has_labels() && config.method != Method::decision_graph) {
    s["error_rate"] = error_rate(clusters, *data.labels());
  }
  s["warnings"] = result.warnings;
  result.summary = s;
  in_stage("output", [&] {
    if (config.method != Method::decision_graph) write_labels_csv(clusters, emit("labels.csv"));
    write_json(s, emit("summary.json"));
    return 0;
  });
  if (config.strict && !converged) {
    throw StageError("affinity propagation", "message passing did not converge", kExitNumeric);
  }
  return result;
}

namespace {

json timing_stats(const std::vector<double>& samples) {
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  const double stddev = samples.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  return {{"samples", samples}, {"mean", mean}, {"std", stddev}};
}

}  // namespace

json benchmark(const RunConfig& base, int repeats) {
  if (repeats <= 0) throw StageError("config", "--repeats must be positive", kExitUsage);
  RunConfig config = base;
  config.method = Method::gap;
  auto prep = prepare(config);
  const auto& d = prep.distances;
  const std::size_t n = d.size();
  const GapParams params = config.params();
  in_stage("parameters", [&] { params.validate(); return 0; });
  const auto labels = prep.data.labels();

  const auto stages = in_stage("in-tree", [&] { return build_gap_stages(d, params.sigma, params.threads); });
  json gap_report;
  std::vector<double> gap_times;
  for (int r = 0; r < repeats; ++r) {
    const auto outcome = in_stage("affinity propagation", [&] { return run_gap(stages, params); });
    gap_times.push_back(outcome.clustering.mp_seconds);
    gap_report["k"] = outcome.clustering.k;
    gap_report["converged"] = outcome.clustering.converged;
    gap_report["iterations"] = outcome.clustering.iterations;
    gap_report["support_size"] = outcome.support_size;
    gap_report["error_rate"] = labels ? json(error_rate(outcome.clustering, *labels)) : json(nullptr);
  }
  gap_report["mp_seconds"] = timing_stats(gap_times);
  gap_report["edge_count"] = stages.graph.edge_count();
  gap_report["construction_seconds"] = stages.construction_seconds;

  json dense_report;
  std::vector<double> dense_times;
  const auto model = in_stage("similarity", [&] { return dense_similarity_model(d, config.shared_preference); });
  for (int r = 0; r < repeats; ++r) {
    const auto state = in_stage("affinity propagation", [&] { return propagate(model, params); });
    const auto c = extract_exemplars(state, model);
    dense_times.push_back(c.mp_seconds);
    dense_report["k"] = c.k;
    dense_report["converged"] = c.converged;
    dense_report["iterations"] = c.iterations;
    dense_report["error_rate"] = labels ? json(error_rate(c, *labels)) : json(nullptr);
  }
  dense_report["mp_seconds"] = timing_stats(dense_times);
  dense_report["shared_preference"] = model.preference(0);
  dense_report["support_size"] = model.entry_count() - model.size();

  const double dense_pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  json report;
  report["input"] = config.input.string();
  report["n"] = n;
  report["subsample"] = config.subsample ? json(*config.subsample) : json(nullptr);
  report["repeats"] = repeats;
  report["sigma"] = params.sigma;
  report["alpha"] = params.alpha;
  report["preference_rule"] = std::string(to_string(params.preference_rule));
  report["gap"] = gap_report;
  report["dense_ap"] = dense_report;
  report["dense_pair_count"] = dense_pairs;
  report["edge_fraction"] = dense_pairs > 0 ? static_cast<double>(stages.graph.edge_count()) / dense_pairs : 0.0;
  report["speedup"] = dense_report["mp_seconds"]["mean"].get<double>() /
                      std::max(gap_report["mp_seconds"]["mean"].get<double>(), 1e-12);
  in_stage("output", [&] { write_json(report, prep.out_dir / "benchmark.json"); return 0; });
  return report;
}

json sweep(const RunConfig& base, const std::vector<double>& alpha_magnitudes) {
  if (alpha_magnitudes.empty()) throw StageError("config", "--alphas needs at least one value", kExitUsage);
  RunConfig config = base;
  config.method = Method::gap;
  if (!config.alpha) config.alpha = -std::abs(alpha_magnitudes.front());
  auto prep = prepare(config);
  const auto labels = prep.data.labels();
  GapParams params = config.params();
  const auto stages = in_stage("in-tree", [&] { return build_gap_stages(prep.distances, params.sigma, params.threads); });

  json rows = json::array();
  const fs::path path = prep.out_dir / "sweep.csv";
  std::ofstream out(path);
  if (!out) throw StageError("output", "cannot write " + path.string(), kExitData);
  out.precision(17);
  out << "abs_alpha,k,error_rate,converged,iterations,mp_seconds\n";
  for (const double magnitude : alpha_magnitudes) {
    params.alpha = -std::abs(magnitude);
    const auto outcome = in_stage("affinity propagation", [&] { return run_gap(stages, params); });
    const auto& c = outcome.clustering;
    const json err = labels ? json(error_rate(c, *labels)) : json(nullptr);
    rows.push_back({{"abs_alpha", std::abs(magnitude)},
                    {"k", c.k},
                    {"error_rate", err},
                    {"converged", c.converged},
                    {"iterations", c.iterations},
                    {"mp_seconds", c.mp_seconds}});
    out << std::abs(magnitude) << ',' << c.k << ',' << (labels ? std::to_string(err.get<double>()) : "") << ','
        << (c.converged ? 1 : 0) << ',' << c.iterations << ',' << c.mp_seconds << '\n';
  }
  return rows;
}

json oracle_check(const RunConfig& base) {
  RunConfig config = base;
  config.method = Method::gap;
  config.jitter = false;
  auto prep = prepare(config);
  const auto& d = prep.distances;
  const GapParams params = config.params();
  in_stage("parameters", [&] { params.validate(); return 0; });
  if (d.size() > oracle::kMaxBruteForceNodes) {
    throw StageError("oracle", "brute force is limited to " + std::to_string(oracle::kMaxBruteForceNodes) + " points",
                     kExitUsage);
  }
  const auto stages = build_gap_stages(d, params.sigma, 1);
  const auto ref = oracle::naive_stage_oracles(d, params.sigma);

  const bool potentials_equal = ref.potentials == stages.field.p;
  const bool parents_equal = ref.parents == stages.tree.parent;
  double max_weight_error = 0.0;
  bool arcs_equal = true;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto anc = stages.graph.ancestors(i);
    const auto w = stages.graph.weights(i);
    if (anc.size() != ref.ancestors[i].size()) {
      arcs_equal = false;
      continue;
    }
    for (std::size_t e = 0; e < anc.size(); ++e) {
      arcs_equal = arcs_equal && anc[e] == ref.ancestors[i][e];
      max_weight_error = std::max(max_weight_error, std::abs(w[e] - ref.weights[i][e]));
    }
  }

  const auto model = build_similarity_model(stages.graph, params);
  const auto best = oracle::brute_force_exemplars(model);
  const auto outcome = run_gap(stages, params);
  json j;
  j["n"] = d.size();
  j["potentials_equal"] = potentials_equal;
  j["parents_equal"] = parents_equal;
  j["arcs_equal"] = arcs_equal;
  j["max_weight_error"] = max_weight_error;
  j["oracle_assignment"] = best.assignment;
  j["oracle_net_similarity"] = best.net_similarity;
  j["oracle_unique"] = best.unique(1e-6);
  j["gap_assignment"] = outcome.clustering.assignment;
  j["gap_net_similarity"] = net_similarity(model, outcome.clustering.assignment);
  j["converged"] = outcome.clustering.converged;
  j["match"] = outcome.clustering.assignment == best.assignment;
  return j;
}

}  // namespace gap
