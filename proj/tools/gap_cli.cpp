// gap: command-line front end for the generalized affinity propagation pipeline.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gap/runner.hpp"

namespace {

constexpr const char* kMemoryNote =
    "Memory: distances are held as a dense n x n matrix (8 n^2 bytes). The belief graph stores one arc per "
    "(node, ancestor) pair, which degrades to n^2/2 arcs on chain-like in-trees. dense_ap keeps similarity, "
    "responsibility and availability for all n^2 pairs.";

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized affinity propagation clustering"};
  app.footer(kMemoryNote);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file (command-line flags win)");

  gap::RunConfig config;
  std::string input, format = "csv", metric = "euclidean", method = "gap", preference_rule = "outgoing";
  std::optional<std::string> out_dir;
  std::optional<double> sigma, alpha, preference;
  std::optional<std::size_t> k, subsample;
  std::optional<int> label_column;
  bool no_jitter = false;

  app.add_option("-i,--input", input, "Input file")->required();
  app.add_option("--format", format, "Input format")->check(CLI::IsMember({"csv", "mushroom"}));
  app.add_option("--metric", metric, "Distance metric")->check(CLI::IsMember({"euclidean", "hamming"}));
  app.add_option("-m,--method", method, "Clustering method")
      ->check(CLI::IsMember({"gap", "dense_ap", "k_cut", "k_dcc_cut", "decision_graph"}));
  app.add_option("--sigma", sigma, "Kernel scale (> 0)");
  app.add_option("--alpha", alpha, "Preference constant (< 0)");
  app.add_option("--preference-rule", preference_rule,
                 "gap preference sums similarities to a node's ancestors (outgoing) or from its descendants (incoming)")
      ->check(CLI::IsMember({"outgoing", "incoming"}))
      ->capture_default_str();
  app.add_option("--preference", preference, "Shared preference for dense_ap (default: median similarity)");
  app.add_option("-k,--k", k, "Edges to cut for k_cut / k_dcc_cut");
  app.add_option("--damping", config.damping, "Message damping in [0.5, 1)")->capture_default_str();
  app.add_option("--max-iterations", config.max_iterations)->capture_default_str();
  app.add_option("--convergence-window", config.convergence_window,
                 "Iterations the exemplar set must stay unchanged")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Seed for tie-breaking jitter and subsampling")->capture_default_str();
  app.add_flag("--no-jitter", no_jitter, "Disable the 1e-12 similarity jitter");
  app.add_option("--label-column", label_column, "CSV column holding ground-truth labels (negative: from end)");
  app.add_option("--subsample", subsample, "Cluster a fixed-seed random subset of this many points");
  app.add_option("-o,--out", out_dir, "Output directory (env GAP_OUTPUT_DIR; default .)");
  app.add_option("--threads", config.threads, "Worker threads; 1 is bit-deterministic")->capture_default_str();
  app.add_flag("-v,--verbose", config.verbose, "Write the per-iteration trace");
  app.add_flag("--strict", config.strict, "Exit with code 3 when message passing does not converge");

  auto* cluster = app.add_subcommand("cluster", "Run one clustering method");
  int repeats = 3;
  auto* bench = app.add_subcommand("benchmark", "Time gap against dense_ap");
  bench->add_option("--repeats", repeats, "Runs per method")->capture_default_str();
  std::vector<double> alphas;
  auto* sweep = app.add_subcommand("sweep", "Cluster count and error rate over |alpha| values");
  sweep->add_option("--alphas", alphas, "Magnitudes of alpha")->required()->delimiter(',');
  auto* oracle = app.add_subcommand("oracle", "Compare against brute-force references (n <= 15)");
  oracle->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? gap::kExitOk : gap::kExitUsage;
  }

  try {
    config.input = input;
    config.format = gap::parse_format(format);
    config.metric = gap::parse_metric(metric);
    config.method = gap::parse_method(method);
    config.sigma = sigma;
    config.alpha = alpha;
    config.preference_rule = gap::parse_preference_rule(preference_rule);
    config.shared_preference = preference;
    config.k = k;
    config.jitter = !no_jitter;
    config.label_column = label_column;
    config.subsample = subsample;
    config.output_dir = gap::resolve_output_dir(
        out_dir ? std::optional<std::filesystem::path>(*out_dir) : std::nullopt, ".");
  } catch (const gap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gap::kExitUsage;
  }

  try {
    if (cluster->parsed()) {
      const auto result = gap::run(config);
      print_warnings(result.warnings);
      std::cout << result.summary.dump(2) << '\n';
    } else if (bench->parsed()) {
      std::cout << gap::benchmark(config, repeats).dump(2) << '\n';
    } else if (sweep->parsed()) {
      std::cout << gap::sweep(config, alphas).dump(2) << '\n';
    } else if (oracle->parsed()) {
      std::cout << gap::oracle_check(config).dump(2) << '\n';
    }
  } catch (const gap::StageError& e) {
    std::cerr << "error [" << e.stage() << "]: " << e.what() << '\n';
    return e.exit_code();
  } catch (const gap::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gap::kExitUsage;
  } catch (const gap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gap::kExitData;
  }
  return gap::kExitOk;
}
