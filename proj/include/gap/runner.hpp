#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gap/affinity.hpp"
#include "gap/belief_graph.hpp"
#include "gap/clustering.hpp"
#include "gap/dataset.hpp"
#include "gap/distance.hpp"
#include "gap/error.hpp"
#include "gap/in_tree.hpp"
#include "gap/params.hpp"
#include "gap/potential.hpp"

namespace gap {

enum class Method { gap, dense_ap, k_cut, k_dcc_cut, decision_graph };
enum class InputFormat { csv, mushroom };

Method parse_method(std::string_view name);
std::string_view to_string(Method method);
InputFormat parse_format(std::string_view name);

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitNumeric = 3 };

/// An error tagged with the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message, int exit_code)
      : Error(stage + ": " + message), stage_(std::move(stage)), exit_code_(exit_code) {}

  const std::string& stage() const noexcept { return stage_; }
  int exit_code() const noexcept { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

struct RunConfig {
  std::filesystem::path input;
  InputFormat format = InputFormat::csv;
  Metric metric = Metric::euclidean;
  Method method = Method::gap;
  std::optional<double> sigma;
  std::optional<double> alpha;
  PreferenceRule preference_rule = PreferenceRule::outgoing;
  std::optional<double> shared_preference;
  std::optional<std::size_t> k;
  double damping = 0.9;
  int max_iterations = 1000;
  int convergence_window = 50;
  std::uint64_t seed = kDefaultSeed;
  bool jitter = true;
  std::filesystem::path output_dir = ".";
  std::optional<int> label_column;  // csv only
  std::optional<std::size_t> subsample;
  int threads = 1;
  bool verbose = false;  // write the iteration trace
  bool strict = false;   // non-convergence is an error

  /// Throws UsageError when a method's required parameters are missing.
  void validate() const;
  GapParams params() const;
};

/// Output directory: `--out` wins, then GAP_OUTPUT_DIR, then the config value.
std::filesystem::path resolve_output_dir(const std::optional<std::filesystem::path>& flag,
                                         const std::filesystem::path& fallback);

Dataset load_dataset(const RunConfig& config);

/// Everything the gap method computes before message passing.
struct GapStages {
  PotentialField field;
  InTree tree;
  BeliefGraph graph;
  double construction_seconds = 0.0;
};

GapStages build_gap_stages(const DistanceMatrix& d, double sigma, int threads = 1);

struct GapOutcome {
  Clustering clustering;
  ApState state;
  std::size_t support_size = 0;  // candidate pairs excluding self pairs
};

GapOutcome run_gap(const GapStages& stages, const GapParams& params);

struct RunResult {
  nlohmann::json summary;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

/// Runs `config.method` end to end and writes summary.json, labels.csv and the
/// method's artifacts into the output directory. Throws StageError.
RunResult run(const RunConfig& config);

/// gap and dense_ap `repeats` times each; writes benchmark.json.
nlohmann::json benchmark(const RunConfig& config, int repeats);

/// One gap run per |alpha| value; writes sweep.csv with
/// `abs_alpha,k,error_rate,converged,iterations,mp_seconds`.
nlohmann::json sweep(const RunConfig& config, const std::vector<double>& alpha_magnitudes);

/// Cross-checks the pipeline against the brute-force references (n <= 15).
nlohmann::json oracle_check(const RunConfig& config);

/// Field set shared by every summary.json.
const std::vector<std::string>& summary_fields();

}  // namespace gap
