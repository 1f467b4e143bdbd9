#pragma once

// Brute-force references for verification. Nothing here calls into the
// pipeline; only the shared data types are used.

#include <cstddef>
#include <vector>

#include "gap/affinity.hpp"
#include "gap/distance.hpp"

namespace gap::oracle {

inline constexpr std::size_t kMaxBruteForceNodes = 15;

struct ValidConfiguration {
  std::vector<std::size_t> assignment;
  double net_similarity;
  // Best net similarity among all other valid configurations (-inf if none).
  double runner_up;

  bool unique(double margin) const { return net_similarity - runner_up > margin; }
};

/// Exhaustive maximizer of net similarity over configurations where every
/// node picks a candidate from its support and exemplars pick themselves.
/// Throws ParameterError for more than kMaxBruteForceNodes nodes.
ValidConfiguration brute_force_exemplars(const SimilarityModel& model);

struct StageReference {
  std::vector<double> potentials;
  std::vector<std::size_t> parents;        // SIZE_MAX at the root
  std::vector<std::vector<std::size_t>> ancestors;  // path order
  std::vector<std::vector<double>> weights;         // walk sums
};

/// Potentials by double loop, parents by per-node scan, belief weights by
/// walking each node to the root.
StageReference naive_stage_oracles(const DistanceMatrix& d, double sigma);

}  // namespace gap::oracle
