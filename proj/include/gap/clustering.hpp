#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gap/dataset.hpp"
#include "gap/in_tree.hpp"

namespace gap {

struct Clustering {
  std::vector<std::size_t> assignment;  // exemplar of each node
  std::vector<std::size_t> exemplars;   // ascending
  std::size_t k = 0;
  bool converged = false;
  int iterations = 0;
  double mp_seconds = 0.0;

  /// Cluster ids 0..k-1 in exemplar order.
  std::vector<std::size_t> labels() const;
};

/// Throws InputError if assignment/exemplars/k are inconsistent.
void check_clustering(const Clustering& c);

/// Maps label strings to dense ids in order of first appearance.
std::vector<std::size_t> encode_labels(std::span<const std::string> labels);

/// Fraction of points whose truth label differs from their cluster's majority
/// label (ties go to the lexicographically smallest label).
double error_rate(std::span<const std::size_t> clusters, std::span<const std::string> truth);
double error_rate(const Clustering& c, std::span<const std::string> truth);

/// Adjusted Rand index; 1 iff the partitions are identical.
double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b);
double partition_agreement(const Clustering& c, std::span<const std::size_t> labels);

/// Writes `node,exemplar` for every non-exemplar to `edges_path`, and a node
/// table `node,parent,[x,y,]cluster` next to it (`<stem>_nodes.csv`).
/// Coordinates are included when `data` is 2-D real-valued.
void export_exemplar_graph(const Clustering& c, const InTree& tree, const Dataset* data,
                           const std::filesystem::path& edges_path);

/// `node,cluster` rows.
void write_labels_csv(std::span<const std::size_t> clusters, const std::filesystem::path& path);

}  // namespace gap
