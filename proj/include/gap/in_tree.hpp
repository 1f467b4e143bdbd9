#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <vector>

#include "gap/distance.hpp"
#include "gap/potential.hpp"

namespace gap {

inline constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

/// Each node points at its nearest lower-potential node; the global minimum is
/// the root.
struct InTree {
  std::vector<std::size_t> parent;  // kNoParent at the root
  std::vector<double> edge_length;  // 0 at the root
  std::vector<std::size_t> depth;
  std::vector<std::size_t> order;   // topological: root first, parents before children
  std::size_t root = kNoParent;

  std::size_t size() const noexcept { return parent.size(); }
  std::size_t edge_count() const noexcept { return size() == 0 ? 0 : size() - 1; }
};

InTree build_in_tree(const DistanceMatrix& d, const PotentialField& field);

/// Component labels (0..k, numbered by lowest member index) after removing the
/// k longest edges. Throws ParameterError if k > n - 1.
std::vector<std::size_t> k_cut(const InTree& tree, std::size_t k);

/// Same, removing the edges leaving the k nodes with the largest |W * P|.
std::vector<std::size_t> k_dcc_cut(const InTree& tree, const PotentialField& field, std::size_t k);

struct DecisionGraphPoint {
  std::size_t node;
  double potential_magnitude;
  double edge_length;
  double product;
};

/// One record per non-root node, sorted by product descending (ties by index).
std::vector<DecisionGraphPoint> decision_graph(const InTree& tree, const PotentialField& field);

/// CSV with header `node,abs_potential,edge_length,product`.
void write_decision_graph_csv(const std::vector<DecisionGraphPoint>& points,
                              const std::filesystem::path& path);

/// Labels of the forest obtained by deleting the out-edges of `cut_nodes`.
std::vector<std::size_t> component_labels(const InTree& tree, const std::vector<bool>& cut_nodes);

}  // namespace gap
