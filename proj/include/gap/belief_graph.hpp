#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gap/in_tree.hpp"

namespace gap {

/// Every node linked to each of its in-tree ancestors. Arcs are stored per
/// node in path order (parent first, root last) and weighted by the summed
/// in-tree edge lengths along the path.
class BeliefGraph {
 public:
  BeliefGraph() = default;

  std::size_t size() const noexcept { return offset_.empty() ? 0 : offset_.size() - 1; }
  std::size_t edge_count() const noexcept { return target_.size(); }

  std::span<const std::size_t> ancestors(std::size_t i) const noexcept {
    return {target_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  std::span<const double> weights(std::size_t i) const noexcept {
    return {weight_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  std::size_t out_degree(std::size_t i) const noexcept { return offset_[i + 1] - offset_[i]; }

 private:
  friend BeliefGraph build_belief_graph(const InTree& tree);

  std::vector<std::size_t> offset_;
  std::vector<std::size_t> target_;
  std::vector<double> weight_;
};

/// One pass over the tree in topological order: W(i, a) = len(i) + W(parent(i), a).
BeliefGraph build_belief_graph(const InTree& tree);

}  // namespace gap
