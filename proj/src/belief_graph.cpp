#include "gap/belief_graph.hpp"

namespace gap {

BeliefGraph build_belief_graph(const InTree& tree) {
  const std::size_t n = tree.size();
  BeliefGraph bg;
  bg.offset_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) bg.offset_[i + 1] = bg.offset_[i] + tree.depth[i];
  bg.target_.resize(bg.offset_[n]);
  bg.weight_.resize(bg.offset_[n]);

  // Parents precede children in tree.order, so the parent's row is complete
  // when a child copies it.
  for (const std::size_t i : tree.order) {
    if (i == tree.root) continue;
    const std::size_t p = tree.parent[i];
    const double len = tree.edge_length[i];
    std::size_t out = bg.offset_[i];
    bg.target_[out] = p;
    bg.weight_[out] = len;
    ++out;
    for (std::size_t e = bg.offset_[p]; e < bg.offset_[p + 1]; ++e, ++out) {
      bg.target_[out] = bg.target_[e];
      bg.weight_[out] = len + bg.weight_[e];
    }
  }
  return bg;
}

}  // namespace gap
