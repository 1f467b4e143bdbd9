#pragma once

#include <cstddef>
#include <vector>

#include "gap/distance.hpp"

namespace gap {

/// Gaussian potential per node; lower means denser.
struct PotentialField {
  std::vector<double> p;

  std::size_t size() const noexcept { return p.size(); }

  /// Strict total order: lower potential first, ties broken by lower index.
  bool before(std::size_t i, std::size_t j) const noexcept {
    return p[i] < p[j] || (p[i] == p[j] && i < j);
  }

  /// Nodes sorted by `before`; the first one is the unique minimum.
  std::vector<std::size_t> ordered_nodes() const;
};

/// P_i = -sum_j exp(-d_ij^2 / sigma), self term included, summed in index order.
PotentialField compute_potentials(const DistanceMatrix& d, double sigma, int threads = 1);

}  // namespace gap
