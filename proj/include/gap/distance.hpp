#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gap/dataset.hpp"

namespace gap {

enum class Metric { euclidean, hamming };

Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric);

/// Dense symmetric n x n dissimilarity matrix, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  /// Validates symmetry, zero diagonal and non-negativity; throws InputError.
  static DistanceMatrix from_values(std::size_t n, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {d_.data() + i * n_, n_};
  }

  const std::vector<double>& values() const noexcept { return d_; }

 private:
  friend DistanceMatrix compute_distance_matrix(const Dataset&, Metric, int);

  DistanceMatrix(std::size_t n, std::vector<double> values) : n_(n), d_(std::move(values)) {}

  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Pairwise distances. Hamming needs categorical features, euclidean needs
/// real-valued ones. `threads` > 1 splits rows across workers; the result is
/// identical for any thread count.
DistanceMatrix compute_distance_matrix(const Dataset& data, Metric metric, int threads = 1);

}  // namespace gap
