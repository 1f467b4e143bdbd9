#include "gap/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gap/error.hpp"
#include "parallel.hpp"

namespace gap {

std::vector<std::size_t> PotentialField::ordered_nodes() const {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) { return before(a, b); });
  return order;
}

PotentialField compute_potentials(const DistanceMatrix& d, double sigma, int threads) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("sigma must be positive, got " + std::to_string(sigma));
  }
  const std::size_t n = d.size();
  PotentialField field;
  field.p.resize(n);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    const auto row = d.row(i);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += std::exp(-(row[j] * row[j]) / sigma);
    field.p[i] = -sum;
  });
  return field;
}

}  // namespace gap
