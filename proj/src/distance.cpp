#include "gap/distance.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "gap/error.hpp"
#include "parallel.hpp"

namespace gap {

Metric parse_metric(std::string_view name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "hamming") return Metric::hamming;
  throw ParameterError("unknown metric '" + std::string(name) + "' (expected euclidean or hamming)");
}

std::string_view to_string(Metric metric) {
  return metric == Metric::euclidean ? "euclidean" : "hamming";
}

DistanceMatrix DistanceMatrix::from_values(std::size_t n, std::vector<double> values) {
  if (values.size() != n * n) throw InputError("distance matrix needs n*n values");
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i * n + i] != 0.0) throw InputError("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = values[i * n + j];
      if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("distances must be finite and non-negative");
      if (v != values[j * n + i]) throw InputError("distance matrix must be symmetric");
    }
  }
  return DistanceMatrix(n, std::move(values));
}

namespace {

// Per-column integer codes so that the pairwise loop compares integers.
std::vector<std::uint32_t> encode_categories(const CategoricalRows& rows, std::size_t m) {
  std::vector<std::uint32_t> codes(rows.size() * m);
  for (std::size_t c = 0; c < m; ++c) {
    std::unordered_map<std::string, std::uint32_t> dict;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto [it, inserted] = dict.try_emplace(rows[i][c], static_cast<std::uint32_t>(dict.size()));
      codes[i * m + c] = it->second;
    }
  }
  return codes;
}

}  // namespace

DistanceMatrix compute_distance_matrix(const Dataset& data, Metric metric, int threads) {
  const std::size_t n = data.size();
  if (n == 0) throw InputError("empty dataset");
  const std::size_t m = data.dimension();
  std::vector<double> d(n * n, 0.0);

  if (metric == Metric::euclidean) {
    if (!data.is_real()) throw InputError("euclidean metric requires real-valued features");
    const auto& x = data.real_points();
    detail::parallel_for(n, threads, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t c = 0; c < m; ++c) {
          const double diff = x[i][c] - x[j][c];
          acc += diff * diff;
        }
        d[i * n + j] = std::sqrt(acc);
      }
    });
  } else {
    if (!data.is_categorical()) throw InputError("hamming metric requires categorical features");
    const auto codes = encode_categories(data.categorical_points(), m);
    detail::parallel_for(n, threads, [&](std::size_t i) {
      const std::uint32_t* a = codes.data() + i * m;
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::uint32_t* b = codes.data() + j * m;
        unsigned mismatches = 0;
        for (std::size_t c = 0; c < m; ++c) mismatches += a[c] != b[c];
        d[i * n + j] = static_cast<double>(mismatches);
      }
    });
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[j * n + i] = d[i * n + j];
  return DistanceMatrix(n, std::move(d));
}

}  // namespace gap
