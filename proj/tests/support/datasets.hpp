#pragma once

// Synthetic datasets and random instances shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gap/dataset.hpp"
#include "gap/in_tree.hpp"

namespace gap::testing {

struct Labeled {
  Dataset data;
  std::vector<std::size_t> truth;
};

inline Dataset with_string_labels(RealRows rows, const std::vector<std::size_t>& truth) {
  std::vector<std::string> labels;
  for (auto t : truth) labels.push_back(std::to_string(t));
  return Dataset(std::move(rows), std::move(labels));
}

/// Two interleaved half circles of radius `radius`. Angles are normal around
/// the top of each arc with standard deviation `angular_spread` (clipped to the
/// arc), so each moon has one density peak; `thickness` is the radial noise.
inline Labeled two_moons(std::size_t per_moon, double radius, double thickness, double angular_spread,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  RealRows rows;
  std::vector<std::size_t> truth;
  for (std::size_t moon = 0; moon < 2; ++moon) {
    for (std::size_t i = 0; i < per_moon; ++i) {
      double t;
      do {
        t = std::numbers::pi / 2.0 + angular_spread * g(rng);
      } while (t < 0.0 || t > std::numbers::pi);
      const double r = radius + thickness * g(rng);
      double x = r * std::cos(t), y = r * std::sin(t);
      if (moon == 1) {
        x = radius - x;
        y = 0.5 * radius - y;
      }
      rows.push_back({x, y});
      truth.push_back(moon);
    }
  }
  return {with_string_labels(std::move(rows), truth), truth};
}

/// Two Archimedean spiral arms r = pitch * theta, the second rotated by pi.
/// Points are evenly spaced in angle, so density falls off along each arm;
/// `thickness` is isotropic Gaussian noise.
inline Labeled two_spirals(std::size_t per_arm, double pitch, double turns, double thickness, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, thickness);
  RealRows rows;
  std::vector<std::size_t> truth;
  const double start = std::numbers::pi / 2.0;
  const double stop = start + 2.0 * std::numbers::pi * turns;
  for (std::size_t arm = 0; arm < 2; ++arm) {
    for (std::size_t i = 0; i < per_arm; ++i) {
      const double theta = start + (stop - start) * static_cast<double>(i) / static_cast<double>(per_arm - 1);
      const double r = pitch * theta;
      const double phase = arm == 0 ? 0.0 : std::numbers::pi;
      rows.push_back({r * std::cos(theta + phase) + g(rng), r * std::sin(theta + phase) + g(rng)});
      truth.push_back(arm);
    }
  }
  return {with_string_labels(std::move(rows), truth), truth};
}

/// The 300-point moons used by the acceptance suite.
inline Labeled reference_moons() { return two_moons(150, 2.0, 0.1, 0.6, 1); }

/// The 300-point spirals used by the acceptance suite.
inline Labeled reference_spirals() { return two_spirals(150, 0.8, 1.25, 0.02, 5); }

/// Two isotropic Gaussian blobs whose centers are `separation` apart.
inline Labeled two_blobs(std::size_t per_blob, double spread, double separation, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, spread);
  RealRows rows;
  std::vector<std::size_t> truth;
  for (std::size_t b = 0; b < 2; ++b) {
    for (std::size_t i = 0; i < per_blob; ++i) {
      rows.push_back({b * separation + g(rng), g(rng)});
      truth.push_back(b);
    }
  }
  return {with_string_labels(std::move(rows), truth), truth};
}

inline Dataset random_points(std::size_t n, std::size_t dim, std::uint64_t seed, double extent = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, extent);
  RealRows rows(n, std::vector<double>(dim));
  for (auto& r : rows)
    for (auto& v : r) v = u(rng);
  return Dataset(std::move(rows));
}

/// Random in-tree: nodes attach to a uniformly chosen earlier node of a random
/// permutation, edge lengths uniform in [min_len, max_len].
inline InTree random_tree(std::size_t n, std::mt19937_64& rng, double min_len = 0.05, double max_len = 2.0) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_real_distribution<double> len(min_len, max_len);
  InTree t;
  t.parent.assign(n, kNoParent);
  t.edge_length.assign(n, 0.0);
  t.depth.assign(n, 0);
  t.order = perm;
  t.root = perm.front();
  for (std::size_t r = 1; r < n; ++r) {
    std::uniform_int_distribution<std::size_t> pick(0, r - 1);
    const std::size_t node = perm[r];
    const std::size_t up = perm[pick(rng)];
    t.parent[node] = up;
    t.edge_length[node] = len(rng);
    t.depth[node] = t.depth[up] + 1;
  }
  return t;
}

}  // namespace gap::testing
