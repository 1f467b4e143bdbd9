#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gap/error.hpp"
#include "gap/potential.hpp"
#include "support/datasets.hpp"

using namespace gap;

TEST_SUITE_BEGIN("potential field");

TEST_CASE("two points at unit distance") {
  const auto d = DistanceMatrix::from_values(2, {0.0, 1.0, 1.0, 0.0});
  const auto f = compute_potentials(d, 1.0);
  CHECK(f.p[0] == doctest::Approx(-(1.0 + std::exp(-1.0))));
  CHECK(f.p[0] == f.p[1]);
}

TEST_CASE("single point carries its own unit term") {
  const auto d = DistanceMatrix::from_values(1, {0.0});
  CHECK(compute_potentials(d, 2.0).p[0] == -1.0);
}

TEST_CASE("kernel scale extremes") {
  const auto data = gap::testing::random_points(25, 2, 4, 10.0);
  const auto d = compute_distance_matrix(data, Metric::euclidean);
  const auto wide = compute_potentials(d, 1e9);
  const auto narrow = compute_potentials(d, 1e-9);
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(wide.p[i] == doctest::Approx(-25.0).epsilon(1e-6));
    CHECK(narrow.p[i] == -1.0);
  }
}

TEST_CASE("potentials are negative and bounded by -n") {
  const auto data = gap::testing::random_points(60, 3, 8);
  const auto d = compute_distance_matrix(data, Metric::euclidean);
  const auto f = compute_potentials(d, 0.3);
  for (double v : f.p) {
    CHECK(v <= -1.0);
    CHECK(v >= -60.0);
  }
}

TEST_CASE("rigid motion leaves potentials unchanged") {
  const auto data = gap::testing::random_points(40, 2, 12);
  RealRows moved;
  const double c = std::cos(0.7), s = std::sin(0.7);
  for (const auto& p : data.real_points()) moved.push_back({c * p[0] - s * p[1] + 5.0, s * p[0] + c * p[1] - 2.0});
  const auto f1 = compute_potentials(compute_distance_matrix(data, Metric::euclidean), 0.5);
  const auto f2 = compute_potentials(compute_distance_matrix(Dataset(moved), Metric::euclidean), 0.5);
  for (std::size_t i = 0; i < f1.size(); ++i) CHECK(f1.p[i] == doctest::Approx(f2.p[i]).epsilon(1e-12));
}

TEST_CASE("relabeling points permutes potentials") {
  const auto data = gap::testing::random_points(30, 2, 13);
  std::vector<std::size_t> perm(30);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(1);
  std::shuffle(perm.begin(), perm.end(), rng);
  const auto f = compute_potentials(compute_distance_matrix(data, Metric::euclidean), 1.0);
  const auto g = compute_potentials(compute_distance_matrix(data.select(perm), Metric::euclidean), 1.0);
  for (std::size_t i = 0; i < perm.size(); ++i) CHECK(g.p[i] == doctest::Approx(f.p[perm[i]]).epsilon(1e-12));
}

TEST_CASE("order is a strict total order with a unique minimum") {
  PotentialField f{{-2.0, -3.0, -2.0, -3.0, -1.0}};
  CHECK(f.before(1, 3));
  CHECK_FALSE(f.before(3, 1));
  CHECK(f.before(0, 2));
  CHECK_FALSE(f.before(2, 2));
  const auto order = f.ordered_nodes();
  CHECK(order == std::vector<std::size_t>{1, 3, 0, 2, 4});

  PotentialField tie{{-1.0, -1.0, -1.0, -1.0, -1.0, -1.0}};
  CHECK(tie.before(0, 5));
  CHECK(tie.ordered_nodes().front() == 0);
}

TEST_CASE("thread count does not change potentials") {
  const auto data = gap::testing::random_points(90, 2, 21);
  const auto d = compute_distance_matrix(data, Metric::euclidean);
  CHECK(compute_potentials(d, 0.7, 1).p == compute_potentials(d, 0.7, 4).p);
}

TEST_CASE("non-positive sigma is rejected") {
  const auto d = DistanceMatrix::from_values(1, {0.0});
  CHECK_THROWS_AS(compute_potentials(d, 0.0), ParameterError);
  CHECK_THROWS_AS(compute_potentials(d, -1.0), ParameterError);
}

TEST_SUITE_END();
