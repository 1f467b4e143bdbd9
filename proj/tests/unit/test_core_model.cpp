#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gap/dataset.hpp"
#include "gap/distance.hpp"
#include "gap/error.hpp"
#include "gap/params.hpp"
#include "support/datasets.hpp"
#include "support/files.hpp"

using namespace gap;
using gap::testing::TempDir;
using gap::testing::write_file;

TEST_SUITE_BEGIN("core model");

TEST_CASE("hamming distance counts differing attributes") {
  Dataset data(CategoricalRows{{"x", "s", "n"}, {"x", "y", "w"}, {"x", "s", "n"}});
  const auto d = compute_distance_matrix(data, Metric::hamming);
  CHECK(d(0, 1) == 2.0);
  CHECK(d(1, 0) == 2.0);
  CHECK(d(0, 2) == 0.0);
  CHECK(d(1, 1) == 0.0);
}

TEST_CASE("euclidean distance") {
  Dataset data(RealRows{{0.0, 0.0}, {3.0, 4.0}, {-1.0, 0.0}});
  const auto d = compute_distance_matrix(data, Metric::euclidean);
  CHECK(d(0, 1) == 5.0);
  CHECK(d(0, 2) == 1.0);
  CHECK(d(1, 2) == doctest::Approx(std::sqrt(32.0)));
}

TEST_CASE("distance matrix invariants on random data") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto data = gap::testing::random_points(40, 3, seed);
    const auto d = compute_distance_matrix(data, Metric::euclidean);
    for (std::size_t i = 0; i < d.size(); ++i) {
      REQUIRE(d(i, i) == 0.0);
      for (std::size_t j = 0; j < d.size(); ++j) {
        REQUIRE(d(i, j) == d(j, i));
        REQUIRE(d(i, j) >= 0.0);
      }
    }
  }
}

TEST_CASE("hamming distances are integral and bounded by the attribute count") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 2);
  CategoricalRows rows(30, std::vector<std::string>(6));
  for (auto& r : rows)
    for (auto& v : r) v = std::string(1, static_cast<char>('a' + pick(rng)));
  const auto d = compute_distance_matrix(Dataset(rows), Metric::hamming);
  for (double v : d.values()) {
    CHECK(v == std::floor(v));
    CHECK(v <= 6.0);
  }
}

TEST_CASE("thread count does not change distances") {
  const auto data = gap::testing::random_points(57, 4, 9);
  const auto one = compute_distance_matrix(data, Metric::euclidean, 1);
  const auto many = compute_distance_matrix(data, Metric::euclidean, 3);
  CHECK(one.values() == many.values());
}

TEST_CASE("metric and feature type must agree") {
  Dataset real(RealRows{{0.0}, {1.0}});
  Dataset cat(CategoricalRows{{"a"}, {"b"}});
  CHECK_THROWS_AS(compute_distance_matrix(real, Metric::hamming), InputError);
  CHECK_THROWS_AS(compute_distance_matrix(cat, Metric::euclidean), InputError);
  CHECK_THROWS_AS(parse_metric("cosine"), Error);
  CHECK(parse_metric("hamming") == Metric::hamming);
}

TEST_CASE("from_values validates the matrix") {
  CHECK_NOTHROW(DistanceMatrix::from_values(2, {0.0, 1.0, 1.0, 0.0}));
  CHECK_THROWS_AS(DistanceMatrix::from_values(2, {0.0, 1.0, 2.0, 0.0}), InputError);
  CHECK_THROWS_AS(DistanceMatrix::from_values(2, {1.0, 1.0, 1.0, 0.0}), InputError);
  CHECK_THROWS_AS(DistanceMatrix::from_values(2, {0.0, -1.0, -1.0, 0.0}), InputError);
  CHECK_THROWS_AS(DistanceMatrix::from_values(2, {0.0, 1.0, 1.0}), InputError);
}

TEST_CASE("dataset rejects ragged rows and mismatched labels") {
  CHECK_THROWS_AS(Dataset(RealRows{{0.0, 1.0}, {2.0}}), InputError);
  CHECK_THROWS_AS(Dataset(RealRows{{0.0}, {1.0}}, std::vector<std::string>{"a"}), InputError);
  Dataset data(RealRows{{0.0}, {1.0}, {2.0}}, std::vector<std::string>{"a", "b", "c"});
  const auto sub = data.select({2, 0});
  CHECK(sub.size() == 2);
  CHECK(sub.real_points()[0][0] == 2.0);
  CHECK((*sub.labels())[1] == "a");
}

TEST_CASE("csv loader") {
  TempDir dir;
  SUBCASE("comma and whitespace rows, comments and blanks skipped") {
    write_file(dir / "a.csv", "# header comment\n1,2\n\n3 , 4\n");
    const auto d = load_csv(dir / "a.csv");
    REQUIRE(d.size() == 2);
    CHECK(d.real_points()[1][1] == 4.0);
    write_file(dir / "b.txt", "1 2\n3\t4\n");
    CHECK(load_csv(dir / "b.txt").real_points()[1][0] == 3.0);
  }
  SUBCASE("label column") {
    write_file(dir / "l.csv", "1,2,a\n3,4,b\n");
    const auto d = load_csv(dir / "l.csv", {true, -1});
    CHECK(d.dimension() == 2);
    CHECK((*d.labels())[1] == "b");
    write_file(dir / "f.csv", "a,1,2\nb,3,4\n");
    const auto first = load_csv(dir / "f.csv", {true, 0});
    CHECK((*first.labels())[0] == "a");
    CHECK(first.real_points()[1][0] == 3.0);
  }
  SUBCASE("ragged row reports its line") {
    write_file(dir / "r.csv", "1,2\n3,4\n5\n");
    try {
      load_csv(dir / "r.csv");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("non-numeric field") {
    write_file(dir / "n.csv", "1,2\n3,x\n");
    CHECK_THROWS_AS(load_csv(dir / "n.csv"), ParseError);
  }
  SUBCASE("empty file and missing file") {
    write_file(dir / "e.csv", "\n# nothing\n");
    CHECK_THROWS_AS(load_csv(dir / "e.csv"), ParseError);
    CHECK_THROWS_AS(load_csv(dir / "missing.csv"), IoError);
  }
}

TEST_CASE("mushroom loader") {
  TempDir dir;
  const std::string row1 = "p,x,s,n,t,p,f,c,n,k,e,e,s,s,w,w,p,w,o,p,k,s,u";
  const std::string row2 = "e,x,s,y,t,a,f,c,b,k,e,c,s,s,w,w,p,w,o,p,n,n,g";
  const std::string row3 = "e,b,s,w,t,l,f,c,b,n,e,?,s,s,w,w,p,w,o,p,n,n,m";
  write_file(dir / "m.data", row1 + "\n" + row2 + "\n" + row3 + "\n");
  const auto data = load_mushroom(dir / "m.data");
  REQUIRE(data.size() == 3);
  CHECK(data.dimension() == kMushroomAttributes);
  CHECK((*data.labels())[0] == "p");
  CHECK(data.categorical_points()[2][10] == "?");
  const auto d = compute_distance_matrix(data, Metric::hamming);
  CHECK(d(0, 1) == 7.0);

  write_file(dir / "bad.data", row1 + "\np,x,s\n");
  try {
    load_mushroom(dir / "bad.data");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("missing-value tokens match each other") {
  Dataset data(CategoricalRows{{"?", "a"}, {"?", "b"}});
  CHECK(compute_distance_matrix(data, Metric::hamming)(0, 1) == 1.0);
}

TEST_CASE("subsample indices are deterministic, distinct and sorted") {
  const auto a = subsample_indices(100, 30, 5);
  const auto b = subsample_indices(100, 30, 5);
  CHECK(a == b);
  CHECK(a.size() == 30);
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(std::set<std::size_t>(a.begin(), a.end()).size() == 30);
  CHECK(a.back() < 100);
  CHECK(subsample_indices(100, 30, 6) != a);
}

TEST_CASE("parameter validation") {
  GapParams p;
  CHECK_NOTHROW(p.validate());
  p.sigma = 0.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = {};
  p.alpha = 0.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = {};
  p.damping = 1.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = {};
  p.damping = 0.4;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = {};
  p.convergence_window = 0;
  CHECK_THROWS_AS(p.validate(), ParameterError);

  p = {};
  p.sigma = 4.0;
  p.alpha = -4.0;
  CHECK(p.warnings().size() == 1);
  p.alpha = -5.0;
  CHECK(p.warnings().empty());
}

TEST_CASE("preference rule names") {
  CHECK(parse_preference_rule("incoming") == PreferenceRule::incoming);
  CHECK(to_string(parse_preference_rule("outgoing")) == "outgoing");
  CHECK_THROWS_AS(parse_preference_rule("both"), UsageError);
}

TEST_SUITE_END();
