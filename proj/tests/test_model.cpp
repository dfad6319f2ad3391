#include <doctest.h>

#include <cmath>
#include <random>

#include "latinhib/errors.hpp"
#include "latinhib/model.hpp"
#include "support/instances.hpp"

using namespace latinhib;

namespace {

DistanceMatrix line(std::initializer_list<double> xs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return distances_from_points(PointSet(rows));
}

}  // namespace

TEST_CASE("point set validation") {
  CHECK_THROWS_AS(PointSet(std::vector<std::vector<double>>{}), InputError);
  CHECK_THROWS_AS(PointSet(std::vector<std::vector<double>>{{}}), InputError);
  CHECK_THROWS_AS(PointSet({{1.0, 2.0}, {1.0}}), InputError);
  try {
    PointSet({{1.0, 2.0}, {1.0, std::nan("")}});
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("row 1, column 1") != std::string::npos);
  }
  const PointSet ps({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}});
  CHECK(ps.size() == 2);
  CHECK(ps.dim() == 3);
  CHECK(ps[1][2] == 6.0);
}

TEST_CASE("euclidean distances") {
  const auto two = line({0.0, 3.0});
  CHECK(two(0, 1) == 3.0);
  CHECK(two(1, 0) == 3.0);
  CHECK(two(0, 0) == 0.0);

  const auto single = line({42.0});
  CHECK(single.size() == 1);
  CHECK(single(0, 0) == 0.0);
  CHECK(single.max() == 0.0);

  const auto tri = distances_from_points(PointSet({{0.0, 0.0}, {3.0, 4.0}}));
  CHECK(tri(0, 1) == 5.0);

  const auto overflow = PointSet({{-1e308}, {1e308}});
  CHECK_THROWS_AS(distances_from_points(overflow), InputError);
}

TEST_CASE("distance matrix rejects invalid storage") {
  SquareMatrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 2.0;
  CHECK_THROWS_AS(DistanceMatrix{m}, InputError);
  m(1, 0) = 1.0;
  m(1, 1) = 0.5;
  CHECK_THROWS_AS(DistanceMatrix{m}, InputError);
  m(1, 1) = 0.0;
  m(0, 1) = m(1, 0) = -1.0;
  CHECK_THROWS_AS(DistanceMatrix{m}, InputError);
  m(0, 1) = m(1, 0) = 1.0;
  const DistanceMatrix ok(m);
  CHECK(ok.min_off_diagonal() == 1.0);
}

TEST_CASE("interaction weights follow the threshold formula") {
  SUBCASE("coincident points interact fully") {
    const auto w = build_weights(line({0.0, 0.0}), 1.0);
    CHECK(w(0, 1) == 1.0);
  }
  SUBCASE("pair at exactly the threshold") {
    const auto w = build_weights(line({0.0, 2.5}), 2.5);
    CHECK(w(0, 1) == 0.5);
  }
  SUBCASE("pair beyond the threshold") {
    const auto w = build_weights(line({0.0, 2.0}), 1.0);
    CHECK(w(0, 1) == 0.0);
  }
  SUBCASE("zero threshold gives the identity") {
    const auto w = build_weights(line({0.0, 0.0, 1.0}), 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) CHECK(w(i, j) == (i == j ? 1.0 : 0.0));
    }
  }
  SUBCASE("interior value") {
    // d = 1, t = 2: 4 / (1 + 4)
    const auto w = build_weights(line({0.0, 1.0}), 2.0);
    CHECK(w(0, 1) == doctest::Approx(0.8).epsilon(1e-15));
  }
  CHECK_THROWS_AS(build_weights(line({0.0, 1.0}), -1.0), ParameterError);
  CHECK_THROWS_AS(build_weights(line({0.0, 1.0}), std::nan("")), ParameterError);
}

TEST_CASE("weight invariants hold on random instances") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> frac(0.0, 1.2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto dm = distances_from_points(testing::random_points(rng, 3 + trial % 15));
    const double t = frac(rng) * dm.max();
    const auto w = build_weights(dm, t);
    for (std::size_t i = 0; i < dm.size(); ++i) {
      CHECK(w(i, i) == 1.0);
      for (std::size_t j = 0; j < dm.size(); ++j) {
        CHECK(w(i, j) == w(j, i));
        if (i == j) continue;
        if (dm(i, j) > t) {
          CHECK(w(i, j) == 0.0);
        } else {
          CHECK(w(i, j) >= 0.5);
          CHECK(w(i, j) <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("weights depend only on the distance to threshold ratio") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto dm = distances_from_points(testing::random_points(rng, 10));
    const double t = 0.4 * dm.max();
    const auto w = build_weights(dm, t);
    for (const double c : {1e-3, 0.37, 1e3}) {
      const auto ws = build_weights(scale_distances(dm, c), c * t);
      for (std::size_t i = 0; i < dm.size(); ++i) {
        for (std::size_t j = 0; j < dm.size(); ++j) {
          CHECK(ws(i, j) == doctest::Approx(w(i, j)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("weights are nondecreasing in the threshold") {
  std::mt19937_64 rng(13);
  const auto dm = distances_from_points(testing::random_points(rng, 12));
  std::vector<double> ts;
  for (int s = 0; s <= 40; ++s) ts.push_back(dm.max() * s / 30.0);
  for (std::size_t s = 1; s < ts.size(); ++s) {
    const auto lo = build_weights(dm, ts[s - 1]);
    const auto hi = build_weights(dm, ts[s]);
    for (std::size_t i = 0; i < dm.size(); ++i) {
      for (std::size_t j = 0; j < dm.size(); ++j) CHECK(hi(i, j) >= lo(i, j));
    }
  }
}
