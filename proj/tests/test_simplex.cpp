#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gpttomo/rng.hpp"
#include "gpttomo/simplex.hpp"

using namespace gpttomo;

TEST_CASE("midpoint of two generators is feasible with equal weights") {
  const auto r = convex_membership({0.5, 0.5}, {{1, 0}, {0, 1}});
  REQUIRE(r.feasible);
  CHECK(r.weights[0] == doctest::Approx(0.5));
  CHECK(r.weights[1] == doctest::Approx(0.5));
}

TEST_CASE("points outside the simplex are infeasible") {
  CHECK_FALSE(convex_membership({1.5, -0.5}, {{1, 0}, {0, 1}}).feasible);
  CHECK_FALSE(convex_membership({0.4, 0.4}, {{1, 0}, {0, 1}}).feasible);  // subnormalized
}

TEST_CASE("bct product state decomposes over the extremal pair") {
  // |0> [x] |1> = (|(01)+> + |(01)->)/2 against the eight extremal states.
  std::vector<Vec> generators;
  for (std::size_t k = 0; k < 8; ++k) {
    Vec v(8, 0.0);
    v[k] = 1.0;
    generators.push_back(v);
  }
  Vec point(8, 0.0);
  point[2] = 0.5;  // (01)+
  point[3] = 0.5;  // (01)-
  const auto r = convex_membership(point, generators);
  REQUIRE(r.feasible);
  CHECK(r.weights[2] == doctest::Approx(0.5));
  CHECK(r.weights[3] == doctest::Approx(0.5));
  for (std::size_t k : {0u, 1u, 4u, 5u, 6u, 7u}) CHECK(r.weights[k] < 1e-9);
}

TEST_CASE("every generator is feasible in its own hull") {
  Rng rng(5);
  std::vector<Vec> generators;
  for (int g = 0; g < 12; ++g) {
    Vec v(4);
    for (double& x : v) x = rng.next_gaussian();
    generators.push_back(v);
  }
  for (const Vec& g : generators) {
    const auto r = convex_membership(g, generators);
    CHECK(r.feasible);
    // The found weights must reproduce the point.
    Vec acc(4, 0.0);
    for (std::size_t k = 0; k < generators.size(); ++k)
      acc = add(acc, scale(generators[k], r.weights[k]));
    CHECK(norm_inf(sub(acc, g)) < 1e-7);
  }
}

TEST_CASE("random hull points are feasible and reproduce the target") {
  Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Vec> generators;
    for (int g = 0; g < 8; ++g) {
      Vec v(5);
      for (double& x : v) x = rng.next_gaussian();
      generators.push_back(v);
    }
    Vec weights(generators.size());
    double total = 0.0;
    for (double& w : weights) {
      w = rng.next_double();
      total += w;
    }
    Vec point(5, 0.0);
    for (std::size_t k = 0; k < generators.size(); ++k)
      point = add(point, scale(generators[k], weights[k] / total));
    const auto r = convex_membership(point, generators);
    CHECK(r.feasible);
  }
}

TEST_CASE("conic membership ignores normalization") {
  const auto r = conic_membership({3.0, 2.0}, {{1, 0}, {0, 1}});
  REQUIRE(r.feasible);
  CHECK(r.weights[0] == doctest::Approx(3.0));
  CHECK(r.weights[1] == doctest::Approx(2.0));
  CHECK_FALSE(conic_membership({-0.1, 0.0}, {{1, 0}, {0, 1}}).feasible);
}

TEST_CASE("warm-started column generation reaches feasibility") {
  // Target needs a column that is only added after the first solve.
  PhaseOneSimplex lp(Vec{1.0, 1.0});
  lp.add_column({1.0, 0.0});
  lp.solve();
  CHECK_FALSE(lp.feasible(1e-9));
  const Vec y = lp.duals();
  // The missing column has positive dual value, i.e. it can improve.
  CHECK(dot(y, {1.0, 1.0}) > 1e-9);
  lp.add_column({1.0, 1.0});
  lp.solve();
  CHECK(lp.feasible(1e-9));
  const auto x = lp.solution();
  CHECK(x[1] == doctest::Approx(1.0));
}
