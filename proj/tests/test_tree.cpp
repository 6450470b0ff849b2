#include <doctest.h>

#include <cmath>

#include "arbor/tree.hpp"

using namespace arbor;

TEST_CASE("generators place vertices where expected") {
  const auto h = TreeDescriptor::homogeneous(1.0, 2);
  for (std::size_t k = 1; k <= 5; ++k) {
    CHECK(h.radius(k) == doctest::Approx(double(k)));
    CHECK(h.branch(k) == 2);
  }
  const auto g = TreeDescriptor::geometric(2.0, 1.0, 4);
  for (std::size_t k = 1; k <= 6; ++k) CHECK(g.radius(k) == doctest::Approx(std::pow(2.0, double(k)) - 1.0));
  CHECK(h.radius(0) == 0.0);
  CHECK(h.branch(0) == 1);
}

TEST_CASE("invalid trees are rejected") {
  CHECK_THROWS_AS(build_tree({{1.0, 2}}, TailRule::halfline()), InvalidArgument);
  CHECK_THROWS_AS(build_tree({{1.0, 2}, {0.5, 2}}, TailRule::homogeneous(1.0, 2)), InvalidArgument);
  CHECK_THROWS_AS(build_tree({{1.0, 1}}, TailRule::homogeneous(1.0, 2)), InvalidArgument);
}

TEST_CASE("branching functions") {
  const auto h = TreeDescriptor::homogeneous(1.0, 2);
  const StepWeight g0 = branching_function(h, 0);
  CHECK(g0(0.5) == 1.0);
  CHECK(g0(1.5) == 2.0);
  const StepWeight g1 = branching_function(h, 1);
  CHECK(g1(1.5) == 1.0);
  CHECK(g1(2.5) == 2.0);
  CHECK(g1.left() == 1.0);

  const StepWeight geo = branching_function(TreeDescriptor::geometric(2.0, 1.0, 4), 0);
  for (int k = 0; k < 6; ++k) {
    const double a = std::pow(2.0, k) - 1.0, b = std::pow(2.0, k + 1) - 1.0;
    CHECK(geo(0.5 * (a + b)) == doctest::Approx(std::pow(4.0, k)));
    CHECK(geo(b) == doctest::Approx(std::pow(4.0, k)));  // left-continuous
  }
}

TEST_CASE("reduced height") {
  CHECK(reduced_height(TreeDescriptor::homogeneous(1.0, 2)).value() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(reduced_height(TreeDescriptor::geometric(4.0, 1.0, 2)).is_infinite());
  CHECK(reduced_height(TreeDescriptor::geometric(2.0, 1.0, 4)).value() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(reduced_height(TreeDescriptor::halfline()).is_infinite());
}

TEST_CASE("dimension bounds") {
  auto [c1, c2] = dimension_bounds(TreeDescriptor::geometric(2.0, 1.0, 4), 3.0);
  CHECK(c1 == doctest::Approx(0.25));
  CHECK(c2 == doctest::Approx(1.0));
  auto [h1, h2] = dimension_bounds(TreeDescriptor::halfline(), 1.0);
  CHECK(h1 == 1.0);
  CHECK(h2 == 1.0);
  CHECK_THROWS_AS(dimension_bounds(TreeDescriptor::homogeneous(1.0, 2), 3.0), NoGlobalDimension);
  // every geometric family has a finite positive envelope at its own dimension
  for (auto [q, b] : {std::pair{4.0, 2}, {2.0, 4}, {3.0, 9}, {2.0, 3}}) {
    auto [lo, hi] = dimension_bounds(TreeDescriptor::geometric(q, 1.0, b), 1.0 + std::log(b) / std::log(q));
    CHECK(lo > 0.0);
    CHECK(lo <= hi);
    CHECK(std::isfinite(hi));
  }
}

TEST_CASE("tail integrals") {
  const StepWeight geo = branching_function(TreeDescriptor::geometric(2.0, 1.0, 4), 0);
  CHECK(tail_integral(geo, 0.0).value() == doctest::Approx(2.0).epsilon(1e-14));
  const StepWeight h4 = branching_function(TreeDescriptor::homogeneous(1.0, 4), 0);
  CHECK(tail_integral(h4, 1.0).value() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(tail_integral(StepWeight::constant(0.0, 1.0), 0.0).is_infinite());
}

TEST_CASE("multiplicities") {
  const auto h = TreeDescriptor::homogeneous(1.0, 2);
  CHECK(multiplicity(h, 1) == 1);
  CHECK(multiplicity(h, 2) == 2);
  CHECK(multiplicity(build_tree({{1.0, 3}, {2.0, 2}}, TailRule::homogeneous(1.0, 2)), 2) == 3);
  CHECK_THROWS(multiplicity(h, 0));
}

TEST_CASE("edge length and counting identities") {
  const auto trees = {TreeDescriptor::homogeneous(1.0, 3), TreeDescriptor::geometric(2.0, 1.0, 4),
                      build_tree({{0.7, 3}, {1.1, 2}}, TailRule::geometric(1.5, 0.8, 2))};
  for (const auto& t : trees) {
    const StepWeight g0 = branching_function(t, 0);
    for (double T : {0.35, 1.7, 4.45, 9.9}) {
      CHECK(g0.integral(0.0, T) == doctest::Approx(edge_length_below(t, T)).epsilon(1e-12));
      std::int64_t sum = 1;
      for (std::size_t k = 1; t.radius(k) < T; ++k) sum += multiplicity(t, k);
      CHECK(double(sum) == g0(T));
    }
  }
}
