#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "arbor/corpus.hpp"
#include "arbor/decomposition.hpp"
#include "arbor/fem.hpp"

using namespace arbor;

TEST_CASE("component operators") {
  const auto tree = TreeDescriptor::homogeneous(1.0, 2);
  const auto V = SymmetricPotential::piecewise({0.0, 2.0}, {5.0});
  const auto a0 = component_operator(tree, V, 0);
  CHECK(a0.endpoint == Endpoint::Neumann);
  CHECK(a0.left == 0.0);
  CHECK(a0.weight(0.5) == 1.0);
  const auto a1 = component_operator(tree, V, 1);
  CHECK(a1.endpoint == Endpoint::Dirichlet);
  CHECK(a1.left == 1.0);
  CHECK(a1.weight(1.5) == 1.0);
  CHECK(a1.weight(2.5) == 2.0);
  const auto a3 = component_operator(tree, V, 3);
  CHECK(count_negative(a3, 0.0) == 0);
}

TEST_CASE("tree counts and moments") {
  const auto tree = TreeDescriptor::homogeneous(1.0, 2);
  CHECK(tree_moment(tree, SymmetricPotential::zero(), 1.0) == 0.0);
  CHECK(tree_count(tree, SymmetricPotential::zero()) == 0);

  // support inside (0, t_1): only the root component contributes
  const auto inner = SymmetricPotential::piecewise({0.0, 0.8}, {40.0});
  const auto root = component_operator(tree, inner, 0);
  CHECK(tree_moment(tree, inner, 1.0) == doctest::Approx(moment(root, 1.0)));

  // recurrent tree: any weak potential binds
  const auto rec = TreeDescriptor::geometric(4.0, 1.0, 2);
  CHECK(tree_count(rec, SymmetricPotential::piecewise({0.0, 1.0}, {1e-3})) >= 1);

  // transient d = 3 tree below the one-bound-state threshold
  const auto geo = TreeDescriptor::geometric(2.0, 1.0, 4);
  CHECK(tree_count(geo, SymmetricPotential::piecewise({0.0, 1.0}, {0.3})) == 0);
}

TEST_CASE("direct tree oracle on the homogeneous example") {
  const auto tree = TreeDescriptor::homogeneous(1.0, 2);
  const auto V = SymmetricPotential::piecewise({0.0, 2.0}, {5.0});
  // T = 6 is itself a vertex radius; move just past the middle of the edge
  const auto c = direct_tree_oracle(tree, V, -0.2, 6.5);
  CHECK(c.agree);
  CHECK(c.value == tree_count(tree, V, 0.2));
  const auto zero = direct_tree_oracle(tree, SymmetricPotential::zero(), -0.2, 6.5);
  CHECK(zero.dirichlet == 0);
  CHECK(zero.neumann == 0);
}

TEST_CASE("oracle bracketing tightens with the truncation") {
  const auto tree = TreeDescriptor::homogeneous(1.0, 2);
  const auto V = SymmetricPotential::piecewise({0.0, 2.0}, {5.0});
  std::int64_t prev = 1 << 30;
  for (double T : {2.5, 3.5, 5.5}) {
    const auto c = direct_tree_oracle(tree, V, -0.2, T);
    CHECK(c.neumann >= c.dirichlet);
    CHECK(c.neumann - c.dirichlet <= prev);
    prev = c.neumann - c.dirichlet;
  }
}

TEST_CASE("direct oracle multiplicities follow the component pattern") {
  const auto tree = build_tree({{1.0, 3}, {2.0, 2}}, TailRule::homogeneous(6.0, 2));
  const auto V = SymmetricPotential::piecewise({0.0, 2.6}, {12.0});
  const double T = 6.5;
  const auto direct = direct_tree_eigenvalues(tree, V, -0.5, T, {.density = 128});
  const auto spec = tree_spectrum(tree, V, -0.5);
  std::int64_t expected = 0;
  for (const auto& c : spec) expected += c.multiplicity * std::int64_t(c.eigenvalues.size());
  REQUIRE(std::int64_t(direct.size()) == expected);
  for (const auto& c : spec)
    for (const auto& e : c.eigenvalues) {
      std::int64_t near = 0;
      for (double x : direct) near += std::abs(x - e.value) < 1e-2 * (1.0 + std::abs(e.value));
      CHECK(near >= c.multiplicity);
    }
}

TEST_CASE("majorization") {
  const auto tree = TreeDescriptor::homogeneous(1.0, 2);
  const auto V = SymmetricPotential::piecewise({0.0, 3.0}, {3.0});
  const auto m = majorization_check(tree, V, 1.0, 1);
  CHECK(m.ok);
  CHECK(m.lhs <= m.rhs);
  const auto far = majorization_check(tree, SymmetricPotential::piecewise({0.0, 1.5}, {3.0}), 1.0, 2);
  CHECK(far.lhs == 0.0);
  CHECK(far.rhs == 0.0);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    const auto inst = random_tree_instance(rng);
    for (std::size_t k = 1; k <= 3; ++k) CHECK(majorization_check(inst.tree, inst.V, 0.5, k).ok);
  }
}

TEST_CASE("batch kernels match their serial reference") {
  std::mt19937_64 rng(3);
  std::vector<TreeInstance> trees;
  std::vector<HalflineInstance> lines;
  for (int i = 0; i < 24; ++i) {
    trees.push_back(random_tree_instance(rng));
    lines.push_back(random_halfline_instance(rng));
  }
  CHECK(batch_tree_counts(trees, true) == batch_tree_counts(trees, false));
  CHECK(batch_halfline_counts(lines, true) == batch_halfline_counts(lines, false));
  CHECK(batch_tree_moments(trees, 1.0, true) == batch_tree_moments(trees, 1.0, false));
}
