#include <doctest.h>

#include <cmath>
#include <random>

#include "arbor/bounds.hpp"
#include "arbor/corpus.hpp"
#include "arbor/decomposition.hpp"

using namespace arbor;

namespace {
double one(double) { return 1.0; }
}  // namespace

TEST_CASE("weighted right-hand sides") {
  const auto tree = TreeDescriptor::homogeneous(1.0, 2);
  const Weight g0(branching_function(tree, 0));
  const auto chi = SymmetricPotential::piecewise({0.0, 1.0}, {1.0});
  CHECK(weighted_rhs(g0, chi, 1.0, one, Mode::Tree) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(weighted_rhs(g0, SymmetricPotential::zero(), 1.0, one, Mode::Tree) == 0.0);
  const double v = 2.0;
  const auto box = SymmetricPotential::piecewise({0.0, 1.0}, {v});
  CHECK(weighted_rhs(Weight::unit(), box, 1.5, [](double t) { return 1.0 + t; }, Mode::Halfline) ==
        doctest::Approx(1.5 * std::pow(v, 1.5)).epsilon(1e-12));
  // tree mode picks up g_0 beyond the first vertex
  const auto wide = SymmetricPotential::piecewise({0.0, 2.0}, {1.0});
  CHECK(weighted_rhs(g0, wide, 1.0, one, Mode::Tree) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("Lieb-Thirring right-hand sides") {
  const auto tree = TreeDescriptor::homogeneous(1.0, 2);
  const auto chi = SymmetricPotential::piecewise({0.0, 1.0}, {1.0});
  CHECK(lt_rhs(tree, chi, 1.0, 0.0, 3.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lt_rhs(tree, chi, 0.25, 2.0, 3.0) == doctest::Approx(1.0).epsilon(1e-12));  // a = d - 1
  CHECK(lt_rhs(tree, SymmetricPotential::zero(), 1.0, 0.0, 3.0) == 0.0);
  CHECK_THROWS_AS(lt_rhs(tree, chi, 1.0, 0.5, 1.0), InvalidArgument);
  // p = 1.5: 4^1.5 int_0^1 (1+t) dt
  CHECK(lt_rhs_halfline(SymmetricPotential::piecewise({0.0, 1.0}, {4.0}), 0.5, 1.0) ==
        doctest::Approx(8.0 * 1.5).epsilon(1e-12));
}

TEST_CASE("CLR functional M") {
  const Weight g(PowerWeight::pure(2.0));
  CHECK(clr_M(g, [](double t) { return 1.0 + t; }, kInf).value() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(clr_M(g, [&](double t) { return g(t) * g.tail_integral(t).value(); }, kInf).value() ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(clr_M(Weight::unit(), one, kInf), DivergentIntegral);
}

TEST_CASE("CLR constant bracket") {
  CHECK(clr_bound(1.0, 1.0) == std::pair{1.0, 1.0});
  auto [lo, hi] = clr_bound(1.0, 2.0);
  CHECK(lo == doctest::Approx(1.0));
  CHECK(hi == doctest::Approx(6.75));
  CHECK(clr_bound(0.0, 1.5) == std::pair{0.0, 0.0});
}

TEST_CASE("sharp CLR right-hand side") {
  const Weight g(PowerWeight::pure(2.0));
  const double v = 3.0;
  CHECK(sharp_clr_rhs(g, SymmetricPotential::piecewise({0.0, 1.0}, {v})) == doctest::Approx(1.5 * v).epsilon(1e-10));
  CHECK(sharp_clr_rhs(g, SymmetricPotential::zero()) == 0.0);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const Weight w = random_power_weight(rng, 3.0, 3.0);
    const auto V = random_potential(rng);
    CHECK(consequence_clr_rhs(w, V) >= sharp_clr_rhs(w, V) * (1.0 - 1e-12));
  }
}

TEST_CASE("weighted Hardy inequality") {
  const Weight g(PowerWeight::pure(2.0));
  const auto zero = TrialFunction::piecewise_linear({0.0, 1.0}, {0.0, 0.0});
  const auto h0 = hardy_check(zero, [](double t) { return 1.0 / (1.0 + t); }, g, 4.0);
  CHECK(h0.lhs == 0.0);
  CHECK(h0.rhs == 0.0);
  const auto u = TrialFunction::piecewise_linear({0.0, 1.0, 2.0}, {1.0, 0.5, 0.0});
  CHECK(hardy_check(u, one, Weight::unit(), 4.0).T.is_infinite());

  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto r = hardy_check(random_trial(rng), [](double t) { return std::pow(1.0 + t, -0.75); }, g, 4.0);
    CHECK(r.ok);
    CHECK(r.S_lower <= r.S_upper);
  }
}

TEST_CASE("classical constants") {
  CHECK(classical_lt_constant(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(classical_lt_constant(1.5) == doctest::Approx(3.0 / 16.0).epsilon(1e-15));
  CHECK(classical_lt_constant(1.0) == doctest::Approx(2.0 / (3.0 * kPi)).epsilon(1e-15));
  CHECK(classical_constants(1.0).ek_multiplier == 4.0);
  CHECK(classical_constants(2.0).ek_multiplier == 2.0);
  CHECK_THROWS(classical_constants(0.25));
}

TEST_CASE("bound reports") {
  const auto r = BoundReport::make("x", 2.0, 4.0, 1.0);
  CHECK(r.ratio == 0.5);
  CHECK(r.satisfied);
  CHECK_FALSE(BoundReport::make("x", 4.0, 2.0, 1.0).satisfied);
}

TEST_CASE("coupling average reproduces the higher moment") {
  // tr(H - V)_-^{3/2} = (3/2) int_0^inf tr(H - V + e)_-^{1/2} de
  const auto tree = TreeDescriptor::geometric(2.0, 1.0, 4);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 5; ++i) {
    const auto V = random_potential(rng).scaled(5.0);
    const auto spec = tree_spectrum(tree, V, 0.0);
    const double top = V.sup_positive();
    const int n = 20000;
    double avg = 0.0;
    for (int k = 0; k < n; ++k) avg += tree_moment_from(spec, 0.5, (k + 0.5) * top / n) * top / n;
    CHECK(1.5 * avg == doctest::Approx(tree_moment_from(spec, 1.5)).epsilon(1e-4));
  }
}
