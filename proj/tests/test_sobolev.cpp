#include <doctest.h>

#include <cmath>
#include <random>

#include "arbor/corpus.hpp"
#include "arbor/decomposition.hpp"
#include "arbor/sobolev.hpp"

using namespace arbor;

TEST_CASE("duality map") {
  const auto a = duality_map(0.0, 1.0, 3.0);
  CHECK(a.p == doctest::Approx(1.0));
  CHECK(std::isinf(a.q));
  CHECK(a.beta == doctest::Approx(0.5));
  CHECK(a.theta == doctest::Approx(1.0));
  for (double d : {1.0, 1.5, 2.0, 3.0, 4.5}) {
    const auto b = duality_map(0.5, 0.0, d);
    CHECK(b.p == doctest::Approx(1.0));
    CHECK(std::isinf(b.q));
    CHECK(b.beta == doctest::Approx((d - 1.0) / 2.0));
    CHECK(b.theta == doctest::Approx(0.5));
  }
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double d = 1.0 + 3.0 * U(rng), gamma = 2.0 * U(rng), aa = 3.0 * U(rng);
    if (gamma + (1.0 + aa) / 2.0 <= 1.0) continue;
    const auto x = duality_map(gamma, aa, d);
    CHECK(x.q == doctest::Approx(2.0 * x.p / (x.p - 1.0)));
    const auto y = duality_from_sobolev(x.q, x.beta, d);
    CHECK(y.a == doctest::Approx(aa).epsilon(1e-10));
    CHECK(y.gamma == doctest::Approx(gamma).epsilon(1e-10));
    CHECK(y.beta == doctest::Approx(x.beta).epsilon(1e-12));
  }
  CHECK_THROWS_AS(duality_map(0.0, 0.0, 3.0), RegionError);  // p < 1
}

TEST_CASE("Sobolev constants") {
  for (double d : {1.0, 2.0, 3.0, 5.0}) CHECK(sobolev_constant(kInf, (d - 1.0) / 2.0, d).value == doctest::Approx(2.0));
  CHECK(sobolev_constant(2.0, 0.5, 3.0).value == doctest::Approx(4.0));
  CHECK_THROWS_AS(sobolev_constant(kInf, 0.0, 2.0), RegionError);
  CHECK_THROWS_AS(sobolev_constant(4.0, 0.0, 1.5), RegionError);
  // d = 1 closed form at q = 2
  const double beta = 0.3;
  CHECK(sobolev_constant(2.0, beta, 1.0).value ==
        doctest::Approx(std::pow(2.0, -2 * beta) * std::pow(1 - 2 * beta, 2 * beta - 1) / beta));
  CHECK_FALSE(sobolev_constant(4.0, 0.75, 3.0).source.empty());
}

TEST_CASE("Sobolev checks on fixed functions") {
  const auto hat = TrialFunction::piecewise_linear({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  CHECK(check_sobolev(hat, 2.0, 0.5, 3.0).ratio < 1.0);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) CHECK(check_sobolev(random_trial(rng), 2.0, 0.5, 1.0).ratio == doctest::Approx(1.0).epsilon(1e-12));
  const auto tiny = TrialFunction::piecewise_linear({0.0, 1.0}, {1e-150, 0.0});
  CHECK(check_sobolev(tiny, 4.0, 0.75, 3.0).ratio <= 1.0);
}

TEST_CASE("counterexample families") {
  const auto r2 = check_sobolev(log_trial(1e2), kInf, 0.0, 2.0, 1.0).ratio;
  const auto r4 = check_sobolev(log_trial(1e4), kInf, 0.0, 2.0, 1.0).ratio;
  CHECK(r4 / r2 > 1.5);

  // part (6): beta above (d-1)/2 and q above its cap; the ratio blows up as l -> 0
  const double q = 8.0, beta = 0.9, d = 2.0;
  const auto v = TrialFunction::piecewise_linear({0.0, 1.0}, {1.0, 0.0});
  const double a = check_sobolev(scaling_trial(v, 1e-2), q, beta, d, 1.0).ratio;
  const double b = check_sobolev(scaling_trial(v, 1e-4), q, beta, d, 1.0).ratio;
  const double exponent = 2.0 / q - (2.0 * beta - d + 1.0);
  CHECK(std::log(b / a) / std::log(1e-2) == doctest::Approx(exponent).epsilon(0.05));

  const auto V = dirac_potential(100.0);
  CHECK(V(0.005) == 100.0);
  CHECK(V(0.02) == 0.0);
  CHECK(weak_coupling_witness(0.3)(0.5) == doctest::Approx(0.3));
}

TEST_CASE("one-bound-state constants") {
  const auto ob = one_bound_state_bound(0.0, 1.0, 3.0);
  CHECK(ob.C == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lowest_admissible(0.0, 1.0, 3.0));
  CHECK_FALSE(lowest_admissible(0.1, 0.0, 1.0));
  CHECK(lowest_admissible(0.5, 0.0, 1.0));
  CHECK_THROWS_AS(one_bound_state_bound(0.1, 0.0, 1.0), RegionError);

  // |lambda_1|^gamma <= C rhs on random potentials, g = (1+t)^2
  const Weight g(PowerWeight::pure(2.0));
  std::mt19937_64 rng(21);
  for (double gamma : {0.5, 1.0}) {
    const auto obg = one_bound_state_bound(gamma, 1.0, 3.0);
    for (int i = 0; i < 30; ++i) {
      HalflineOperator op;
      op.weight = g;
      op.potential = random_potential(rng);
      const auto ev = eigenvalues_below(op, 0.0);
      if (ev.empty()) continue;
      CHECK(std::pow(-ev.front().value, gamma) <= obg.C * lowest_rhs(g, op.potential, gamma, 1.0, 3.0) * (1 + 1e-9));
    }
  }

  // threshold form is scale-free: below 1 no bound state at any coupling
  HalflineOperator op;
  op.weight = g;
  const auto V = SymmetricPotential::piecewise({0.5, 1.5}, {1.0});
  const double unit_rhs = lowest_rhs(g, V, 0.0, 1.0, 3.0);
  op.potential = V.scaled(0.99 / unit_rhs);
  CHECK(count_negative(op, 0.0) == 0);
}

TEST_CASE("Dirichlet sandwich") {
  const Weight g(PowerWeight::pure(2.0));
  const auto V = SymmetricPotential::piecewise({0.0, 1.0, 2.5}, {8.0, 3.0});
  for (double gamma : {0.0, 0.5, 1.0}) {
    const auto s = dirichlet_sandwich(g, 1.0, 1.0, V, gamma, 3.0);
    CHECK(s.lower == doctest::Approx(s.middle).epsilon(1e-8));
    CHECK(s.upper == doctest::Approx(s.middle).epsilon(1e-8));
  }
  const auto z = dirichlet_sandwich(g, 1.0, 2.0, SymmetricPotential::zero(), 1.0, 3.0);
  CHECK(z.lower == 0.0);
  CHECK(z.middle == 0.0);
  CHECK(z.upper == 0.0);
  std::mt19937_64 rng(30);
  for (int i = 0; i < 20; ++i) {
    const auto w = random_power_weight(rng, 3.0, 2.0);
    CHECK(dirichlet_sandwich(w, 1.0, 2.0, random_potential(rng), 0.5, 3.0).ok);
  }
}

TEST_CASE("Hardy-type operator and weak coupling witness") {
  const auto H = hardy_operator(SymmetricPotential::piecewise({0.0, 1.0}, {2.0}));
  CHECK(count_negative(H, 0.0) >= 1);
  CHECK(count_negative(hardy_operator(SymmetricPotential::zero()), 0.0) == 0);
  CHECK(tree_count(TreeDescriptor::geometric(4.0, 1.0, 2), weak_coupling_witness(1e-3)) >= 1);
}

TEST_CASE("region classification") {
  CHECK(classify_region(2.0, 0.5, 3.0) == SobolevRegion::SmallBeta);
  CHECK(classify_region(4.0, 1.2, 3.0) == SobolevRegion::LargeBeta);
  CHECK(classify_region(kInf, 0.0, 1.5) == SobolevRegion::ZeroBeta);
  CHECK_FALSE(region_holds(classify_region(kInf, 0.0, 2.0)));
  CHECK_FALSE(region_holds(classify_region(4.0, 0.0, 1.5)));
  CHECK_FALSE(region_holds(classify_region(kInf, 1.2, 3.0)));
}
