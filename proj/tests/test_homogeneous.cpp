#include <doctest.h>

#include <cmath>
#include <random>

#include "arbor/corpus.hpp"
#include "arbor/ground_state.hpp"
#include "arbor/homogeneous.hpp"

using namespace arbor;

TEST_CASE("bottom of the essential spectrum") {
  CHECK(lambda_b(4) == doctest::Approx(0.414093677018).epsilon(1e-11));
  CHECK(lambda_b(2) == doctest::Approx(0.115489125027).epsilon(1e-11));
  double prev = 0.0;
  for (int b = 2; b < 2000; b = b * 3 / 2 + 1) {
    CHECK(lambda_b(b) > prev);
    prev = lambda_b(b);
  }
  CHECK(prev < kPi * kPi / 4.0);
  CHECK(kPi * kPi / 4.0 - lambda_b(1e8) < 1e-3);
  CHECK_THROWS(lambda_b(1.0));
}

TEST_CASE("ground state coefficients") {
  const GroundState gs(4);
  CHECK(gs.omega(0.0) == 1.0);
  CHECK(gs.omega_derivative(0.0, true) == doctest::Approx(0.0));
  auto [a1, b1] = gs.coefficients(1);
  CHECK(a1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b1 == doctest::Approx(-0.25).epsilon(1e-15));
  for (std::size_t j = 0; j < 30; ++j) {
    auto [a, b] = gs.coefficients(j);
    auto [ra, rb] = gs.recursion_coefficients(j);
    CHECK(a == doctest::Approx(ra).epsilon(1e-12));
    CHECK(b == doctest::Approx(rb).epsilon(1e-12));
  }
}

TEST_CASE("ground state checks") {
  for (int b : {2, 3, 4, 7}) {
    const auto c = check_ground_state(b);
    CHECK(c.ode_residual <= 1e-12);
    CHECK(c.jump_residual <= 1e-12);
    CHECK(c.recursion_mismatch <= 1e-12);
    CHECK(c.envelope_lo > 0.0);
    CHECK(std::isfinite(c.envelope_hi));
    CHECK(c.positive);
    CHECK(c.periodic_factor_ok);
    CHECK(c.not_square_integrable);
  }
}

TEST_CASE("essential spectrum onset") {
  for (int b : {2, 4}) {
    const auto o = essential_onset(b);
    CHECK(o.ok);
    for (std::size_t i = 1; i < o.zeros_above.size(); ++i) {
      CHECK(o.zeros_below[i] == o.zeros_below[0]);
      CHECK(o.zeros_above[i] > o.zeros_above[i - 1]);
    }
  }
}

TEST_CASE("ground state representation") {
  CHECK(homogeneous_count_below_threshold(2, SymmetricPotential::zero()) == 0);
  const auto op = gsr_operator(2, SymmetricPotential::zero());
  // omega^2 g_0 is comparable to (1+t)^2
  const auto c = check_ground_state(2);
  for (double t : {0.5, 3.5, 10.5, 40.5, 90.5}) {
    const double r = op.weight(t) / ((1.0 + t) * (1.0 + t));
    CHECK(r >= c.envelope_lo * c.envelope_lo * (1.0 - 1e-12));
    CHECK(r <= c.envelope_hi * c.envelope_hi * (1.0 + 1e-12));
  }
  std::mt19937_64 rng(12);
  CorpusSpec spec;
  spec.support_hi = 5.0;
  for (int i = 0; i < 20; ++i) {
    const int b = 2 + i % 2;
    const auto V = random_potential(rng, spec);
    CHECK(homogeneous_count_below_threshold(b, V) == homogeneous_count_shifted(b, V, 1e-9));
  }
}

TEST_CASE("homogeneous CLR") {
  auto w = [](double t) { return 1.0 + t; };
  const auto zero = homo_clr_bound(2, SymmetricPotential::zero(), w, kInf);
  CHECK(zero.report.lhs == 0.0);
  CHECK(zero.M == doctest::Approx(1.0).epsilon(1e-9));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10; ++i) {
    const auto V = random_potential(rng);
    const auto r = homo_clr_bound(2, V, w, kInf);
    CHECK(r.report.lhs <= r.envelope_prefactor * r.report.rhs);
  }
  // q = 4 needs w = (1+t)^3: M = sup ((1+t)^2 - 1)^(1/2) / (sqrt2 (1+t)) = 1/sqrt2
  CHECK(homogeneous_M([](double t) { return 1.0 + t; }, 4.0).is_infinite());
  const auto m4 = homogeneous_M([](double t) { return std::pow(1.0 + t, 3.0); }, 4.0);
  REQUIRE(m4.is_finite());
  CHECK(m4.value() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  CHECK(homogeneous_M([](double) { return 1.0; }, kInf).is_infinite());
}
