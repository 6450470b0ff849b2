#include <doctest.h>

#include <cmath>
#include <random>

#include "arbor/corpus.hpp"
#include "arbor/fem.hpp"
#include "arbor/halfline.hpp"

using namespace arbor;

namespace {
// tail elements shrink with the interior ones, or the tail error dominates
FemOptions refined(double density) {
  FemOptions o{.density = density};
  o.max_element = 4.0 / density;
  o.tail_grading = 1.0 + 2.0 / density;
  return o;
}

HalflineOperator box(double v, double width) {
  HalflineOperator op;
  op.potential = SymmetricPotential::piecewise({0.0, width}, {v});
  return op;
}
}  // namespace

TEST_CASE("free propagation") {
  HalflineOperator op;
  const auto s = propagate(op, 0.0, initial_state(op), 5.0);
  CHECK(s.u == doctest::Approx(1.0));
  CHECK(s.flux == doctest::Approx(0.0));
  CHECK(s.zeros == 0);
}

TEST_CASE("cos 2t has two zeros on (0, pi)") {
  const auto op = box(4.0, kPi);
  const auto s = propagate(op, 0.0, initial_state(op), kPi);
  CHECK(s.zeros == 2);
  CHECK(s.u == doctest::Approx(1.0).epsilon(1e-10));
  const auto q = propagate(op, 0.0, initial_state(op), 1.0);
  CHECK(q.u == doctest::Approx(std::cos(2.0)).epsilon(1e-12));
}

TEST_CASE("flux is continuous across a weight jump") {
  HalflineOperator op;
  op.weight = Weight(StepWeight({0.0, 1.0}, {1.0}, GeometricPattern{1.0, 1.0, 2.0, 1.0}));
  SolutionState s;
  s.t = 0.0;
  s.u = 1.0;
  s.flux = 0.6;  // u' = 0.6 with g = 1
  const auto out = propagate(op, 0.0, s, 1.0 + 1e-12);
  CHECK(out.flux / op.weight.value_after(1.0) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("counts of simple boxes") {
  CHECK(count_negative(HalflineOperator{}, 0.0) == 0);
  CHECK(count_negative(HalflineOperator{}, 1.0) == 0);
  CHECK(count_negative(box(1.0, kPi), 0.0) == 1);
  CHECK(count_negative(box(4.0, kPi), 0.0) == 2);
}

TEST_CASE("eigenvalues and moments of simple boxes") {
  CHECK(eigenvalues_below(HalflineOperator{}, 0.0).empty());
  const auto ev = eigenvalues_below(box(1.0, kPi), 0.0);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].value > -1.0);
  CHECK(ev[0].value < 0.0);
  const auto oracle = oracle_spectrum(box(1.0, kPi), 0.0, FemOptions{.density = 512});
  REQUIRE(oracle.eigenvalues.size() == 1);
  CHECK(ev[0].value == doctest::Approx(oracle.eigenvalues[0]).epsilon(1e-4));

  CHECK(moment_from({{-0.25, 0.0}}, 2.0) == doctest::Approx(0.0625));
  CHECK(moment(HalflineOperator{}, 1.0) == 0.0);
  const auto op = box(4.0, kPi);
  const auto two = eigenvalues_below(op, 0.0);
  REQUIRE(two.size() == 2);
  // second-order elements: extrapolate two refinements
  const auto a = oracle_spectrum(op, 0.0, refined(256), 1e-13).eigenvalues;
  const auto b = oracle_spectrum(op, 0.0, refined(512), 1e-13).eigenvalues;
  const double extrapolated = -((4.0 * (b[0] + b[1]) - (a[0] + a[1])) / 3.0);
  CHECK(moment(op, 1.0) == doctest::Approx(extrapolated).epsilon(1e-6));
}

TEST_CASE("element convergence is second order") {
  const auto op = box(4.0, kPi);
  const double exact = eigenvalues_below(op, 0.0, SolverOptions{.eig_rtol = 1e-13})[0].value;
  const double e1 = oracle_spectrum(op, 0.0, refined(32), 1e-13).eigenvalues[0] - exact;
  const double e2 = oracle_spectrum(op, 0.0, refined(64), 1e-13).eigenvalues[0] - exact;
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("oracle agrees on the pi box") {
  const auto c = oracle_count(box(4.0, kPi), 0.0);
  CHECK(c.agree);
  CHECK(c.value == 2);
  const auto z = oracle_count(HalflineOperator{}, -0.1);
  CHECK(z.dirichlet == 0);
  CHECK(z.neumann == 0);
}

TEST_CASE("monotonicity, interlacing and renormalization") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    auto inst = random_halfline_instance(rng);
    HalflineOperator op = inst.op;
    const double mu = -inst.E;
    // non-increasing in the shift
    CHECK(count_negative(op, mu) >= count_negative(op, mu + 0.3));
    // deeper potential, more bound states and larger moments
    HalflineOperator deeper = op;
    deeper.potential = op.potential.scaled(2.0);
    CHECK(count_negative(deeper, mu) >= count_negative(op, mu));
    CHECK(moment(deeper, 1.0, mu) >= moment(op, 1.0, mu) - 1e-12);
    const auto e1 = eigenvalues_below(op, -mu);
    const auto e2 = eigenvalues_below(deeper, -mu);
    for (std::size_t k = 0; k < e1.size(); ++k) CHECK(e2[k].value <= e1[k].value + 1e-9 * std::abs(e1[k].value));
    // interlacing
    op.endpoint = Endpoint::Neumann;
    const auto nn = count_negative(op, mu);
    op.endpoint = Endpoint::Dirichlet;
    const auto nd = count_negative(op, mu);
    CHECK(nn - nd >= 0);
    CHECK(nn - nd <= 1);
  }
}

TEST_CASE("zero count is invariant under rescaling the initial data") {
  const auto op = box(30.0, 2.0);
  SolutionState a = initial_state(op);
  SolutionState b = a;
  b.u *= 1e-200;
  b.flux *= 1e-200;
  CHECK(propagate(op, -0.5, a, 6.0).zeros == propagate(op, -0.5, b, 6.0).zeros);
}

TEST_CASE("recurrent weights still terminate at zero energy") {
  HalflineOperator op;
  op.potential = SymmetricPotential::piecewise({0.0, 1.0}, {1e-3});
  CHECK(count_negative(op, 0.0) == 1);
}
