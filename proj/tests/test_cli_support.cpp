#include <doctest.h>

#include <cmath>

#include "arbor/config.hpp"
#include "arbor/scenarios.hpp"
#include "arbor/sobolev.hpp"
#include "arbor/weight.hpp"

using namespace arbor;

TEST_CASE("tree configuration round trip") {
  const auto t = parse_tree(Json::parse(R"({"generator":"explicit","prefix":[[1.0,3],[2.5,2]],
      "tail":{"rule":"geometric","ratio":2.0,"edge_length":1.0,"branch":4}})"));
  CHECK(t.radius(2) == 2.5);
  CHECK(t.branch(1) == 3);
  const auto back = parse_tree(to_json(t));
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(back.radius(k) == t.radius(k));
    CHECK(back.branch(k) == t.branch(k));
  }
  CHECK(parse_tree(Json::parse(R"({"generator":"homogeneous","branch":2})")).radius(3) == 3.0);
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(parse_tree(Json::parse(R"({"generator":"explicit","prefix":[[1.0,2]]})")), SchemaError);
  CHECK_THROWS_AS(parse_tree(Json::parse(R"({"generator":"fractal"})")), SchemaError);
  CHECK_THROWS_AS(parse_tree(Json::parse(R"({"generator":"homogeneous","branch":"two"})")), SchemaError);
  CHECK_THROWS_AS(parse_potential(Json::parse(R"({"kind":"piecewise","breakpoints":[0,1]})")), SchemaError);
  CHECK_THROWS_AS(parse_potential(Json::parse(R"({"kind":"piecewise","breakpoints":[1,0],"values":[1]})")),
                  SchemaError);
  CHECK_THROWS_AS(parse_weight(Json::parse(R"({"kind":"magic"})")), SchemaError);
}

TEST_CASE("potential and weight configuration") {
  const auto V = parse_potential(Json::parse(R"({"kind":"piecewise","breakpoints":[0,2],"values":[5]})"));
  CHECK(V(1.0) == 5.0);
  CHECK(V(3.0) == 0.0);
  const auto E = parse_potential(Json::parse(R"({"kind":"expr","expr":"1 - t/2","support":[0,2]})"));
  CHECK(E(1.0) == doctest::Approx(0.5));
  const auto g = parse_weight(Json::parse(R"({"kind":"power","exponent":2})"));
  CHECK(g(1.0) == doctest::Approx(4.0));
  const auto s = parse_weight(to_json(Weight(StepWeight({0.0, 1.0}, {1.0}, GeometricPattern{1.0, 1.0, 2.0, 2.0}))));
  CHECK(s(3.5) == doctest::Approx(8.0));
}

TEST_CASE("line fit") {
  auto [slope, icpt] = fit_line({0.0, 1.0, 2.0}, {1.0, 3.0, 5.0});
  CHECK(slope == doctest::Approx(2.0));
  CHECK(icpt == doctest::Approx(1.0));
}

TEST_CASE("Weyl sweep bookkeeping") {
  const auto tree = TreeDescriptor::geometric(4.0, 1.0, 2);
  const auto V = SymmetricPotential::piecewise({0.0, 1.0}, {1.0});
  const auto s = weyl_sweep(tree, V, 1.0, {0.0, 10.0, 100.0});
  CHECK(s.points[0].degenerate);
  CHECK(s.points[0].ratio == 0.0);
  CHECK(s.points[2].ratio > 0.5);
  const auto par = weyl_sweep(tree, V, 1.0, {0.0, 10.0, 100.0}, true);
  for (std::size_t i = 0; i < 3; ++i) CHECK(par.points[i].ratio == s.points[i].ratio);
}

TEST_CASE("weak coupling drops points with several bound states") {
  const auto f = weak_coupling_fit(TreeDescriptor::halfline(), weak_coupling_witness(1.0), 1.0, {0.05, 0.1, 50.0});
  CHECK(f.points[2].count > 1);
  CHECK_FALSE(f.points[2].used);
  CHECK(f.used == 2);
  CHECK(f.expected == 2.0);
}
