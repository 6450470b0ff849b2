#pragma once

#include <optional>
#include <string>

#include "arbor/bounds.hpp"
#include "arbor/halfline.hpp"
#include "arbor/trial.hpp"

namespace arbor {

// Where (q, beta, d) falls among the cases of the weighted interpolation inequality.
enum class SobolevRegion {
  SmallBeta,       // holds for 2 <= q <= inf
  LargeBeta,       // holds for 2 <= q <= 1/(beta - (d-1)/2)
  ZeroBeta,        // 1 <= d < 2, beta = 0, q = inf
  FailsFiniteQ,    // 1 <= d <= 2, -(2-d)/2 <= beta <= 0, q < inf
  FailsInfiniteQ,  // beta < 0 (1 <= d < 2) or d = 2, beta = 0, q = inf
  FailsLargeQ,     // beta > (d-1)/2, q above the cap
  Outside          // no statement either way
};

const char* region_name(SobolevRegion r);
bool region_holds(SobolevRegion r);
SobolevRegion classify_region(double q, double beta, double d);

struct DualityParams {
  double gamma = 0.0, a = 0.0, p = 1.0;
  double q = kInf, beta = 0.0, theta = 0.0;
  double d = 1.0;
  SobolevRegion region = SobolevRegion::Outside;
};

// (gamma, a, d) -> (p, q, beta, theta). Throws RegionError when q would leave (2, inf].
DualityParams duality_map(double gamma, double a, double d);
// (q, beta, d) -> (p, a), gamma = p - (1+a)/2.
DualityParams duality_from_sobolev(double q, double beta, double d);

struct SobolevConstant {
  double value = 0.0;
  std::string source;  // which endpoint formula or combination produced it
};
// Upper bound for the constant K(q, beta, d). Throws RegionError in the
// failing regions.
SobolevConstant sobolev_constant(double q, double beta, double d);

struct SobolevCheck {
  double lhs = 0.0;
  double rhs = 0.0;  // K D^theta N^(1-theta)
  double ratio = 0.0;
  double K = 0.0;
  double gradient = 0.0, mass = 0.0;  // D and N
};
// Both sides of the weighted interpolation inequality; K defaults to sobolev_constant.
SobolevCheck check_sobolev(const TrialFunction& u, double q, double beta, double d,
                           std::optional<double> K = std::nullopt);

// Counterexample families.
SymmetricPotential dirac_potential(double n);                // n chi_(0, 1/n)
TrialFunction log_trial(double n);                           // min{1, log(n/s)/log n} on [0, n]
TrialFunction scaling_trial(const TrialFunction& v, double l);  // v(t / l)
SymmetricPotential weak_coupling_witness(double alpha);      // alpha chi_(0,1)

// Admissible (gamma, a) for the one-bound-state inequality in dimension d.
bool lowest_admissible(double gamma, double a, double d);

struct OneBoundState {
  double C = 0.0;
  double K = 0.0;       // Sobolev constant for (1+t)^{d-1}
  double K_g = 0.0;     // after the (c1, c2) transfer to g
  DualityParams params;
  std::string source;
};
OneBoundState one_bound_state_bound(double gamma, double a, double d, double c1 = 1.0, double c2 = 1.0);
// int V_+^p g^{a/(d-1)} dt; for d = 1 the weight is (1+t)^a.
double lowest_rhs(const Weight& g, const SymmetricPotential& V, double gamma, double a, double d);

// Weight-one operator with the background term (d-1)(d-3)/(4(1+t)^2), Dirichlet at 0.
HalflineOperator background_operator(const SymmetricPotential& V, double d);

struct Sandwich {
  double lower = 0.0, middle = 0.0, upper = 0.0;
  double beta = 1.0;  // c2 / c1
  bool ok = true;
};
Sandwich dirichlet_sandwich(const Weight& g, double c1, double c2, const SymmetricPotential& V, double gamma,
                            double d, const SolverOptions& opt = {});

// -d^2/dr^2 - 1/(4 r^2) - W with Dirichlet at 0, realized as the unitarily
// equivalent weight-r operator.
HalflineOperator hardy_operator(const SymmetricPotential& W);

}  // namespace arbor
