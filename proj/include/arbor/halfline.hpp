#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arbor/potential.hpp"
#include "arbor/weight.hpp"

namespace arbor {

enum class Endpoint { Neumann, Dirichlet };

// -(g u')' - V g u on L^2((left, inf), g dt). With a background dimension d
// the weight must be 1 and the term (d-1)(d-3)/(4(1+t)^2) is added.
struct HalflineOperator {
  Weight weight = Weight::unit();
  SymmetricPotential potential = SymmetricPotential::zero();
  Endpoint endpoint = Endpoint::Neumann;
  double left = 0.0;
  std::optional<double> background_dimension;

  // sup of V minus the background term, clipped at 0
  double sup_effective_potential() const;
};

enum class Precision { Double, Extended };

struct SolverOptions {
  double eig_rtol = 1e-10;
  // absolute floor: critical backgrounds carry exponentially shallow bound
  // states whose shooting range would otherwise exceed any horizon
  double eig_atol = 1e-14;
  double ode_rtol = 1e-11;
  Precision precision = Precision::Double;
  std::size_t max_pieces = 50'000'000;
};

// (u, g u') at position t, with the number of zeros of u met in (left, t].
struct SolutionState {
  double t = 0.0;
  double u = 0.0;
  double flux = 0.0;
  std::int64_t zeros = 0;
  bool tail = false;  // past the support of V
};

SolutionState initial_state(const HalflineOperator& op);

// Solution of -(g u')' = (V + lambda) g u carried from `from` to `to`.
SolutionState propagate(const HalflineOperator& op, double lambda, const SolutionState& from, double to,
                        const SolverOptions& opt = {});

// Number of eigenvalues strictly below E. E > 0 is only supported for step
// weights with a periodic exponential tail (E below the essential spectrum).
std::int64_t count_below(const HalflineOperator& op, double E, const SolverOptions& opt = {});
// N(op + mu): eigenvalues below -mu.
std::int64_t count_negative(const HalflineOperator& op, double mu, const SolverOptions& opt = {});

struct Eigenvalue {
  double value;
  double width;  // bracket width
};

std::vector<Eigenvalue> eigenvalues_below(const HalflineOperator& op, double threshold,
                                          const SolverOptions& opt = {});

// sum over eigenvalues below -shift of (-shift - lambda)^gamma
double moment(const HalflineOperator& op, double gamma, double shift = 0.0, const SolverOptions& opt = {});
double moment_from(const std::vector<Eigenvalue>& ev, double gamma, double shift = 0.0);

}  // namespace arbor
