#pragma once

#include <cstdint>
#include <vector>

#include "arbor/halfline.hpp"
#include "arbor/tree.hpp"

namespace arbor {

// k = 0: weight g_0, Neumann at 0. k >= 1: weight g_k, Dirichlet at t_k,
// potential V restricted to (t_k, inf).
HalflineOperator component_operator(const TreeDescriptor& tree, const SymmetricPotential& V, std::size_t k);

// Components that can carry spectrum below -shift: t_k < T_V (plus k = 0).
std::size_t active_components(const TreeDescriptor& tree, const SymmetricPotential& V);

struct ComponentEigenvalues {
  std::size_t k;
  std::int64_t multiplicity;
  std::vector<Eigenvalue> eigenvalues;
};

std::vector<ComponentEigenvalues> tree_spectrum(const TreeDescriptor& tree, const SymmetricPotential& V,
                                                double threshold, const SolverOptions& opt = {},
                                                bool parallel = false);
std::int64_t tree_count_below(const TreeDescriptor& tree, const SymmetricPotential& V, double E,
                              const SolverOptions& opt = {});
std::int64_t tree_count(const TreeDescriptor& tree, const SymmetricPotential& V, double shift = 0.0,
                        const SolverOptions& opt = {});
double tree_moment(const TreeDescriptor& tree, const SymmetricPotential& V, double gamma, double shift = 0.0,
                   const SolverOptions& opt = {}, bool parallel = false);
double tree_moment_from(const std::vector<ComponentEigenvalues>& spec, double gamma, double shift = 0.0);

struct MajorizationResult {
  double lhs;
  double rhs;
  bool ok;
};
// tr(A_k - V_k)^gamma_- <= tr(A_0 - chi_(t_k, inf) V)^gamma_-
MajorizationResult majorization_check(const TreeDescriptor& tree, const SymmetricPotential& V, double gamma,
                                      std::size_t k, const SolverOptions& opt = {});

}  // namespace arbor
