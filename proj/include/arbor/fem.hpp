#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arbor/halfline.hpp"
#include "arbor/tree.hpp"

namespace arbor {

// P1 finite elements for the quadratic forms int g|f'|^2 and int (V+E) g|f|^2.
struct FemOptions {
  double density = 64.0;       // nodes per unit length up to the end of supp V
  double tail_grading = 1.04;  // element growth factor beyond the support
  double max_element = 0.25;
  double truncation = 0.0;     // 0 picks one from the shift
  int max_doublings = 4;       // truncation doublings while the two truncations disagree
  std::vector<double> nodes;   // explicit mesh, overrides everything above
};

// Counts below E under both truncation conditions at T. `exterior` is the
// exact zero-energy Robin closure, available at E = 0 for transient weights.
struct OracleCount {
  std::int64_t dirichlet = 0;
  std::int64_t neumann = 0;
  std::optional<std::int64_t> exterior;
  double truncation = 0.0;
  std::size_t nodes = 0;
  bool agree = false;       // truncation sufficient
  std::int64_t value = 0;   // the certified candidate
};

std::vector<double> halfline_mesh(const HalflineOperator& op, double T, const FemOptions& opt);
OracleCount oracle_count(const HalflineOperator& op, double E, const FemOptions& opt = {});

struct OracleSpectrum {
  OracleCount count;
  std::vector<double> eigenvalues;  // Dirichlet truncation
};
OracleSpectrum oracle_spectrum(const HalflineOperator& op, double threshold, const FemOptions& opt = {},
                               double rtol = 1e-10);

// Refinement protocol: a count is certified once the truncations agree and
// the value is unchanged under one doubling of the density.
struct CertifiedCount {
  bool certified = false;
  std::int64_t value = 0;
  double density = 0.0;
  std::vector<OracleCount> levels;
};
CertifiedCount certified_count(const HalflineOperator& op, double E,
                               const std::vector<double>& densities = {64, 128, 256, 512, 1024},
                               FemOptions base = {});

// Direct discretization of the truncated tree graph, one mesh per edge with
// shared vertex unknowns. Neumann at the root.
struct TreeOracleOptions {
  double density = 64.0;
  std::size_t max_nodes = 3'000'000;
};

struct TreeMesh {
  std::vector<double> radii;          // radial levels, radii[0] = 0, last = T
  std::vector<std::int32_t> parent;   // per unknown, -1 for the root
  std::vector<std::int32_t> level;    // radial level per unknown
};

TreeMesh build_tree_mesh(const TreeDescriptor& tree, const SymmetricPotential& V, double T,
                         const TreeOracleOptions& opt = {});
// Radial nodes used by the tree mesh; the same nodes serve component meshes.
std::vector<double> tree_radial_nodes(const TreeDescriptor& tree, const SymmetricPotential& V, double T,
                                      double density);

OracleCount direct_tree_oracle(const TreeDescriptor& tree, const SymmetricPotential& V, double E, double T,
                               const TreeOracleOptions& opt = {});
std::vector<double> direct_tree_eigenvalues(const TreeDescriptor& tree, const SymmetricPotential& V,
                                            double threshold, double T, const TreeOracleOptions& opt = {},
                                            double rtol = 1e-11);

CertifiedCount certified_tree_count(const TreeDescriptor& tree, const SymmetricPotential& V, double E, double T,
                                    const std::vector<double>& densities = {64, 128, 256, 512, 1024});

}  // namespace arbor
