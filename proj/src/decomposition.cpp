#include "arbor/decomposition.hpp"

#include <cmath>

namespace arbor {

HalflineOperator component_operator(const TreeDescriptor& tree, const SymmetricPotential& V, std::size_t k) {
  HalflineOperator op;
  op.weight = Weight(branching_function(tree, k));
  if (k == 0) {
    op.potential = V;
    op.endpoint = Endpoint::Neumann;
    op.left = 0.0;
  } else {
    op.left = tree.radius(k);
    op.potential = V.restricted(op.left);
    op.endpoint = Endpoint::Dirichlet;
  }
  return op;
}

std::size_t active_components(const TreeDescriptor& tree, const SymmetricPotential& V) {
  if (V.is_zero() || V.sup_positive() == 0.0) return 1;
  const double TV = V.support_end();
  std::size_t n = 1;
  while (!tree.is_halfline() && tree.radius(n) < TV) ++n;
  return n;
}

std::vector<ComponentEigenvalues> tree_spectrum(const TreeDescriptor& tree, const SymmetricPotential& V,
                                                double threshold, const SolverOptions& opt, bool parallel) {
  const std::size_t n = active_components(tree, V);
  std::vector<ComponentEigenvalues> out(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t k = 0; k < n; ++k) {
    try {
      out[k].k = k;
      out[k].multiplicity = k == 0 ? 1 : multiplicity(tree, k);
      out[k].eigenvalues = eigenvalues_below(component_operator(tree, V, k), threshold, opt);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::int64_t tree_count_below(const TreeDescriptor& tree, const SymmetricPotential& V, double E,
                              const SolverOptions& opt) {
  std::int64_t total = 0;
  const std::size_t n = active_components(tree, V);
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t c = count_below(component_operator(tree, V, k), E, opt);
    if (c == 0) continue;
    const std::int64_t m = k == 0 ? 1 : multiplicity(tree, k);
    std::int64_t add;
    if (__builtin_mul_overflow(c, m, &add) || __builtin_add_overflow(total, add, &total))
      throw NumericFailure("tree count overflow");
  }
  return total;
}

std::int64_t tree_count(const TreeDescriptor& tree, const SymmetricPotential& V, double shift,
                        const SolverOptions& opt) {
  if (!(shift >= 0.0)) throw InvalidArgument("shift must be nonnegative");
  return tree_count_below(tree, V, -shift, opt);
}

double tree_moment_from(const std::vector<ComponentEigenvalues>& spec, double gamma, double shift) {
  double sum = 0.0;
  for (const auto& c : spec) sum += double(c.multiplicity) * moment_from(c.eigenvalues, gamma, shift);
  return sum;
}

double tree_moment(const TreeDescriptor& tree, const SymmetricPotential& V, double gamma, double shift,
                   const SolverOptions& opt, bool parallel) {
  if (!(gamma >= 0.0)) throw InvalidArgument("moment order must be nonnegative");
  if (gamma == 0.0) return double(tree_count(tree, V, shift, opt));
  return tree_moment_from(tree_spectrum(tree, V, -shift, opt, parallel), gamma, shift);
}

MajorizationResult majorization_check(const TreeDescriptor& tree, const SymmetricPotential& V, double gamma,
                                      std::size_t k, const SolverOptions& opt) {
  if (k == 0) throw InvalidArgument("majorization compares components k >= 1");
  const double tk = tree.radius(k);
  const double lhs = moment(component_operator(tree, V, k), gamma, 0.0, opt);
  HalflineOperator a0 = component_operator(tree, V.restricted(tk), 0);
  const double rhs = moment(a0, gamma, 0.0, opt);
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-9) + 1e-12};
}

}  // namespace arbor
