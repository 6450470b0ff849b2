#include "arbor/scenarios.hpp"

#include <cmath>

#include "arbor/bounds.hpp"
#include "arbor/decomposition.hpp"
#include "arbor/parallel.hpp"

namespace arbor {

WeylSweep weyl_sweep(const TreeDescriptor& tree, const SymmetricPotential& V, double gamma,
                     const std::vector<double>& alphas, bool parallel) {
  const Weight g0(branching_function(tree, 0));
  const double kernel = weighted_rhs(g0, V, gamma + 0.5, [](double) { return 1.0; }, Mode::Tree);
  const double L = classical_lt_constant(gamma);

  WeylSweep out;
  out.points.resize(alphas.size());
  parallel_for(alphas.size(), parallel, [&](std::size_t i) {
    WeylPoint& p = out.points[i];
    p.alpha = alphas[i];
    if (p.alpha <= 0.0) {
      p.degenerate = true;
      return;
    }
    p.moment = tree_moment(tree, V.scaled(p.alpha), gamma);
    p.semiclassical = L * std::pow(p.alpha, gamma + 0.5) * kernel;
    p.ratio = p.semiclassical > 0.0 ? p.moment / p.semiclassical : 0.0;
  });

  out.monotone = true;
  double prev = INFINITY;
  for (const auto& p : out.points) {
    if (p.degenerate) continue;
    const double dev = std::abs(p.ratio - 1.0);
    if (dev > prev) out.monotone = false;
    prev = dev;
    out.last_ratio = p.ratio;
  }
  return out;
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (x.size() < 2 || den == 0.0) return {NAN, NAN};
  const double slope = (n * sxy - sx * sy) / den;
  return {slope, (sy - slope * sx) / n};
}

WeakFit weak_coupling_fit(const TreeDescriptor& tree, const SymmetricPotential& V, double d,
                          const std::vector<double>& alphas, bool parallel) {
  WeakFit out;
  out.expected = 2.0 / (2.0 - d);
  out.points.resize(alphas.size());
  SolverOptions opt;
  opt.eig_rtol = 1e-13;
  parallel_for(alphas.size(), parallel, [&](std::size_t i) {
    WeakPoint& p = out.points[i];
    p.alpha = alphas[i];
    const auto spec = tree_spectrum(tree, V.scaled(p.alpha), 0.0, opt);
    double lowest = 0.0;
    for (const auto& c : spec) {
      p.count += c.multiplicity * std::int64_t(c.eigenvalues.size());
      for (const auto& e : c.eigenvalues) lowest = std::min(lowest, e.value);
    }
    p.lambda1 = lowest;
    p.used = p.count == 1 && lowest < 0.0;
  });
  std::vector<double> x, y;
  for (const auto& p : out.points)
    if (p.used) {
      x.push_back(std::log(p.alpha));
      y.push_back(std::log(-p.lambda1));
    }
  out.used = x.size();
  std::tie(out.slope, out.intercept) = fit_line(x, y);
  return out;
}

}  // namespace arbor
