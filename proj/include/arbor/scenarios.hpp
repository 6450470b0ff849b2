#pragma once

#include <cstdint>
#include <vector>

#include "arbor/halfline.hpp"
#include "arbor/tree.hpp"

namespace arbor {

struct WeylPoint {
  double alpha = 0.0;
  double moment = 0.0;         // tr(-Delta - alpha V)_-^gamma
  double semiclassical = 0.0;  // L^cl alpha^{gamma+1/2} int_Gamma V^{gamma+1/2} dx
  double ratio = 0.0;
  bool degenerate = false;     // alpha = 0, ratio reported as 0
};

struct WeylSweep {
  std::vector<WeylPoint> points;
  bool monotone = false;  // |ratio - 1| non-increasing along the grid
  double last_ratio = 0.0;
};

// Points are independent; with parallel set they run concurrently but are
// returned in grid order.
WeylSweep weyl_sweep(const TreeDescriptor& tree, const SymmetricPotential& V, double gamma,
                     const std::vector<double>& alphas, bool parallel = false);

struct WeakPoint {
  double alpha = 0.0;
  double lambda1 = 0.0;
  std::int64_t count = 0;  // negative eigenvalues, all components with multiplicity
  bool used = false;       // exactly one bound state
};

struct WeakFit {
  std::vector<WeakPoint> points;
  double slope = 0.0;  // least squares of log|lambda_1| against log alpha
  double intercept = 0.0;
  double expected = 0.0;  // 2/(2-d)
  std::size_t used = 0;
};

WeakFit weak_coupling_fit(const TreeDescriptor& tree, const SymmetricPotential& V, double d,
                          const std::vector<double>& alphas, bool parallel = false);

// Ordinary least squares slope and intercept.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace arbor
