#pragma once

#include <functional>
#include <vector>

namespace arbor {

// Adaptive Gauss-Kronrod (7/15). Nodes are interior, so one-sided values at
// the ends of [a, b] never matter.
double integrate(const std::function<double(double)>& f, double a, double b, double rtol = 1e-12,
                 double atol = 1e-300);
// Sum over consecutive pieces of a sorted break list.
double integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& breaks,
                        double rtol = 1e-12, double atol = 1e-300);

}  // namespace arbor
