#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace arbor {

// Radial potential V(|x|) with compact support.
class SymmetricPotential {
 public:
  static SymmetricPotential zero();
  // V = values[i] on (breaks[i], breaks[i+1]], zero outside [breaks.front(), breaks.back()].
  static SymmetricPotential piecewise(std::vector<double> breaks, std::vector<double> values);
  // Continuous-ish profile on [lo, hi], zero elsewhere; kinks are extra breakpoints.
  static SymmetricPotential profile(std::function<double(double)> f, double lo, double hi,
                                    std::vector<double> kinks = {});

  double operator()(double t) const;
  bool piecewise_constant() const { return !fn_; }
  bool is_zero() const;
  double support_begin() const { return lo_; }
  double support_end() const { return hi_; }
  // Breakpoints (support ends and kinks) in increasing order.
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  double next_break(double t) const;
  double sup() const { return sup_; }
  double sup_positive() const { return sup_ > 0.0 ? sup_ : 0.0; }

  SymmetricPotential restricted(double from) const;  // V chi_(from, inf)
  SymmetricPotential scaled(double alpha) const;

 private:
  SymmetricPotential() = default;
  void finish();

  std::vector<double> breaks_;
  std::vector<double> values_;                          // piecewise case
  std::shared_ptr<const std::function<double(double)>> fn_;  // profile case
  double lo_ = 0.0, hi_ = 0.0, sup_ = 0.0;
};

}  // namespace arbor
