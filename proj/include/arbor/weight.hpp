#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "arbor/core.hpp"
#include "arbor/ground_state.hpp"
#include "arbor/tree.hpp"

namespace arbor {

// g(t) = m(t) (offset + t)^exponent on [left, inf), m piecewise constant:
// m = factors[i] on (breaks[i-1], breaks[i]] with breaks[-1] = left.
struct PowerWeight {
  double exponent = 0.0;
  double offset = 1.0;
  double left = 0.0;
  std::vector<double> breaks;
  std::vector<double> factors{1.0};

  static PowerWeight pure(double exponent, double left = 0.0) {
    PowerWeight w;
    w.exponent = exponent;
    w.left = left;
    return w;
  }
  double modulation(double t) const;
  double modulation_after(double t) const;
};

// Weight omega^2 g_0 of the ground-state-transformed homogeneous operator,
// restricted to [left, inf).
struct GsrWeight {
  std::shared_ptr<const GroundState> ground;
  double left = 0.0;
};

class Weight {
 public:
  enum class Kind { Step, Power, GroundState };

  Weight(StepWeight w) : w_(std::move(w)) {}
  Weight(PowerWeight w);
  Weight(GsrWeight w);

  static Weight unit(double left = 0.0) { return Weight(StepWeight::constant(left, 1.0)); }

  Kind kind() const { return static_cast<Kind>(w_.index()); }
  double left() const;
  double operator()(double t) const;
  double value_after(double t) const;
  // Location of the next jump of g (or of its smooth formula) strictly after t.
  double next_break(double t) const;
  // True when g is constant between consecutive breaks.
  bool piecewise_constant() const;
  bool transient() const;
  Extended tail_integral(double t) const;
  double scaled_tail_integral(double t) const;
  double integral(double a, double b) const;

  const StepWeight* step() const { return std::get_if<StepWeight>(&w_); }
  const PowerWeight* power() const { return std::get_if<PowerWeight>(&w_); }
  const GsrWeight* gsr() const { return std::get_if<GsrWeight>(&w_); }

 private:
  std::variant<StepWeight, PowerWeight, GsrWeight> w_;
};

}  // namespace arbor
