#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "arbor/core.hpp"

namespace arbor {

// Infinite continuation of a step function beyond its last explicit break:
// segment j has length first_length * length_ratio^j and value
// first_value * value_ratio^j.
struct GeometricPattern {
  double first_length = 1.0;
  double length_ratio = 1.0;
  double first_value = 1.0;
  double value_ratio = 1.0;
};

struct Segment {
  double a;
  double b;
  double value;  // on (a, b]
};

// Positive piecewise-constant function on [left, inf). Values are attached to
// half-open segments (a, b].
class StepWeight {
 public:
  StepWeight(std::vector<double> breaks, std::vector<double> values, GeometricPattern tail);

  static StepWeight constant(double left, double value);

  double left() const { return breaks_.front(); }
  std::size_t explicit_segments() const { return values_.size(); }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  const GeometricPattern& tail() const { return tail_; }

  // Index of the segment with t in (a, b]; t <= left maps to 0.
  std::size_t segment_index(double t) const;
  Segment segment(std::size_t i) const;

  double operator()(double t) const;     // g(t), left-continuous
  double value_after(double t) const;    // g(t+)
  double next_break(double t) const;     // smallest jump location > t, or +inf

  bool transient() const;
  Extended tail_integral(double t) const;
  // g(t+) * int_t^inf ds/g; finite only for transient weights.
  double scaled_tail_integral(double t) const;
  double integral(double a, double b) const;  // int_a^b g

  // Tail pattern has unit length ratio, so the weight is periodic up to scaling.
  bool periodic_tail() const { return tail_.length_ratio == 1.0; }

 private:
  double tail_offset(std::size_t j) const;  // distance from last break to start of tail segment j

  std::vector<double> breaks_;
  std::vector<double> values_;
  GeometricPattern tail_;
};

struct TailRule {
  enum class Kind { Homogeneous, Geometric, Halfline };
  Kind kind = Kind::Halfline;
  double edge_length = 1.0;
  double length_ratio = 1.0;
  int branch = 1;

  static TailRule homogeneous(double tau, int b);
  static TailRule geometric(double q, double tau, int b);
  static TailRule halfline();
};

class TreeDescriptor {
 public:
  TreeDescriptor(std::vector<std::pair<double, int>> prefix, TailRule tail);

  static TreeDescriptor homogeneous(double tau, int b);
  static TreeDescriptor geometric(double q, double tau, int b);
  static TreeDescriptor halfline();

  bool is_halfline() const { return tail_.kind == TailRule::Kind::Halfline; }
  const std::vector<std::pair<double, int>>& prefix() const { return prefix_; }
  const TailRule& tail() const { return tail_; }

  double radius(std::size_t k) const;  // t_k, t_0 = 0
  int branch(std::size_t k) const;     // b_k, b_0 = 1
  // Number of vertex generations k >= 1 with t_k < T.
  std::size_t generations_below(double T) const;

 private:
  std::vector<std::pair<double, int>> prefix_;
  TailRule tail_;
};

TreeDescriptor build_tree(std::vector<std::pair<double, int>> prefix, TailRule tail);
StepWeight branching_function(const TreeDescriptor& tree, std::size_t k);
Extended reduced_height(const TreeDescriptor& tree);
Extended tail_integral(const StepWeight& g, double t);
// Exact (inf, sup) of g_0(t)/(1+t)^{d-1} over t >= 0.
std::pair<double, double> dimension_bounds(const TreeDescriptor& tree, double d);
std::pair<double, double> dimension_bounds(const StepWeight& g, double d);
std::int64_t multiplicity(const TreeDescriptor& tree, std::size_t k);
// Total edge length inside the ball |x| <= T, by enumerating generations.
double edge_length_below(const TreeDescriptor& tree, double T);

}  // namespace arbor
