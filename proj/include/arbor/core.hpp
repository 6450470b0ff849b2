#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace arbor {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A tail integral or a supremum that is infinite.
struct DivergentIntegral : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// g_0 is not comparable to (1+t)^{d-1} for the requested d.
struct NoGlobalDimension : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters fall in a region where the requested inequality is false.
struct RegionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Nonnegative extended real. Infinity is a flag, never a float sentinel.
class Extended {
 public:
  constexpr Extended() = default;
  static constexpr Extended finite(double v) { return Extended(v, false); }
  static constexpr Extended infinity() { return Extended(0.0, true); }

  constexpr bool is_infinite() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }

  double value() const {
    if (inf_) throw DivergentIntegral("value requested from an infinite quantity");
    return v_;
  }

  friend Extended operator+(Extended a, Extended b) {
    if (a.inf_ || b.inf_) return infinity();
    return finite(a.v_ + b.v_);
  }
  friend bool operator==(const Extended&, const Extended&) = default;

  std::string str() const { return inf_ ? std::string("inf") : std::to_string(v_); }

 private:
  constexpr Extended(double v, bool inf) : v_(v), inf_(inf) {}
  double v_ = 0.0;
  bool inf_ = false;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

// x^y with 0^0 = 1 made explicit.
inline double pow0(double x, double y) {
  if (y == 0.0) return 1.0;
  if (x == 0.0) return 0.0;
  return std::pow(x, y);
}

}  // namespace arbor
