#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace arbor {

// Compactly supported H^1 function on [0, inf), zero past the last break.
class TrialFunction {
 public:
  static TrialFunction piecewise_linear(std::vector<double> nodes, std::vector<double> values);
  static TrialFunction analytic(std::function<double(double)> f, std::function<double(double)> df,
                                std::vector<double> breaks);

  double operator()(double t) const;
  double derivative(double t) const;  // inside a piece
  const std::vector<double>& breaks() const { return breaks_; }
  double support_end() const { return breaks_.back(); }
  bool is_piecewise_linear() const { return !f_; }

  TrialFunction scaled(double l) const;  // t -> v(t / l)

  // int |u|^r w dt and int |u'|^2 w dt
  double power_integral(double r, const std::function<double(double)>& w) const;
  double gradient_integral(const std::function<double(double)>& w) const;
  // sup |u(t)| (offset + t)^beta
  double weighted_sup(double beta, double offset = 1.0) const;

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;  // piecewise linear case
  std::shared_ptr<const std::function<double(double)>> f_, df_;
};

}  // namespace arbor
