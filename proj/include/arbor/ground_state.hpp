#pragma once

#include <cstddef>
#include <utility>

namespace arbor {

// Bottom of the essential spectrum of the Neumann Laplacian on the
// homogeneous tree with unit edges and branching b.
double lambda_b(double b);

double digamma(double x);

// Generalized ground state omega of -(g_0 w')' = lambda_b g_0 w, w'(0) = 0,
// on the homogeneous tree with unit edges. On edge j (t in (j, j+1]) with
// s = t - j: omega = alpha_j cos(mu s) + beta_j cos(mu (1 - s)).
class GroundState {
 public:
  explicit GroundState(int b);

  int branch() const { return b_; }
  double mu() const { return mu_; }
  double lambda() const { return mu_ * mu_; }

  std::pair<double, double> coefficients(std::size_t j) const;
  std::pair<double, double> recursion_coefficients(std::size_t j) const;

  double omega(double t) const;
  // One-sided derivative; right selects the limit from the right at integers.
  double omega_derivative(double t, bool right) const;
  double omega_second_derivative(double t) const;

  // h_j(s) = omega * sqrt(g_0) on edge j, evaluated at s in [0, 1].
  double scaled(std::size_t j, double s) const;
  // omega^2 g_0, left-continuous (jumps by the factor b at every integer).
  double gsr_weight(double t) const;
  double gsr_weight_after(double t) const;
  // int_a^b ds / (omega^2 g_0)
  double inverse_integral(double a, double b) const;
  double tail_integral(double t) const;
  // Asymptotic periodic factor: h_j(s) ~ j * phi(s).
  double periodic_factor(double s) const;

 private:
  static std::size_t edge(double t);
  double sum_edges_from(std::size_t J) const;  // sum over full edges i >= J

  int b_;
  double mu_;
  double rb_;  // b^{-1/2}
};

}  // namespace arbor
