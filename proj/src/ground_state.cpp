#include "arbor/ground_state.hpp"

#include <cmath>

#include "arbor/core.hpp"

namespace arbor {

double lambda_b(double b) {
  if (!(b > 1.0)) throw InvalidArgument("lambda_b needs b > 1");
  const double R = 0.5 * (std::sqrt(b) + 1.0 / std::sqrt(b));
  const double m = std::acos(1.0 / R);
  return m * m;
}

double digamma(double x) {
  if (!(x > 0.0)) throw InvalidArgument("digamma implemented for x > 0");
  double acc = 0.0;
  while (x < 12.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double x2 = 1.0 / (x * x);
  // asymptotic series with Bernoulli numbers
  const double series =
      x2 * (1.0 / 12 - x2 * (1.0 / 120 - x2 * (1.0 / 252 - x2 * (1.0 / 240 - x2 * (1.0 / 132)))));
  return acc + std::log(x) - 0.5 / x - series;
}

GroundState::GroundState(int b) : b_(b), mu_(std::sqrt(lambda_b(b))), rb_(1.0 / std::sqrt(double(b))) {}

std::size_t GroundState::edge(double t) {
  if (t <= 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(t) - 1.0);
}

std::pair<double, double> GroundState::coefficients(std::size_t j) const {
  const double jj = double(j);
  const double scale = std::pow(rb_, jj);
  return {scale * (jj + 1.0), -scale * jj * rb_};
}

std::pair<double, double> GroundState::recursion_coefficients(std::size_t j) const {
  double a = 1.0, c = 0.0;
  const double sb = std::sqrt(double(b_));
  for (std::size_t i = 0; i < j; ++i) {
    const double na = rb_ * (2.0 * a + sb * c);
    const double nc = rb_ * (-rb_ * a);
    a = na;
    c = nc;
  }
  return {a, c};
}

double GroundState::scaled(std::size_t j, double s) const {
  const double jj = double(j);
  return (jj + 1.0) * std::cos(mu_ * s) - jj * rb_ * std::cos(mu_ * (1.0 - s));
}

double GroundState::omega(double t) const {
  const std::size_t j = edge(t);
  auto [a, c] = coefficients(j);
  const double s = t - double(j);
  return a * std::cos(mu_ * s) + c * std::cos(mu_ * (1.0 - s));
}

double GroundState::omega_derivative(double t, bool right) const {
  std::size_t j = edge(t);
  if (right && t >= double(j + 1)) ++j;
  if (right && t <= 0.0) j = 0;
  auto [a, c] = coefficients(j);
  const double s = t - double(j);
  return -a * mu_ * std::sin(mu_ * s) + c * mu_ * std::sin(mu_ * (1.0 - s));
}

double GroundState::omega_second_derivative(double t) const { return -lambda() * omega(t); }

double GroundState::gsr_weight(double t) const {
  const std::size_t j = edge(t);
  const double h = scaled(j, t - double(j));
  return h * h;
}

double GroundState::gsr_weight_after(double t) const {
  std::size_t j = edge(t);
  if (t > 0.0 && t >= double(j + 1)) ++j;
  const double h = scaled(j, std::max(0.0, t - double(j)));
  return h * h;
}

double GroundState::inverse_integral(double a, double b) const {
  if (b <= a) return 0.0;
  double sum = 0.0;
  double t = std::max(a, 0.0);
  while (t < b) {
    std::size_t j = edge(t);
    if (t >= double(j + 1)) ++j;
    const double e = std::min(b, double(j + 1));
    const double s0 = t - double(j), s1 = e - double(j);
    sum += std::sin(mu_ * (s1 - s0)) / (mu_ * scaled(j, s0) * scaled(j, s1));
    t = e;
  }
  return sum;
}

double GroundState::sum_edges_from(std::size_t J) const {
  // Full-edge integral is (sin mu / mu) / ((a0 + a1 i)(c0 + c1 i)).
  const double b = double(b_);
  const double a1 = (b - 1.0) / (b + 1.0);
  const double c1 = (b - 1.0) * rb_ / (b + 1.0);
  const double x = 1.0 / a1;                 // a0 / a1
  const double y = std::cos(mu_) / c1;       // c0 / c1
  const double J0 = double(J);
  return std::sin(mu_) / mu_ / (a1 * c1) * (digamma(J0 + y) - digamma(J0 + x)) / (y - x);
}

double GroundState::tail_integral(double t) const {
  t = std::max(t, 0.0);
  std::size_t j = edge(t);
  if (t >= double(j + 1)) ++j;
  return inverse_integral(t, double(j + 1)) + sum_edges_from(j + 1);
}

double GroundState::periodic_factor(double s) const {
  return std::cos(mu_ * s) - rb_ * std::cos(mu_ * (1.0 - s));
}

}  // namespace arbor
