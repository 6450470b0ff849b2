#include "arbor/trial.hpp"

#include <algorithm>
#include <cmath>

#include "arbor/core.hpp"
#include "arbor/quadrature.hpp"

namespace arbor {

TrialFunction TrialFunction::piecewise_linear(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.size() != values.size() || nodes.size() < 2) throw InvalidArgument("trial function needs >= 2 nodes");
  if (nodes.front() != 0.0) throw InvalidArgument("trial function nodes start at 0");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i + 1] > nodes[i])) throw InvalidArgument("trial function nodes must increase");
  if (values.back() != 0.0) throw InvalidArgument("trial function must vanish at its last node");
  TrialFunction u;
  u.breaks_ = std::move(nodes);
  u.values_ = std::move(values);
  return u;
}

TrialFunction TrialFunction::analytic(std::function<double(double)> f, std::function<double(double)> df,
                                      std::vector<double> breaks) {
  if (breaks.size() < 2 || breaks.front() != 0.0) throw InvalidArgument("analytic trial needs breaks from 0");
  TrialFunction u;
  u.breaks_ = std::move(breaks);
  u.f_ = std::make_shared<const std::function<double(double)>>(std::move(f));
  u.df_ = std::make_shared<const std::function<double(double)>>(std::move(df));
  return u;
}

double TrialFunction::operator()(double t) const {
  if (t < 0.0 || t >= support_end()) return 0.0;
  if (f_) return (*f_)(t);
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  const double s = (t - breaks_[i]) / (breaks_[i + 1] - breaks_[i]);
  return values_[i] + s * (values_[i + 1] - values_[i]);
}

double TrialFunction::derivative(double t) const {
  if (t < 0.0 || t >= support_end()) return 0.0;
  if (df_) return (*df_)(t);
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return (values_[i + 1] - values_[i]) / (breaks_[i + 1] - breaks_[i]);
}

TrialFunction TrialFunction::scaled(double l) const {
  if (!(l > 0.0)) throw InvalidArgument("scale must be positive");
  std::vector<double> b(breaks_);
  for (double& x : b) x *= l;
  if (!f_) return piecewise_linear(std::move(b), values_);
  auto f = f_, df = df_;
  return analytic([f, l](double t) { return (*f)(t / l); }, [df, l](double t) { return (*df)(t / l) / l; },
                  std::move(b));
}

double TrialFunction::power_integral(double r, const std::function<double(double)>& w) const {
  return integrate_pieces([&](double t) { return std::pow(std::abs((*this)(t)), r) * w(t); }, breaks_, 1e-13);
}

double TrialFunction::gradient_integral(const std::function<double(double)>& w) const {
  return integrate_pieces(
      [&](double t) {
        const double d = derivative(t);
        return d * d * w(t);
      },
      breaks_, 1e-13);
}

double TrialFunction::weighted_sup(double beta, double offset) const {
  auto F = [&](double t) { return std::abs((*this)(t)) * pow0(offset + t, beta); };
  double best = 0.0;
  if (!f_) {
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
      const double a = breaks_[i], b = breaks_[i + 1];
      const double ua = values_[i], ub = values_[i + 1];
      best = std::max(best, std::abs(ua) * pow0(offset + a, beta));
      // u = ua + k (t - a): interior critical point of |u| (offset+t)^beta
      const double k = (ub - ua) / (b - a);
      if (k != 0.0 && beta != 0.0) {
        const double t = (beta * (k * a - ua) - k * offset) / (k * (1.0 + beta));
        if (t > a && t < b) best = std::max(best, F(t));
      }
    }
    return best;
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    const double a = breaks_[i], b = breaks_[i + 1];
    const int n = 2000;
    double arg = a, val = -1.0;
    for (int k = 0; k <= n; ++k) {
      const double t = k == n ? std::nextafter(b, a) : a + (b - a) * k / n;
      const double v = F(t);
      if (v > val) {
        val = v;
        arg = t;
      }
    }
    // golden section around the best sample
    double lo = std::max(a, arg - (b - a) / n), hi = std::min(std::nextafter(b, a), arg + (b - a) / n);
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
      const double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
      if (F(x1) >= F(x2)) hi = x2;
      else lo = x1;
    }
    best = std::max({best, val, F(0.5 * (lo + hi))});
  }
  return best;
}

}  // namespace arbor
