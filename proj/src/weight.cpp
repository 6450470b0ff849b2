#include "arbor/weight.hpp"

#include <algorithm>
#include <cmath>

namespace arbor {

namespace {

// int_a^b (c + s)^{-e} ds, b may be infinite.
double inverse_power_integral(double c, double e, double a, double b) {
  if (std::isinf(b)) {
    if (e <= 1.0) return kInf;
    return std::pow(c + a, 1.0 - e) / (e - 1.0);
  }
  if (e == 1.0) return std::log((c + b) / (c + a));
  return (std::pow(c + b, 1.0 - e) - std::pow(c + a, 1.0 - e)) / (1.0 - e);
}

double power_integral(double c, double e, double a, double b) {
  if (e == -1.0) return std::log((c + b) / (c + a));
  return (std::pow(c + b, e + 1.0) - std::pow(c + a, e + 1.0)) / (e + 1.0);
}

}  // namespace

double PowerWeight::modulation(double t) const {
  auto it = std::lower_bound(breaks.begin(), breaks.end(), t);
  return factors[static_cast<std::size_t>(it - breaks.begin())];
}

double PowerWeight::modulation_after(double t) const {
  auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  return factors[static_cast<std::size_t>(it - breaks.begin())];
}

namespace {
PowerWeight validated(PowerWeight w) {
  if (w.factors.size() != w.breaks.size() + 1) throw InvalidArgument("power weight needs one more factor than breaks");
  for (double f : w.factors)
    if (!(f > 0.0)) throw InvalidArgument("power weight factors must be positive");
  double prev = w.left;
  for (double b : w.breaks) {
    if (!(b > prev)) throw InvalidArgument("power weight breaks must increase past the left endpoint");
    prev = b;
  }
  if (!(w.offset + w.left > 0.0)) throw InvalidArgument("power weight must be positive at the left endpoint");
  return w;
}
GsrWeight validated(GsrWeight w) {
  if (!w.ground) throw InvalidArgument("ground-state weight without a ground state");
  return w;
}
}  // namespace

Weight::Weight(PowerWeight w) : w_(validated(std::move(w))) {}
Weight::Weight(GsrWeight w) : w_(validated(std::move(w))) {}

double Weight::left() const {
  return std::visit(
      [](const auto& w) -> double {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, StepWeight>) return w.left();
        else return w.left;
      },
      w_);
}

double Weight::operator()(double t) const {
  if (auto s = step()) return (*s)(t);
  if (auto p = power()) return p->modulation(t) * std::pow(p->offset + t, p->exponent);
  return gsr()->ground->gsr_weight(t);
}

double Weight::value_after(double t) const {
  if (auto s = step()) return s->value_after(t);
  if (auto p = power()) return p->modulation_after(t) * std::pow(p->offset + t, p->exponent);
  return gsr()->ground->gsr_weight_after(t);
}

double Weight::next_break(double t) const {
  if (auto s = step()) return s->next_break(t);
  if (auto p = power()) {
    auto it = std::upper_bound(p->breaks.begin(), p->breaks.end(), t);
    return it == p->breaks.end() ? kInf : *it;
  }
  return std::floor(t) + 1.0;
}

bool Weight::piecewise_constant() const {
  if (step()) return true;
  if (auto p = power()) return p->exponent == 0.0;
  return false;
}

bool Weight::transient() const {
  if (auto s = step()) return s->transient();
  if (auto p = power()) return p->exponent > 1.0;
  return true;
}

Extended Weight::tail_integral(double t) const {
  if (auto s = step()) return s->tail_integral(t);
  if (auto p = power()) {
    if (p->exponent <= 1.0) return Extended::infinity();
    double sum = 0.0, a = t;
    auto it = std::upper_bound(p->breaks.begin(), p->breaks.end(), t);
    for (; it != p->breaks.end(); ++it) {
      sum += inverse_power_integral(p->offset, p->exponent, a, *it) / p->modulation(*it);
      a = *it;
    }
    sum += inverse_power_integral(p->offset, p->exponent, a, kInf) / p->factors.back();
    return Extended::finite(sum);
  }
  return Extended::finite(gsr()->ground->tail_integral(t));
}

double Weight::scaled_tail_integral(double t) const {
  if (auto s = step()) return s->scaled_tail_integral(t);
  return value_after(t) * tail_integral(t).value();
}

double Weight::integral(double a, double b) const {
  if (b <= a) return 0.0;
  if (auto s = step()) return s->integral(a, b);
  if (auto p = power()) {
    double sum = 0.0, lo = a;
    auto it = std::upper_bound(p->breaks.begin(), p->breaks.end(), a);
    for (; it != p->breaks.end() && *it < b; ++it) {
      sum += p->modulation(*it) * power_integral(p->offset, p->exponent, lo, *it);
      lo = *it;
    }
    sum += p->modulation_after(lo) * power_integral(p->offset, p->exponent, lo, b);
    return sum;
  }
  // smooth on each unit edge: composite Gauss-Legendre
  static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                              0.2369268850561891};
  double sum = 0.0, lo = a;
  while (lo < b) {
    const double hi = std::min(b, next_break(lo));
    const int n = 16;
    const double h = (hi - lo) / n;
    for (int k = 0; k < n; ++k) {
      const double c = lo + (k + 0.5) * h;
      for (int q = 0; q < 5; ++q) sum += 0.5 * h * w[q] * (*this)(c + 0.5 * h * x[q]);
    }
    lo = hi;
  }
  return sum;
}

}  // namespace arbor
