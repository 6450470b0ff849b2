#include "arbor/potential.hpp"

#include <algorithm>
#include <cmath>

#include "arbor/core.hpp"

namespace arbor {

SymmetricPotential SymmetricPotential::zero() {
  SymmetricPotential v;
  v.breaks_ = {0.0, 0.0};
  v.values_ = {0.0};
  return v;
}

SymmetricPotential SymmetricPotential::piecewise(std::vector<double> breaks, std::vector<double> values) {
  if (breaks.size() != values.size() + 1 || values.empty())
    throw InvalidArgument("piecewise potential needs one more breakpoint than values");
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i + 1] > breaks[i])) throw InvalidArgument("potential breakpoints must increase");
  if (breaks.front() < 0.0) throw InvalidArgument("potential breakpoints must be nonnegative");
  for (double x : values)
    if (!std::isfinite(x)) throw InvalidArgument("potential values must be finite");
  SymmetricPotential v;
  v.breaks_ = std::move(breaks);
  v.values_ = std::move(values);
  v.finish();
  return v;
}

SymmetricPotential SymmetricPotential::profile(std::function<double(double)> f, double lo, double hi,
                                               std::vector<double> kinks) {
  if (!(hi > lo) || lo < 0.0) throw InvalidArgument("profile support must be a nonempty interval in [0, inf)");
  SymmetricPotential v;
  v.fn_ = std::make_shared<const std::function<double(double)>>(std::move(f));
  v.breaks_ = {lo, hi};
  for (double k : kinks)
    if (k > lo && k < hi) v.breaks_.push_back(k);
  std::sort(v.breaks_.begin(), v.breaks_.end());
  v.breaks_.erase(std::unique(v.breaks_.begin(), v.breaks_.end()), v.breaks_.end());
  v.finish();
  return v;
}

void SymmetricPotential::finish() {
  lo_ = breaks_.front();
  hi_ = breaks_.back();
  if (!fn_) {
    sup_ = *std::max_element(values_.begin(), values_.end());
    if (sup_ < 0.0) sup_ = 0.0;  // V vanishes outside the support
    return;
  }
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    const int n = 400;
    for (int k = 0; k <= n; ++k) {
      const double t = breaks_[i] + (breaks_[i + 1] - breaks_[i]) * k / n;
      const double x = (*fn_)(t);
      if (!std::isfinite(x)) throw InvalidArgument("potential profile is not finite on its support");
      m = std::max(m, x);
    }
  }
  sup_ = m;
}

bool SymmetricPotential::is_zero() const {
  if (fn_) return false;
  return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

double SymmetricPotential::operator()(double t) const {
  if (t <= lo_ || t > hi_) return 0.0;
  if (fn_) return (*fn_)(t);
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
  return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

double SymmetricPotential::next_break(double t) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  return it == breaks_.end() ? kInf : *it;
}

SymmetricPotential SymmetricPotential::restricted(double from) const {
  if (from <= lo_) return *this;
  if (from >= hi_) return zero();
  if (!fn_) {
    std::vector<double> b{from}, v;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
      if (breaks_[i + 1] <= from) continue;
      v.push_back(values_[i]);
      b.push_back(breaks_[i + 1]);
    }
    return piecewise(std::move(b), std::move(v));
  }
  std::vector<double> kinks(breaks_.begin(), breaks_.end());
  return profile(*fn_, from, hi_, std::move(kinks));
}

SymmetricPotential SymmetricPotential::scaled(double alpha) const {
  if (!fn_) {
    std::vector<double> v = values_;
    for (double& x : v) x *= alpha;
    SymmetricPotential r;
    r.breaks_ = breaks_;
    r.values_ = std::move(v);
    r.finish();
    return r;
  }
  auto f = fn_;
  return profile([f, alpha](double t) { return alpha * (*f)(t); }, lo_, hi_, breaks_);
}

}  // namespace arbor
