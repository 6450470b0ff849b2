#include "arbor/tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace arbor {

StepWeight::StepWeight(std::vector<double> breaks, std::vector<double> values, GeometricPattern tail)
    : breaks_(std::move(breaks)), values_(std::move(values)), tail_(tail) {
  if (breaks_.empty() || breaks_.size() != values_.size() + 1)
    throw InvalidArgument("step weight needs one more break than values");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i + 1] > breaks_[i])) throw InvalidArgument("step weight breaks must increase");
  for (double v : values_)
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("step weight values must be positive");
  if (!(tail_.first_length > 0.0) || !(tail_.length_ratio >= 1.0) || !(tail_.first_value > 0.0) ||
      !(tail_.value_ratio > 0.0))
    throw InvalidArgument("invalid geometric tail pattern");
}

StepWeight StepWeight::constant(double left, double value) {
  return StepWeight({left}, {}, GeometricPattern{1.0, 1.0, value, 1.0});
}

double StepWeight::tail_offset(std::size_t j) const {
  const double q = tail_.length_ratio;
  if (q == 1.0) return tail_.first_length * static_cast<double>(j);
  return tail_.first_length * (std::pow(q, static_cast<double>(j)) - 1.0) / (q - 1.0);
}

std::size_t StepWeight::segment_index(double t) const {
  if (t <= breaks_.front()) return 0;
  const std::size_t n = values_.size();
  if (t <= breaks_.back()) {
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
    return static_cast<std::size_t>(it - breaks_.begin()) - 1;
  }
  const double s = t - breaks_.back();
  const double L = tail_.first_length, q = tail_.length_ratio;
  double guess = q == 1.0 ? std::ceil(s / L) - 1.0 : std::ceil(std::log1p(s * (q - 1.0) / L) / std::log(q)) - 1.0;
  if (!(guess >= 0.0)) guess = 0.0;
  if (guess > 1e15) throw NumericFailure("segment index overflow");
  auto j = static_cast<std::size_t>(guess);
  while (tail_offset(j + 1) < s) ++j;
  while (j > 0 && tail_offset(j) >= s) --j;
  return n + j;
}

Segment StepWeight::segment(std::size_t i) const {
  const std::size_t n = values_.size();
  if (i < n) return {breaks_[i], breaks_[i + 1], values_[i]};
  const std::size_t j = i - n;
  const double x = breaks_.back();
  return {x + tail_offset(j), x + tail_offset(j + 1),
          tail_.first_value * std::pow(tail_.value_ratio, static_cast<double>(j))};
}

double StepWeight::operator()(double t) const { return segment(segment_index(t)).value; }

double StepWeight::value_after(double t) const {
  std::size_t i = segment_index(t);
  Segment s = segment(i);
  if (t >= s.b) s = segment(i + 1);
  return s.value;
}

double StepWeight::next_break(double t) const {
  std::size_t i = segment_index(t);
  Segment s = segment(i);
  if (t >= s.b) s = segment(++i);
  for (int guard = 0; guard < 1000000; ++guard) {
    if (i >= values_.size() && tail_.value_ratio == 1.0) return kInf;  // constant tail
    Segment nx = segment(i + 1);
    if (nx.value != s.value) return s.b;
    s = nx;
    ++i;
  }
  throw NumericFailure("next_break did not terminate");
}

bool StepWeight::transient() const { return tail_.length_ratio < tail_.value_ratio; }

Extended StepWeight::tail_integral(double t) const {
  if (!transient()) return Extended::infinity();
  const std::size_t n = values_.size();
  std::size_t i = segment_index(t);
  Segment s = segment(i);
  double sum = (s.b - std::max(t, s.a)) / s.value;
  if (t < breaks_.front()) sum += breaks_.front() - t;  // outside the domain; treated as unit weight
  for (std::size_t k = i + 1; k < n; ++k) sum += (breaks_[k + 1] - breaks_[k]) / values_[k];
  const std::size_t j0 = i + 1 > n ? i + 1 - n : 0;
  const double rho = tail_.length_ratio / tail_.value_ratio;
  sum += (tail_.first_length / tail_.first_value) * std::pow(rho, static_cast<double>(j0)) / (1.0 - rho);
  return Extended::finite(sum);
}

double StepWeight::scaled_tail_integral(double t) const {
  if (!transient()) throw DivergentIntegral("scaled tail integral of a recurrent weight");
  const std::size_t n = values_.size();
  std::size_t i = segment_index(t);
  Segment s = segment(i);
  if (t >= s.b) s = segment(++i);
  const double G = s.value;
  double sum = s.b - std::max(t, s.a);
  for (std::size_t k = i + 1; k < n; ++k) sum += (breaks_[k + 1] - breaks_[k]) * (G / values_[k]);
  const double q = tail_.length_ratio, r = tail_.value_ratio, L = tail_.first_length;
  if (i >= n) {
    const double j = static_cast<double>(i - n);
    sum += L * std::pow(q, j + 1.0) / r / (1.0 - q / r);
  } else {
    sum += (G / tail_.first_value) * L / (1.0 - q / r);
  }
  return sum;
}

double StepWeight::integral(double a, double b) const {
  if (b <= a) return 0.0;
  double sum = 0.0;
  std::size_t i = segment_index(a);
  for (;;) {
    Segment s = segment(i);
    const double lo = std::max(a, s.a), hi = std::min(b, s.b);
    if (hi > lo) sum += (hi - lo) * s.value;
    if (s.b >= b) break;
    ++i;
  }
  return sum;
}

TailRule TailRule::homogeneous(double tau, int b) { return {Kind::Homogeneous, tau, 1.0, b}; }
TailRule TailRule::geometric(double q, double tau, int b) { return {Kind::Geometric, tau, q, b}; }
TailRule TailRule::halfline() { return {Kind::Halfline, 1.0, 1.0, 1}; }

TreeDescriptor::TreeDescriptor(std::vector<std::pair<double, int>> prefix, TailRule tail)
    : prefix_(std::move(prefix)), tail_(tail) {
  double prev = 0.0;
  for (auto [r, b] : prefix_) {
    if (!(r > prev)) throw InvalidArgument("vertex radii must be strictly increasing and positive");
    if (b < 2) throw InvalidArgument("branching numbers must be at least 2");
    prev = r;
  }
  switch (tail_.kind) {
    case TailRule::Kind::Halfline:
      if (!prefix_.empty()) throw InvalidArgument("halfline tail requires an empty prefix");
      break;
    case TailRule::Kind::Geometric:
      if (!(tail_.length_ratio > 1.0)) throw InvalidArgument("geometric tail needs length ratio > 1");
      [[fallthrough]];
    case TailRule::Kind::Homogeneous:
      if (!(tail_.edge_length > 0.0)) throw InvalidArgument("tail edge length must be positive");
      if (tail_.branch < 2) throw InvalidArgument("tail branch must be at least 2");
      break;
  }
}

TreeDescriptor TreeDescriptor::homogeneous(double tau, int b) { return {{}, TailRule::homogeneous(tau, b)}; }
TreeDescriptor TreeDescriptor::geometric(double q, double tau, int b) {
  return {{}, TailRule::geometric(q, tau, b)};
}
TreeDescriptor TreeDescriptor::halfline() { return {{}, TailRule::halfline()}; }

TreeDescriptor build_tree(std::vector<std::pair<double, int>> prefix, TailRule tail) {
  return TreeDescriptor(std::move(prefix), tail);
}

double TreeDescriptor::radius(std::size_t k) const {
  if (k == 0) return 0.0;
  const std::size_t m = prefix_.size();
  if (k <= m) return prefix_[k - 1].first;
  if (is_halfline()) return kInf;
  const double base = m ? prefix_.back().first : 0.0;
  const double j = static_cast<double>(k - m);
  const double q = tail_.length_ratio;
  if (q == 1.0) return base + tail_.edge_length * j;
  return base + tail_.edge_length * (std::pow(q, j) - 1.0) / (q - 1.0);
}

int TreeDescriptor::branch(std::size_t k) const {
  if (k == 0) return 1;
  if (k <= prefix_.size()) return prefix_[k - 1].second;
  if (is_halfline()) throw InvalidArgument("the half-line has no vertices");
  return tail_.branch;
}

std::size_t TreeDescriptor::generations_below(double T) const {
  std::size_t k = 0;
  while (radius(k + 1) < T) ++k;
  return k;
}

StepWeight branching_function(const TreeDescriptor& tree, std::size_t k) {
  if (tree.is_halfline()) {
    if (k != 0) throw InvalidArgument("the half-line has a single component");
    return StepWeight::constant(0.0, 1.0);
  }
  const std::size_t m = tree.prefix().size();
  const TailRule& tail = tree.tail();
  if (k <= m) {
    std::vector<double> breaks{tree.radius(k)};
    std::vector<double> values;
    double P = 1.0;
    for (std::size_t j = k; j < m; ++j) {
      values.push_back(P);
      breaks.push_back(tree.radius(j + 1));
      P *= tree.branch(j + 1);
    }
    return StepWeight(std::move(breaks), std::move(values),
                      GeometricPattern{tail.edge_length, tail.length_ratio, P, double(tail.branch)});
  }
  const double first = tail.edge_length * std::pow(tail.length_ratio, double(k - m));
  return StepWeight({tree.radius(k)}, {}, GeometricPattern{first, tail.length_ratio, 1.0, double(tail.branch)});
}

Extended tail_integral(const StepWeight& g, double t) { return g.tail_integral(t); }

Extended reduced_height(const TreeDescriptor& tree) { return branching_function(tree, 0).tail_integral(0.0); }

std::pair<double, double> dimension_bounds(const StepWeight& g, double d) {
  if (!(d >= 1.0)) throw InvalidArgument("dimension must be at least 1");
  const double e = d - 1.0;
  double lo = kInf, hi = 0.0;
  for (std::size_t i = 0; i < g.explicit_segments(); ++i) {
    Segment s = g.segment(i);
    hi = std::max(hi, s.value / std::pow(1.0 + s.a, e));
    lo = std::min(lo, s.value / std::pow(1.0 + s.b, e));
  }
  const GeometricPattern& p = g.tail();
  const double x = g.breaks().back(), v = p.first_value, r = p.value_ratio, q = p.length_ratio, L = p.first_length;
  if (q == 1.0) {
    if (r > 1.0) throw NoGlobalDimension("branching function grows exponentially");
    if (r < 1.0 || e > 0.0) throw NoGlobalDimension("infimum of the dimension ratio vanishes");
    return {std::min(lo, v), std::max(hi, v)};
  }
  const double rho = std::log(r) - e * std::log(q);
  if (std::abs(rho) > 1e-12 * std::max(1.0, std::abs(std::log(r)))) {
    if (rho > 0.0) throw NoGlobalDimension("supremum of the dimension ratio is unbounded");
    throw NoGlobalDimension("infimum of the dimension ratio vanishes");
  }
  const double B = L / (q - 1.0);
  hi = std::max({hi, v / std::pow(1.0 + x, e), v / std::pow(B, e)});
  lo = std::min({lo, v / std::pow(1.0 + x + L, e), v / std::pow(B * q, e)});
  return {lo, hi};
}

std::pair<double, double> dimension_bounds(const TreeDescriptor& tree, double d) {
  return dimension_bounds(branching_function(tree, 0), d);
}

std::int64_t multiplicity(const TreeDescriptor& tree, std::size_t k) {
  if (k == 0) throw InvalidArgument("multiplicity is defined for k >= 1");
  std::int64_t m = 1;
  for (std::size_t i = 1; i < k; ++i)
    if (__builtin_mul_overflow(m, std::int64_t(tree.branch(i)), &m)) throw NumericFailure("multiplicity overflow");
  if (__builtin_mul_overflow(m, std::int64_t(tree.branch(k) - 1), &m)) throw NumericFailure("multiplicity overflow");
  return m;
}

double edge_length_below(const TreeDescriptor& tree, double T) {
  double total = 0.0, edges = 1.0;
  for (std::size_t j = 0; tree.radius(j) < T; ++j) {
    if (j > 0) edges *= tree.branch(j);
    total += edges * (std::min(T, tree.radius(j + 1)) - tree.radius(j));
  }
  return total;
}

}  // namespace arbor
