#include "arbor/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "arbor/decomposition.hpp"
#include "arbor/parallel.hpp"

namespace arbor {

namespace {

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
int pick(std::mt19937_64& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

SymmetricPotential random_piecewise(std::mt19937_64& rng, int max_pieces, double lo, double hi, double depth_lo,
                                    double depth_hi) {
  const int n = pick(rng, 1, max_pieces);
  std::vector<double> cuts;
  for (int i = 0; i <= n; ++i) cuts.push_back(uniform(rng, lo, hi));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.size() < 2) cuts = {lo, hi};
  // depths on a log scale
  std::vector<double> v;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    v.push_back(std::exp(uniform(rng, std::log(depth_lo), std::log(depth_hi))));
  return SymmetricPotential::piecewise(cuts, v);
}

}  // namespace

SymmetricPotential random_potential(std::mt19937_64& rng, const CorpusSpec& spec) {
  const double a = uniform(rng, 0.0, 0.5 * spec.support_hi) * (pick(rng, 0, 2) == 0 ? 0.0 : 1.0);
  const double b = uniform(rng, a + 0.2, spec.support_hi);
  return random_piecewise(rng, spec.max_pieces, a, b, spec.depth_lo, spec.depth_hi);
}

TreeInstance random_tree_instance(std::mt19937_64& rng) {
  std::vector<std::pair<double, int>> prefix;
  double t = 0.0;
  for (int k = 0; k < 3; ++k) {
    t += uniform(rng, 0.4, 1.6);
    prefix.emplace_back(t, pick(rng, 2, 3));
  }
  const double tail_len = 6.0;
  TreeDescriptor tree(prefix, TailRule::homogeneous(tail_len, pick(rng, 2, 3)));
  const double t3 = prefix.back().first;
  // support ends before t3 + 1; the truncation sits well before the fourth vertex
  const double hi = uniform(rng, 0.3, t3 + 1.0);
  const double lo = pick(rng, 0, 2) == 0 ? uniform(rng, 0.0, 0.5 * hi) : 0.0;
  SymmetricPotential V = random_piecewise(rng, 6, lo, hi, 0.1, 10.0);
  TreeInstance inst{tree, V, std::exp(uniform(rng, std::log(0.05), std::log(1.0))), 0.0};
  inst.truncation = std::max(t3, V.support_end()) + 4.5 + uniform(rng, 0.0, 1.0);
  if (inst.truncation >= t3 + tail_len) inst.truncation = t3 + tail_len - 0.25;
  return inst;
}

HalflineInstance random_halfline_instance(std::mt19937_64& rng, const CorpusSpec& spec) {
  const int n = pick(rng, 1, 6);
  std::vector<double> breaks{0.0}, values;
  for (int i = 0; i < n; ++i) {
    breaks.push_back(breaks.back() + uniform(rng, 0.3, 2.0));
    values.push_back(std::exp(uniform(rng, std::log(0.5), std::log(4.0))));
  }
  GeometricPattern tail;
  tail.first_value = values.back() * (pick(rng, 0, 1) ? 1.0 : 2.0);
  switch (pick(rng, 0, 2)) {
    case 0: break;  // constant tail, recurrent
    case 1:
      tail.first_length = uniform(rng, 0.5, 1.5);
      tail.value_ratio = pick(rng, 2, 3);
      break;
    default:  // g ~ (1+t)^2
      tail.first_length = uniform(rng, 0.5, 1.5);
      tail.length_ratio = 2.0;
      tail.value_ratio = 4.0;
      break;
  }
  HalflineInstance inst;
  inst.op.weight = Weight(StepWeight(breaks, values, tail));
  inst.op.potential = random_potential(rng, spec);
  inst.op.endpoint = pick(rng, 0, 1) ? Endpoint::Dirichlet : Endpoint::Neumann;
  const bool zero = inst.op.weight.transient() && pick(rng, 0, 1);
  inst.E = zero ? 0.0 : -std::exp(uniform(rng, std::log(0.05), std::log(2.0)));
  return inst;
}

Weight random_power_weight(std::mt19937_64& rng, double d, double ratio) {
  PowerWeight w;
  w.exponent = d - 1.0;
  w.factors.clear();
  const int n = pick(rng, 1, 6);
  double t = 0.0;
  for (int i = 0; i < n; ++i) {
    t += uniform(rng, 0.3, 2.5);
    w.breaks.push_back(t);
  }
  for (int i = 0; i <= n; ++i) w.factors.push_back(std::exp(uniform(rng, 0.0, std::log(ratio))));
  // pin both ends of the envelope
  w.factors[std::size_t(pick(rng, 0, n))] = 1.0;
  std::size_t hi = std::size_t(pick(rng, 0, n));
  if (w.factors[hi] == 1.0 && n > 0) hi = (hi + 1) % std::size_t(n + 1);
  w.factors[hi] = ratio;
  return Weight(w);
}

TrialFunction random_trial(std::mt19937_64& rng) {
  const int m = pick(rng, 1, 8);
  const double scale = std::exp(uniform(rng, -4.0, 4.0));
  std::vector<double> x{0.0}, v;
  for (int k = 0; k < m; ++k) x.push_back(x.back() + scale * std::exp(uniform(rng, -2.0, 2.0)));
  for (int k = 0; k < m; ++k) v.push_back(uniform(rng, -1.0, 1.0));
  v.push_back(0.0);
  if (pick(rng, 0, 3) == 0) v[0] = 0.0;  // vanishing at the origin
  return TrialFunction::piecewise_linear(x, v);
}

std::vector<std::int64_t> batch_tree_counts(const std::vector<TreeInstance>& in, bool parallel) {
  std::vector<std::int64_t> out(in.size());
  parallel_for(in.size(), parallel, [&](std::size_t i) { out[i] = tree_count(in[i].tree, in[i].V, in[i].shift); });
  return out;
}

std::vector<std::int64_t> batch_halfline_counts(const std::vector<HalflineInstance>& in, bool parallel) {
  std::vector<std::int64_t> out(in.size());
  parallel_for(in.size(), parallel, [&](std::size_t i) { out[i] = count_below(in[i].op, in[i].E); });
  return out;
}

std::vector<double> batch_tree_moments(const std::vector<TreeInstance>& in, double gamma, bool parallel) {
  std::vector<double> out(in.size());
  parallel_for(in.size(), parallel, [&](std::size_t i) { out[i] = tree_moment(in[i].tree, in[i].V, gamma); });
  return out;
}

}  // namespace arbor
