#include "arbor/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "arbor/decomposition.hpp"
#include "arbor/quadrature.hpp"

namespace arbor {

namespace {

std::shared_ptr<const GroundState> shared_ground(int b) {
  static std::mutex m;
  static std::map<int, std::shared_ptr<const GroundState>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = cache[b];
  if (!slot) slot = std::make_shared<const GroundState>(b);
  return slot;
}

}  // namespace

HalflineOperator gsr_operator(int b, const SymmetricPotential& V) { return gsr_component(b, V, 0); }

HalflineOperator gsr_component(int b, const SymmetricPotential& V, std::size_t k) {
  if (b < 2) throw InvalidArgument("homogeneous tree needs b >= 2");
  HalflineOperator op;
  // omega solves the same equation on [k, inf) since g_k is a multiple of g_0 there
  op.weight = Weight(GsrWeight{shared_ground(b), double(k)});
  op.left = double(k);
  op.potential = k == 0 ? V : V.restricted(double(k));
  op.endpoint = k == 0 ? Endpoint::Neumann : Endpoint::Dirichlet;
  return op;
}

std::int64_t homogeneous_count_below_threshold(int b, const SymmetricPotential& V, const SolverOptions& opt) {
  const TreeDescriptor tree = TreeDescriptor::homogeneous(1.0, b);
  const std::size_t n = active_components(tree, V);
  std::int64_t total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t c = count_below(gsr_component(b, V, k), 0.0, opt);
    total += c * (k == 0 ? 1 : multiplicity(tree, k));
  }
  return total;
}

std::int64_t homogeneous_count_shifted(int b, const SymmetricPotential& V, double eps, const SolverOptions& opt) {
  const TreeDescriptor tree = TreeDescriptor::homogeneous(1.0, b);
  return tree_count_below(tree, V, lambda_b(b) - eps, opt);
}

Extended homogeneous_M(const Profile& w, double q) {
  if (!(q > 2.0)) throw InvalidArgument("homogeneous_M needs q > 2");
  const bool qinf = std::isinf(q);
  std::vector<double> t;
  for (int k = 0; k <= 2000; ++k) t.push_back(0.025 * k);
  for (double s = 50.0 * 1.02; s < 1e12; s *= 1.02) t.push_back(s);
  std::vector<double> F(t.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (qinf) {
      acc = std::max(acc, (1.0 + t[i]) * (1.0 + t[i]) / w(t[i]));
      F[i] = acc / (1.0 + t[i]);
    } else {
      if (i > 0)
        acc += integrate([&](double s) { return std::pow(1.0 + s, q) * std::pow(w(s), -(q - 2.0) / 2.0); },
                         t[i - 1], t[i], 1e-11);
      F[i] = std::pow(acc, 2.0 / q) / (1.0 + t[i]);
    }
  }
  const std::size_t n = F.size();
  const double best = *std::max_element(F.begin(), F.end());
  if (!std::isfinite(best) || F[n - 1] > 1.001 * F[(9 * n) / 10]) return Extended::infinity();
  return Extended::finite(best);
}

HomogeneousClr homo_clr_bound(int b, const SymmetricPotential& V, const Profile& w, double q,
                              const SolverOptions& opt) {
  HomogeneousClr r;
  const Extended M = homogeneous_M(w, q);
  if (M.is_infinite()) throw DivergentIntegral("M is infinite for this weight");
  r.M = M.value();
  r.p = std::isinf(q) ? 1.0 : q / (q - 2.0);
  const TreeDescriptor tree = TreeDescriptor::homogeneous(1.0, b);
  r.kernel = weighted_rhs(Weight(branching_function(tree, 0)), V, r.p, w, Mode::Tree);
  const double upper = clr_bound(r.M, r.p).second;
  const double lhs = double(homogeneous_count_below_threshold(b, V, opt));
  r.report = BoundReport::make("homogeneous-clr", lhs, upper * r.kernel, upper);
  r.report.provenance = "solver";
  r.report.params = {{"b", double(b)}, {"q", q}, {"p", r.p}, {"M", r.M}};
  const GroundStateChecks g = check_ground_state(b);
  r.envelope_prefactor = std::pow(g.envelope_hi / g.envelope_lo, 2.0);
  return r;
}

GroundStateChecks check_ground_state(int b, double T) {
  const GroundState gs(b);
  GroundStateChecks c;
  const double mu = gs.mu(), lam = gs.lambda();
  c.envelope_lo = kInf;
  const int edges = int(std::ceil(T));
  for (int j = 0; j < edges; ++j) {
    auto [a, bj] = gs.coefficients(std::size_t(j));
    auto [ra, rbj] = gs.recursion_coefficients(std::size_t(j));
    c.recursion_mismatch = std::max({c.recursion_mismatch, std::abs(a - ra) / std::abs(a),
                                     bj == 0.0 ? std::abs(rbj) : std::abs(bj - rbj) / std::abs(bj)});
    const double g0 = std::pow(double(b), j);
    for (int k = 0; k <= 64; ++k) {
      const double s = k / 64.0;
      const double t = j + std::clamp(s, 1e-9, 1.0);
      const double se = t - j;
      const double om = gs.omega(t);
      if (!(om > 0.0)) c.positive = false;
      // second derivative from the coefficient formula, independent of the ODE
      const double d2 = -mu * mu * (a * std::cos(mu * se) + bj * std::cos(mu * (1.0 - se)));
      const double scale = std::max(std::abs(om), std::abs(a) + std::abs(bj));
      c.ode_residual = std::max(c.ode_residual, std::abs(d2 + lam * om) / scale);
      const double env = om * std::sqrt(g0) / (1.0 + t);
      c.envelope_lo = std::min(c.envelope_lo, env);
      c.envelope_hi = std::max(c.envelope_hi, env);
    }
    if (j >= 1) {
      const double left = gs.omega_derivative(j, false), right = gs.omega_derivative(j, true);
      const double scale = std::abs(left) + std::abs(gs.omega(j));
      auto [pa, pb] = gs.coefficients(std::size_t(j));
      const double from_right = pa + pb * std::cos(mu);  // omega(j+) from edge j
      c.jump_residual = std::max({c.jump_residual, std::abs(left - b * right) / scale,
                                  std::abs(gs.omega(j) - from_right) / scale});
    }
  }
  const double rb = 1.0 / std::sqrt(double(b));
  const double hi = (1.0 / rb - rb) / (1.0 / rb + rb), lo = rb * hi;
  for (int j = 20; j < edges; ++j)
    for (int k = 0; k <= 32; ++k) {
      const double s = k / 32.0, phi = gs.periodic_factor(s);
      const double approx = gs.scaled(std::size_t(j), s) / j;
      const double slack = 1e-12 + 1.0 / j;
      if (phi < lo - 1e-12 || phi > hi + 1e-12 || approx < lo - slack || approx > hi + slack)
        c.periodic_factor_ok = false;
    }
  // int_0^n omega^2 g_0 grows without bound
  double prev = 0.0, total = 0.0;
  for (int j = 0; j < edges; ++j) {
    total += integrate([&](double s) { const double h = gs.scaled(std::size_t(j), s); return h * h; }, 0.0, 1.0);
    if (j > 10 && !(total > prev * 1.0 + 1.0)) c.not_square_integrable = false;
    prev = total;
  }
  return c;
}

OnsetCheck essential_onset(int b, double delta, std::vector<double> truncations) {
  OnsetCheck r;
  r.truncations = std::move(truncations);
  const TreeDescriptor tree = TreeDescriptor::homogeneous(1.0, b);
  HalflineOperator op;
  op.weight = Weight(branching_function(tree, 0));
  const double lam = lambda_b(b);
  for (double T : r.truncations) {
    r.zeros_below.push_back(propagate(op, lam - delta, initial_state(op), T).zeros);
    r.zeros_above.push_back(propagate(op, lam + delta, initial_state(op), T).zeros);
  }
  r.ok = true;
  for (std::size_t i = 1; i < r.truncations.size(); ++i) {
    if (r.zeros_below[i] != r.zeros_below[0]) r.ok = false;
    if (!(r.zeros_above[i] > r.zeros_above[i - 1])) r.ok = false;
  }
  return r;
}

}  // namespace arbor
