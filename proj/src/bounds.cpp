#include "arbor/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "arbor/quadrature.hpp"

namespace arbor {

BoundReport BoundReport::make(std::string name, double lhs, double rhs, double constant, double slack) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant = constant;
  r.ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInf : 0.0);
  r.satisfied = lhs <= rhs * (1.0 + slack) + slack;
  return r;
}

namespace {

std::vector<double> support_pieces(const Weight& g, const SymmetricPotential& V) {
  std::vector<double> b;
  if (V.is_zero()) return b;
  const double lo = std::max(V.support_begin(), g.left()), hi = V.support_end();
  if (!(hi > lo)) return b;
  b.push_back(lo);
  for (double t = V.next_break(lo); t < hi; t = V.next_break(t)) b.push_back(t);
  for (double t = g.next_break(lo); t < hi; t = g.next_break(t)) b.push_back(t);
  b.push_back(hi);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

// Points where a sup over t is evaluated: the left end, weight breaks, a
// dense stretch near the origin and a geometric tail.
std::vector<double> sup_grid(const Weight& g, double tmax) {
  const double left = g.left();
  std::vector<double> pts{left};
  std::size_t nb = 0;
  for (double t = g.next_break(left); t < tmax && nb < 20000; t = g.next_break(t), ++nb) pts.push_back(t);
  for (int k = 1; k <= 1000; ++k) pts.push_back(left + 0.05 * k);
  for (double t = left + 50.0; t < tmax; t *= 1.02) pts.push_back(t);
  pts.push_back(tmax);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  while (pts.back() > tmax) pts.pop_back();
  return pts;
}

// Largest t <= 1e12 where the weight is still far from overflow.
double safe_horizon(const Weight& g) {
  double hi = 1e12;
  if (std::isfinite(g(hi)) && g(hi) < 1e200) return hi;
  double lo = g.left();
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::isfinite(g(mid)) && g(mid) < 1e200) lo = mid;
    else hi = mid;
  }
  return lo;
}

// Smooth-piece integral of f between consecutive grid points, split at weight breaks.
double piece_integral(const Weight& g, const std::function<double(double)>& f, double a, double b) {
  std::vector<double> br{a};
  for (double t = g.next_break(a); t < b; t = g.next_break(t)) br.push_back(t);
  br.push_back(b);
  return integrate_pieces(f, br, 1e-12);
}

}  // namespace

double weighted_rhs(const Weight& g, const SymmetricPotential& V, double p, const Profile& w, Mode mode) {
  if (!(p >= 0.5)) throw InvalidArgument("potential exponent must be at least 1/2");
  const std::vector<double> br = support_pieces(g, V);
  if (br.empty()) return 0.0;
  return integrate_pieces(
      [&](double t) {
        const double v = positive_part(V(t));
        if (v == 0.0) return 0.0;
        double x = std::pow(v, p) * w(t);
        if (mode == Mode::Tree) x *= g(t);
        return x;
      },
      br, 1e-12, 1e-300);
}

double lt_rhs(const TreeDescriptor& tree, const SymmetricPotential& V, double gamma, double a, double d) {
  if (!(a >= 0.0) || !(gamma >= 0.0)) throw InvalidArgument("lt_rhs needs a, gamma >= 0");
  if (d == 1.0 && a > 0.0) throw InvalidArgument("d = 1 with a > 0: use the half-line weight (1+t)^a");
  const Weight g0(branching_function(tree, 0));
  const double e = a == 0.0 ? 0.0 : a / (d - 1.0);
  return weighted_rhs(g0, V, gamma + 0.5 * (1.0 + a), [&](double t) { return pow0(g0(t), e); }, Mode::Tree);
}

double lt_rhs_halfline(const SymmetricPotential& V, double gamma, double a) {
  const Weight one = Weight::unit();
  return weighted_rhs(one, V, gamma + 0.5 * (1.0 + a), [&](double t) { return pow0(1.0 + t, a); },
                      Mode::Halfline);
}

Extended clr_M(const Weight& g, const Profile& w, double q, bool dirichlet) {
  if (!(q > 2.0)) throw InvalidArgument("clr_M needs q > 2");
  if (!g.transient() && !dirichlet) throw DivergentIntegral("weight is recurrent: int^inf 1/g diverges");
  const bool qinf = std::isinf(q);
  const double tmax = safe_horizon(g);
  const std::vector<double> t = sup_grid(g, tmax);
  const std::size_t n = t.size();
  auto dens = [&](double s) { return std::pow(g(s), q / 2.0) * std::pow(w(s), -(q - 2.0) / 2.0); };
  auto ratio = [&](double s) { return g(s) / w(s); };
  auto ratio_after = [&](double s) { return g.value_after(s) / w(s); };

  std::vector<double> F(n, 0.0);
  if (!dirichlet) {
    double A = 0.0, S = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) {
        if (qinf) S = std::max(S, ratio(t[i]));
        else A += piece_integral(g, dens, t[i - 1], t[i]);
      }
      const double I = g.tail_integral(t[i]).value();
      if (qinf) {
        S = std::max(S, ratio_after(t[i]));
        F[i] = S * I;
      } else {
        F[i] = std::pow(A, 2.0 / q) * I;
      }
    }
  } else {
    // suffix quantity and prefix int_0^t 1/g
    std::vector<double> J(n, 0.0), B(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
      J[i] = J[i - 1] + piece_integral(g, [&](double s) { return 1.0 / g(s); }, t[i - 1], t[i]);
    if (qinf) {
      B[n - 1] = std::max(ratio(t[n - 1]), ratio_after(t[n - 1]));
      for (std::size_t i = n - 1; i-- > 0;) B[i] = std::max({B[i + 1], ratio(t[i + 1]), ratio_after(t[i])});
      // still growing at the horizon: the suffix sup is infinite
      if (ratio(t[n - 1]) > 1.001 * ratio(t[n / 2]) && ratio(t[n - 1]) > 1.001 * ratio(t[n - 2]))
        return Extended::infinity();
    } else {
      std::vector<double> piece(n, 0.0);
      for (std::size_t i = 1; i < n; ++i) piece[i] = piece_integral(g, dens, t[i - 1], t[i]);
      const double last = piece[n - 1] + piece[n - 2];
      double total = 0.0;
      for (double x : piece) total += x;
      if (last > 1e-6 * total) return Extended::infinity();
      B[n - 1] = 0.0;
      for (std::size_t i = n - 1; i-- > 0;) B[i] = B[i + 1] + piece[i + 1];
      for (double& x : B) x = std::pow(x, 2.0 / q);
    }
    for (std::size_t i = 0; i < n; ++i) F[i] = B[i] * J[i];
  }

  const auto it = std::max_element(F.begin(), F.end());
  const std::size_t im = static_cast<std::size_t>(it - F.begin());
  if (!std::isfinite(*it)) return Extended::infinity();
  // sup still increasing at the far end of the grid
  if (im + 3 >= n && F[n - 1] > 1.001 * F[(9 * n) / 10]) return Extended::infinity();
  double best = *it;
  if (!dirichlet && !qinf && im > 0 && im + 1 < n) {
    // golden-section refinement of the interior maximum
    const double a0 = t[im - 1];
    const double A0 = [&] {
      double A = 0.0;
      for (std::size_t i = 1; i < im; ++i) A += piece_integral(g, dens, t[i - 1], t[i]);
      return A;
    }();
    auto Fx = [&](double x) {
      return std::pow(A0 + piece_integral(g, dens, a0, x), 2.0 / q) * g.tail_integral(x).value();
    };
    double lo = a0, hi = t[im + 1];
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int k = 0; k < 60; ++k) {
      const double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
      if (Fx(x1) >= Fx(x2)) hi = x2;
      else lo = x1;
    }
    best = std::max(best, Fx(0.5 * (lo + hi)));
  }
  return Extended::finite(best);
}

std::pair<double, double> clr_bound(double M, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("clr_bound needs p >= 1");
  if (!(M >= 0.0)) throw InvalidArgument("clr_bound needs M >= 0");
  if (p == 1.0) return {M, M};
  const double pc = p / (p - 1.0);
  const double Mp = std::pow(M, p);
  return {Mp, std::pow(1.0 + pc, p - 1.0) * std::pow(1.0 + 1.0 / pc, p) * Mp};
}

double sharp_clr_rhs(const Weight& g, const SymmetricPotential& V) {
  if (!g.transient()) throw DivergentIntegral("weight is recurrent: int^inf 1/g diverges");
  const std::vector<double> br = support_pieces(g, V);
  if (br.empty()) return 0.0;
  return integrate_pieces(
      [&](double t) {
        const double v = positive_part(V(t));
        return v == 0.0 ? 0.0 : v * g(t) * g.tail_integral(t).value();
      },
      br, 1e-12);
}

double consequence_clr_rhs(const Weight& g, const SymmetricPotential& V) {
  const double ell = g.tail_integral(g.left()).value();
  return ell * weighted_rhs(g, V, 1.0, [](double) { return 1.0; }, Mode::Tree);
}

HardyResult hardy_check(const TrialFunction& u, const Profile& w, const Weight& g, double q) {
  if (!(q >= 2.0)) throw InvalidArgument("hardy_check needs q >= 2");
  HardyResult r;
  const bool qinf = std::isinf(q);
  std::vector<double> br = u.breaks();
  if (qinf) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
      for (int k = 0; k <= 400; ++k) {
        const double t = br[i] + (br[i + 1] - br[i]) * k / 400.0;
        s = std::max(s, std::abs(w(t) * u(t)));
      }
    r.lhs = s * s;
  } else {
    r.lhs = std::pow(u.power_integral(q, [&](double t) { return std::pow(std::abs(w(t)), q); }), 2.0 / q);
  }
  r.rhs = u.gradient_integral([&](double t) { return g(t); });
  if (!g.transient()) {
    r.T = Extended::infinity();
    r.ok = true;
    return r;
  }
  // T = sup_r (int_0^r w^q)^{1/q} (int_r^inf 1/g)^{1/2}
  const std::vector<double> t = sup_grid(g, safe_horizon(g));
  double A = 0.0, S = 0.0, T = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) {
      if (qinf) S = std::max(S, std::abs(w(t[i])));
      else A += integrate([&](double s) { return std::pow(std::abs(w(s)), q); }, t[i - 1], t[i], 1e-10);
    }
    const double I = g.tail_integral(t[i]).value();
    const double lead = qinf ? std::max(S, std::abs(w(t[i]))) : std::pow(A, 1.0 / q);
    T = std::max(T, lead * std::sqrt(I));
  }
  r.T = Extended::finite(T);
  r.S_lower = T;
  r.S_upper = qinf ? T : std::pow(1.0 + q / 2.0, 1.0 / q) * std::sqrt(1.0 + 2.0 / q) * T;
  r.ok = r.lhs <= r.S_upper * r.S_upper * r.rhs * (1.0 + 1e-9) + 1e-300;
  return r;
}

double classical_lt_constant(double gamma) {
  if (!(gamma >= 0.0)) throw InvalidArgument("classical constant needs gamma >= 0");
  return std::exp(std::lgamma(gamma + 1.0) - std::lgamma(gamma + 1.5)) / (2.0 * std::sqrt(kPi));
}

ClassicalConstants classical_constants(double gamma) {
  if (!(gamma >= 0.5)) throw InvalidArgument("the explicit tree constant needs gamma >= 1/2");
  return {classical_lt_constant(gamma), gamma >= 1.5 ? 2.0 : 4.0};
}

}  // namespace arbor
