#include "arbor/sobolev.hpp"

#include <algorithm>
#include <cmath>

#include "arbor/quadrature.hpp"

namespace arbor {

namespace {

constexpr double kEps = 1e-12;

bool leq(double x, double y) { return x <= y + kEps; }

}  // namespace

const char* region_name(SobolevRegion r) {
  switch (r) {
    case SobolevRegion::SmallBeta: return "small-beta";
    case SobolevRegion::LargeBeta: return "large-beta";
    case SobolevRegion::ZeroBeta: return "zero-beta-qinf";
    case SobolevRegion::FailsFiniteQ: return "fails-finite-q";
    case SobolevRegion::FailsInfiniteQ: return "fails-infinite-q";
    case SobolevRegion::FailsLargeQ: return "fails-large-q";
    case SobolevRegion::Outside: return "outside";
  }
  return "outside";
}

bool region_holds(SobolevRegion r) {
  return r == SobolevRegion::SmallBeta || r == SobolevRegion::LargeBeta || r == SobolevRegion::ZeroBeta;
}

SobolevRegion classify_region(double q, double beta, double d) {
  if (!(d >= 1.0) || !(q >= 2.0)) return SobolevRegion::Outside;
  const bool qinf = std::isinf(q);
  const double h = (d - 1.0) / 2.0;
  if (beta > h + kEps && leq(beta, d / 2.0)) {
    const double cap = 1.0 / (beta - h);
    return leq(q, cap) ? SobolevRegion::LargeBeta : SobolevRegion::FailsLargeQ;
  }
  if (d > 1.0 && d <= 2.0 && beta > kEps && leq(beta, h)) return SobolevRegion::SmallBeta;
  if (d > 2.0 && leq((d - 2.0) / 2.0, beta) && leq(beta, h)) return SobolevRegion::SmallBeta;
  if (d <= 2.0 && leq(-(2.0 - d) / 2.0, beta) && leq(beta, 0.0)) {
    if (!qinf) return SobolevRegion::FailsFiniteQ;
    if (d < 2.0 && std::abs(beta) <= kEps) return SobolevRegion::ZeroBeta;
    return SobolevRegion::FailsInfiniteQ;
  }
  return SobolevRegion::Outside;
}

DualityParams duality_map(double gamma, double a, double d) {
  if (!(gamma >= 0.0) || !(a > -1.0) || !(d >= 1.0)) throw InvalidArgument("duality needs gamma >= 0, a > -1, d >= 1");
  DualityParams r;
  r.gamma = gamma;
  r.a = a;
  r.d = d;
  r.p = gamma + 0.5 * (1.0 + a);
  if (!(r.p >= 1.0 - kEps)) throw RegionError("p < 1: no Sobolev exponent q in (2, inf]");
  r.q = std::abs(r.p - 1.0) <= kEps ? kInf : 2.0 * r.p / (r.p - 1.0);
  r.beta = (d * r.p - 1.0 - a) / (2.0 * r.p);
  r.theta = (d - 2.0 * r.beta) / 2.0;
  r.region = classify_region(r.q, r.beta, d);
  return r;
}

DualityParams duality_from_sobolev(double q, double beta, double d) {
  if (!(q > 2.0)) throw InvalidArgument("duality needs q in (2, inf]");
  DualityParams r;
  r.q = q;
  r.beta = beta;
  r.d = d;
  r.theta = (d - 2.0 * beta) / 2.0;
  if (std::isinf(q)) {
    r.p = 1.0;
    r.a = d - 1.0 - 2.0 * beta;
  } else {
    r.p = q / (q - 2.0);
    r.a = ((d - 1.0 - 2.0 * beta) * q + 2.0) / (q - 2.0);
  }
  r.gamma = r.p - 0.5 * (1.0 + r.a);
  r.region = classify_region(q, beta, d);
  return r;
}

namespace {

double k2_small(double beta, double d) { return std::pow(beta, -d + 2.0 * beta); }

double kinf_small(double beta, double d) {
  return pow0(2.0 / (d - 2.0 * beta), d - 2.0 * beta) * pow0((d - 1.0 - 2.0 * beta) / (2.0 * beta), d - 1.0 - 2.0 * beta);
}

}  // namespace

SobolevConstant sobolev_constant(double q, double beta, double d) {
  const SobolevRegion region = classify_region(q, beta, d);
  if (!region_holds(region)) throw RegionError(std::string("inequality fails or is not covered: ") + region_name(region));
  const bool qinf = std::isinf(q);
  switch (region) {
    case SobolevRegion::SmallBeta: {
      if (q == 2.0) return {k2_small(beta, d), "q=2 endpoint"};
      if (qinf) return {kinf_small(beta, d), "q=inf endpoint"};
      const double K = std::pow(kinf_small(beta, d), (q - 2.0) / q) * std::pow(k2_small(beta, d), 2.0 / q);
      return {K, "interpolated between q=2 and q=inf"};
    }
    case SobolevRegion::ZeroBeta: {
      const double K = std::pow(2.0 * d, d) * pow0(2.0 * (d - 1.0), -2.0 * (d - 1.0)) / (2.0 - d);
      return {K, "beta=0 q=inf endpoint"};
    }
    case SobolevRegion::LargeBeta: {
      const double h = (d - 1.0) / 2.0;
      double K2;
      if (d == 1.0) K2 = std::pow(2.0, -2.0 * beta) * pow0(1.0 - 2.0 * beta, 2.0 * beta - 1.0) / beta;
      else K2 = std::pow(2.0 / (d - 1.0), d - 2.0 * beta);
      if (q == 2.0) return {K2, d == 1.0 ? "q=2 endpoint, d=1" : "q=2 via Hoelder"};
      const double Q = 1.0 / (beta - h);
      // sup |u|^2 (1+t)^{d-1} <= 2 D^{1/2} N^{1/2} in every dimension
      const double KQ = std::isinf(Q) ? 2.0 : std::pow(2.0, (Q - 2.0) / Q);
      if (std::abs(q - Q) <= 1e-12 * Q) return {KQ, "q at the cap"};
      const double lam = (q - 2.0) / (Q - 2.0);
      const double K = std::pow(K2, 2.0 * (1.0 - lam) / q) * std::pow(KQ, Q * lam / q);
      return {K, "interpolated between q=2 and the cap"};
    }
    default:
      break;
  }
  throw RegionError("unreachable region");
}

SobolevCheck check_sobolev(const TrialFunction& u, double q, double beta, double d, std::optional<double> K) {
  SobolevCheck c;
  c.K = K ? *K : sobolev_constant(q, beta, d).value;
  if (std::isinf(q)) {
    const double s = u.weighted_sup(beta, 1.0);
    c.lhs = s * s;
  } else {
    const double e = beta * q - 1.0;
    c.lhs = std::pow(u.power_integral(q, [e](double t) { return std::pow(1.0 + t, e); }), 2.0 / q);
  }
  const double e = d - 1.0;
  auto w = [e](double t) { return pow0(1.0 + t, e); };
  c.gradient = u.gradient_integral(w);
  c.mass = u.power_integral(2.0, w);
  const double theta = (d - 2.0 * beta) / 2.0;
  c.rhs = c.K * pow0(c.gradient, theta) * pow0(c.mass, 1.0 - theta);
  c.ratio = c.rhs > 0.0 ? c.lhs / c.rhs : (c.lhs > 0.0 ? kInf : 0.0);
  return c;
}

SymmetricPotential dirac_potential(double n) {
  if (!(n > 0.0)) throw InvalidArgument("dirac family needs n > 0");
  return SymmetricPotential::piecewise({0.0, 1.0 / n}, {n});
}

TrialFunction log_trial(double n) {
  if (!(n > 1.0)) throw InvalidArgument("log trial needs n > 1");
  const double L = std::log(n);
  return TrialFunction::analytic([n, L](double s) { return s <= 1.0 ? 1.0 : std::log(n / s) / L; },
                                 [L](double s) { return s <= 1.0 ? 0.0 : -1.0 / (s * L); }, {0.0, 1.0, n});
}

TrialFunction scaling_trial(const TrialFunction& v, double l) { return v.scaled(l); }

SymmetricPotential weak_coupling_witness(double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("coupling must be positive");
  return SymmetricPotential::piecewise({0.0, 1.0}, {alpha});
}

bool lowest_admissible(double gamma, double a, double d) {
  if (!(gamma >= 0.0) || !(a >= 0.0) || !(d >= 1.0)) return false;
  if ((d < 2.0 && a <= d - 1.0) || (d >= 2.0 && a < 1.0)) return gamma >= (1.0 - a) / 2.0 - kEps;
  if ((d < 2.0 && a > d - 1.0) || (d == 2.0 && a >= 1.0)) return gamma > (1.0 + a) * (2.0 - d) / (2.0 * d);
  return true;  // d > 2, a >= 1
}

OneBoundState one_bound_state_bound(double gamma, double a, double d, double c1, double c2) {
  if (!lowest_admissible(gamma, a, d)) throw RegionError("(gamma, a) outside the admissible region");
  if (!(c1 > 0.0) || !(c2 >= c1)) throw InvalidArgument("need 0 < c1 <= c2");
  OneBoundState r;
  r.params = duality_map(gamma, a, d);
  const auto& P = r.params;
  const SobolevConstant K = sobolev_constant(P.q, P.beta, d);
  r.K = K.value;
  r.source = K.source;
  // weight exponent on the left is (beta q - 1)/(d-1), tending to 2 beta/(d-1) as q -> inf
  double F = 1.0 / c1;
  if (d > 1.0) {
    const double e = std::isinf(P.q) ? 2.0 * P.beta / (d - 1.0) : 2.0 * (P.beta * P.q - 1.0) / (P.q * (d - 1.0));
    F *= std::pow(e >= 0.0 ? c2 : c1, e);
  }
  r.K_g = F * r.K;
  const double th = P.theta;
  const double base = r.K_g * pow0(th, th) * pow0(1.0 - th, 1.0 - th);
  r.C = std::isinf(P.q) ? base : std::pow(base, P.q / (P.q - 2.0));
  return r;
}

double lowest_rhs(const Weight& g, const SymmetricPotential& V, double gamma, double a, double d) {
  const double p = gamma + 0.5 * (1.0 + a);
  if (d == 1.0)
    return weighted_rhs(g, V, p, [a](double t) { return pow0(1.0 + t, a); }, Mode::Halfline);
  const double e = a / (d - 1.0);
  return weighted_rhs(g, V, p, [&g, e](double t) { return pow0(g(t), e); }, Mode::Halfline);
}

HalflineOperator background_operator(const SymmetricPotential& V, double d) {
  HalflineOperator op;
  op.potential = V;
  op.endpoint = Endpoint::Dirichlet;
  op.background_dimension = d;
  return op;
}

Sandwich dirichlet_sandwich(const Weight& g, double c1, double c2, const SymmetricPotential& V, double gamma,
                            double d, const SolverOptions& opt) {
  if (!(c1 > 0.0) || !(c2 >= c1)) throw InvalidArgument("need 0 < c1 <= c2");
  Sandwich s;
  s.beta = c2 / c1;
  HalflineOperator A;
  A.weight = g;
  A.potential = V;
  A.endpoint = Endpoint::Dirichlet;
  s.middle = moment(A, gamma, 0.0, opt);
  s.lower = moment(background_operator(V.scaled(1.0 / s.beta), d), gamma, 0.0, opt);
  s.upper = moment(background_operator(V.scaled(s.beta), d), gamma, 0.0, opt);
  const double tol = 1e-9 * (1.0 + std::abs(s.upper));
  s.ok = s.lower <= s.middle + tol && s.middle <= s.upper + tol;
  return s;
}

HalflineOperator hardy_operator(const SymmetricPotential& W) {
  PowerWeight w;
  w.exponent = 1.0;
  w.offset = 0.0;
  w.left = 1e-9;
  HalflineOperator op;
  op.weight = Weight(w);
  op.left = w.left;
  op.potential = W.restricted(w.left);
  op.endpoint = Endpoint::Neumann;
  return op;
}

}  // namespace arbor
