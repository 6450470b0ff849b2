#include "arbor/halfline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

namespace arbor {

namespace {

double background_coefficient(const HalflineOperator& op) {
  if (!op.background_dimension) return 0.0;
  const double d = *op.background_dimension;
  return (d - 1.0) * (d - 3.0) / 4.0;
}

bool is_unit_weight(const Weight& w) {
  const StepWeight* s = w.step();
  if (!s) return false;
  for (double v : s->values())
    if (v != 1.0) return false;
  return s->tail().first_value == 1.0 && s->tail().value_ratio == 1.0;
}

double potential_end(const HalflineOperator& op) {
  if (op.potential.is_zero()) return op.left;
  return std::max(op.left, op.potential.support_end());
}

template <class Real>
int sgn(Real x) {
  return (x > 0) - (x < 0);
}

// Zeros of u on (0, L] for -u'' = k2 u with data (u, du) at 0. Updates the
// data in place up to a positive factor.
template <class Real>
std::int64_t constant_piece(Real& u, Real& du, Real k2, Real L) {
  using std::abs, std::atan2, std::cos, std::exp, std::floor, std::log, std::sin, std::sqrt;
  const Real pi = Real(3.141592653589793238462643383279502884L);
  std::int64_t z = 0;
  if (k2 > 0 && sqrt(k2) * L > Real(1e-9)) {
    const Real k = sqrt(k2);
    const Real psi = atan2(-du / k, u);
    const Real half = pi / 2;
    z = static_cast<std::int64_t>(floor((psi + k * L - half) / pi) - floor((psi - half) / pi));
    const Real c = cos(k * L), s = sin(k * L);
    const Real nu = u * c + du / k * s;
    const Real nd = -u * k * s + du * c;
    u = nu;
    du = nd;
  } else if (k2 < 0 && sqrt(-k2) * L > Real(1e-9)) {
    const Real kap = sqrt(-k2);
    const Real A = (u + du / kap) / 2, B = (u - du / kap) / 2;
    if (A != 0) {
      const Real r = -B / A;
      if (r > 1 && log(r) <= 2 * kap * L) z = 1;
    }
    // growth factor e^{kap L} dropped
    const Real e2 = exp(-2 * kap * L);
    if (A == 0) {
      du = -kap * B;
      u = B;
    } else {
      u = A + B * e2;
      du = kap * (A - B * e2);
    }
  } else {
    if (du != 0) {
      const Real x = -u / du;
      if (x > 0 && x <= L) z = 1;
    }
    u = u + du * L;
  }
  return z;
}

template <class Real>
void renormalize(Real& u, Real& p) {
  using std::abs;
  const Real m = std::max(abs(u), abs(p));
  if (m > Real(1e100) || (m < Real(1e-100) && m > 0)) {
    u /= m;
    p /= m;
  }
}

template <class Real>
class Shooter {
 public:
  // Returns true to stop the walk early.
  using Stop = std::function<bool(double, Real, Real)>;

  Shooter(const HalflineOperator& op, double E, const SolverOptions& opt)
      : op_(op), E_(E), opt_(opt), c_(background_coefficient(op)) {
    if (op.background_dimension && !is_unit_weight(op.weight))
      throw InvalidArgument("background term requires the unit weight");
    if (!(op.weight.left() <= op.left)) throw InvalidArgument("left endpoint outside the weight domain");
  }

  void init() {
    t_ = op_.left;
    zeros_ = 0;
    if (op_.endpoint == Endpoint::Neumann) {
      u_ = 1;
      p_ = 0;
    } else {
      u_ = 0;
      p_ = 1;
    }
  }
  void set(const SolutionState& s) {
    t_ = s.t;
    u_ = s.u;
    p_ = s.flux;
    zeros_ = s.zeros;
  }
  SolutionState state() const {
    return {t_, static_cast<double>(u_), static_cast<double>(p_), zeros_, t_ >= potential_end(op_)};
  }
  double t() const { return t_; }
  Real u() const { return u_; }
  Real p() const { return p_; }
  std::int64_t zeros() const { return zeros_; }

  // Walk to `to`; stop is polled at piece ends and after RK steps.
  bool advance(double to, const Stop& stop = nullptr) {
    std::size_t guard = 0;
    while (t_ < to) {
      if (++guard > opt_.max_pieces) throw NumericFailure("too many pieces in propagation");
      const double b = std::min({to, op_.weight.next_break(t_), op_.potential.next_break(t_)});
      if (constant_on(t_, b)) {
        const Real g = op_.weight.value_after(t_);
        const Real k2 = Real(potential_on(t_, b)) + Real(E_);
        Real du = p_ / g;
        zeros_ += constant_piece<Real>(u_, du, k2, Real(b - t_));
        p_ = g * du;
        renormalize(u_, p_);
        t_ = b;
        if (stop && stop(t_, u_, p_)) return true;
      } else {
        if (std::isinf(b)) {
          // open-ended smooth tail: geometric chunks
          const double e = t_ + std::max(1.0, std::abs(t_));
          if (rk(t_, e, stop)) return true;
        } else if (rk(t_, b, stop)) {
          return true;
        }
      }
    }
    return false;
  }

  // Exact tail of a piecewise constant problem with infinite last piece.
  bool constant_tail() const {
    return !op_.background_dimension && op_.weight.piecewise_constant() &&
           std::isinf(op_.weight.next_break(t_)) && t_ >= potential_end(op_);
  }

  double veff(double t) const {
    double v = op_.potential(t);
    if (c_ != 0.0) v -= c_ / ((1.0 + t) * (1.0 + t));
    return v;
  }
  double background() const { return c_; }

 private:
  bool constant_on(double a, double b) const {
    if (op_.background_dimension || !op_.weight.piecewise_constant()) return false;
    if (op_.potential.piecewise_constant()) return true;
    return b <= op_.potential.support_begin() || a >= op_.potential.support_end();
  }
  double potential_on(double a, double b) const {
    if (std::isinf(b)) return op_.potential(a + 1.0 + std::abs(a));
    return op_.potential(0.5 * (a + b));
  }

  bool rk(double a, double b, const Stop& stop) {
    using std::abs, std::sqrt;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double a_in = std::nextafter(a, kInf);
    auto g = [&](double t) { return Real(op_.weight(std::max(t, a_in))); };
    auto q = [&](double t) { return Real(veff(std::max(t, a_in))) + Real(E_); };
    auto f = [&](double t, Real u, Real p, Real& du, Real& dp) {
      const Real gt = g(t);
      du = p / gt;
      dp = -q(t) * gt * u;
    };

    double t = a;
    double h = std::min(h_, b - a);
    std::size_t guard = 0;
    while (t < b) {
      if (++guard > 100'000'000) throw NumericFailure("ODE step limit exceeded");
      const Real k2 = q(t);
      double cap = b - t;
      if (k2 > 0) cap = std::min(cap, 0.5 / static_cast<double>(sqrt(k2)));
      h = std::min(h, cap);
      if (!(h > 0)) h = cap;
      const Real H = h;
      Real k1u, k1p, k2u, k2p, k3u, k3p, k4u, k4p, k5u, k5p, k6u, k6p, k7u, k7p;
      f(t, u_, p_, k1u, k1p);
      f(t + c2 * h, u_ + H * a21 * k1u, p_ + H * a21 * k1p, k2u, k2p);
      f(t + c3 * h, u_ + H * (a31 * k1u + a32 * k2u), p_ + H * (a31 * k1p + a32 * k2p), k3u, k3p);
      f(t + c4 * h, u_ + H * (a41 * k1u + a42 * k2u + a43 * k3u), p_ + H * (a41 * k1p + a42 * k2p + a43 * k3p),
        k4u, k4p);
      f(t + c5 * h, u_ + H * (a51 * k1u + a52 * k2u + a53 * k3u + a54 * k4u),
        p_ + H * (a51 * k1p + a52 * k2p + a53 * k3p + a54 * k4p), k5u, k5p);
      const double t6 = (h == b - t) ? b : t + h;
      f(t6, u_ + H * (a61 * k1u + a62 * k2u + a63 * k3u + a64 * k4u + a65 * k5u),
        p_ + H * (a61 * k1p + a62 * k2p + a63 * k3p + a64 * k4p + a65 * k5p), k6u, k6p);
      const Real nu = u_ + H * (b1 * k1u + b3 * k3u + b4 * k4u + b5 * k5u + b6 * k6u);
      const Real np = p_ + H * (b1 * k1p + b3 * k3p + b4 * k4p + b5 * k5p + b6 * k6p);
      f(t6, nu, np, k7u, k7p);
      const Real eu = H * (e1 * k1u + e3 * k3u + e4 * k4u + e5 * k5u + e6 * k6u + e7 * k7u);
      const Real ep = H * (e1 * k1p + e3 * k3p + e4 * k4p + e5 * k5p + e6 * k6p + e7 * k7p);
      const Real kap = std::max<Real>(sqrt(abs(k2)), Real(1.0 / (1.0 + std::abs(t))));
      const Real sp = g(t6) * kap;
      const Real scale = sqrt(nu * nu + (np / sp) * (np / sp)) + sqrt(u_ * u_ + (p_ / sp) * (p_ / sp));
      const Real err = sqrt(eu * eu + (ep / sp) * (ep / sp)) / (Real(opt_.ode_rtol) * scale + Real(1e-300));
      if (err <= 1 || h < 1e-14 * (1.0 + std::abs(t))) {
        if (u_ != 0 && (nu == 0 || sgn(nu) != sgn(u_))) ++zeros_;
        u_ = nu;
        p_ = np;
        renormalize(u_, p_);
        t = t6;
        const double fac = err > 0 ? 0.9 * std::pow(static_cast<double>(err), -0.2) : 5.0;
        h = h * std::clamp(fac, 0.2, 5.0);
        t_ = t;
        if (stop && stop(t_, u_, p_)) {
          h_ = h;
          return true;
        }
      } else {
        h = h * std::clamp(0.9 * std::pow(static_cast<double>(err), -0.2), 0.1, 0.5);
      }
    }
    h_ = h;
    t_ = b;
    return false;
  }

  const HalflineOperator& op_;
  double E_;
  SolverOptions opt_;
  double c_;
  double t_ = 0.0;
  Real u_ = 1, p_ = 0;
  std::int64_t zeros_ = 0;
  double h_ = 0.01;
};

template <class Real>
std::int64_t periodic_tail_zeros(Shooter<Real>& s, const HalflineOperator& op, double E, double from) {
  using std::abs, std::cos, std::log, std::sin, std::sqrt;
  const StepWeight* sw = op.weight.step();
  if (!sw || op.background_dimension || !sw->periodic_tail() || !(sw->tail().value_ratio > 1.0))
    throw InvalidArgument("counting above zero needs a step weight with a periodic exponential tail");
  const double x0 = sw->breaks().back();
  const double L = sw->tail().first_length;
  const double b = sw->tail().value_ratio;
  const double T0 = std::max(from, x0);
  const double j = std::ceil((T0 - x0) / L - 1e-12);
  const double Tb = x0 + std::max(0.0, j) * L;
  s.advance(Tb);
  const Real g = sw->value_after(Tb);
  Real u = s.u(), du = s.p() / g;

  const Real k = sqrt(Real(E));
  const Real c = cos(k * Real(L)), sn = sin(k * Real(L));
  const Real Rb = (sqrt(Real(b)) + 1 / sqrt(Real(b))) / 2;
  if (!(c > 1 / Rb)) throw InvalidArgument("energy at or above the bottom of the essential spectrum");
  const Real P11 = c, P12 = sn / k, P21 = -k * sn / Real(b), P22 = c / Real(b);
  const Real tr = P11 + P22, det = P11 * P22 - P12 * P21;
  const Real disc = sqrt(tr * tr - 4 * det);
  const Real l1 = (tr + disc) / 2, l2 = det / l1;
  auto eigvec = [&](Real l, Real& x, Real& y) {
    const Real ax = P12, ay = l - P11, bx = l - P22, by = P21;
    if (abs(ax) + abs(ay) >= abs(bx) + abs(by)) {
      x = ax;
      y = ay;
    } else {
      x = bx;
      y = by;
    }
  };
  Real v1x, v1y, v2x, v2y;
  eigvec(l1, v1x, v1y);
  eigvec(l2, v2x, v2y);
  const Real D = v1x * v2y - v1y * v2x;
  const Real a = (u * v2y - du * v2x) / D;
  const Real cc = (v1x * du - v1y * u) / D;
  if (a == 0) throw NumericFailure("tail data lies on the decaying direction");
  double n = 2.0;
  if (cc != 0) n += std::max(0.0, static_cast<double>(log(Real(1e-14) * abs(a / cc)) / log(l2 / l1)));
  if (n > 1e6) throw NumericFailure("periodic tail alignment too slow");
  std::int64_t z = 0;
  const Real k2 = Real(E);
  for (long i = 0; i < static_cast<long>(n); ++i) {
    z += constant_piece<Real>(u, du, k2, Real(L));
    du /= Real(b);
    renormalize(u, du);
  }
  const Real cross = u * v1y - du * v1x;
  if (abs(cross) > Real(1e-8) * sqrt(u * u + du * du) * sqrt(v1x * v1x + v1y * v1y))
    throw NumericFailure("periodic tail did not align with the dominant direction");
  Real wx = v1x, wy = v1y;
  if (constant_piece<Real>(wx, wy, k2, Real(L)) != 0)
    throw InvalidArgument("dominant tail solution oscillates: infinitely many eigenvalues below the energy");
  return z;
}

template <class Real>
std::int64_t count_impl(const HalflineOperator& op, double E, const SolverOptions& opt) {
  Shooter<Real> s(op, E, opt);
  s.init();
  const double T = potential_end(op);
  s.advance(T);
  const double c = s.background();

  if (E > 0.0) {
    // the tail routine advances the shooter, so read the count afterwards
    const std::int64_t tail = periodic_tail_zeros<Real>(s, op, E, T);
    return s.zeros() + tail;
  }

  if (E == 0.0) {
    const Real u = s.u(), p = s.p();
    std::int64_t z = s.zeros();
    if (op.background_dimension) {
      const double d = *op.background_dimension;
      const Real S = 1.0 + T, r = (d - 1.0) / 2.0;
      const Real du = p;  // unit weight
      if (d > 2.0) {
        const Real A = (du * S - (1 - r) * u) / Real(d - 2.0);
        if (u * A < 0) ++z;
      } else {
        if (u * (du * S - r * u) < 0) ++z;
      }
      return z;
    }
    if (op.weight.transient()) {
      const Real I = op.weight.tail_integral(T).value();
      const Real uinf = u + p * I;
      if (u * uinf < 0) ++z;
    } else if (u * p < 0) {
      ++z;
    }
    return z;
  }

  // E < 0: walk until the solution provably escapes.
  const double mu = -E;
  auto escaped = [&](double t, Real u, Real p) {
    if (!(u * p > 0)) return false;
    if (c < 0.0 && (1.0 + t) * (1.0 + t) * mu <= -c) return false;
    return true;
  };
  if (escaped(s.t(), s.u(), s.p())) return s.zeros();
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 100000 || s.t() > 1e15) throw NumericFailure("tail walk did not terminate");
    if (s.constant_tail()) {
      const Real g = op.weight.value_after(s.t());
      const Real kap = std::sqrt(Real(mu));
      const Real u = s.u(), du = s.p() / g;
      const Real A = (u + du / kap) / 2, B = (u - du / kap) / 2;
      return s.zeros() + ((A != 0 && -B / A > 1) ? 1 : 0);
    }
    const double next = s.t() + std::max(1.0, std::abs(s.t()));
    if (s.advance(next, escaped)) return s.zeros();
  }
}

template <class Real>
SolutionState propagate_impl(const HalflineOperator& op, double lambda, const SolutionState& from, double to,
                             const SolverOptions& opt) {
  Shooter<Real> s(op, lambda, opt);
  s.set(from);
  s.advance(to);
  return s.state();
}

}  // namespace

double HalflineOperator::sup_effective_potential() const {
  double v = potential.sup_positive();
  if (background_dimension) {
    const double d = *background_dimension;
    const double c = (d - 1.0) * (d - 3.0) / 4.0;
    if (c < 0.0) v += -c / ((1.0 + left) * (1.0 + left));
  }
  return v;
}

SolutionState initial_state(const HalflineOperator& op) {
  SolutionState s;
  s.t = op.left;
  if (op.endpoint == Endpoint::Neumann) {
    s.u = 1.0;
    s.flux = 0.0;
  } else {
    s.u = 0.0;
    s.flux = 1.0;
  }
  return s;
}

SolutionState propagate(const HalflineOperator& op, double lambda, const SolutionState& from, double to,
                        const SolverOptions& opt) {
  if (!(to >= from.t)) throw InvalidArgument("propagate needs to >= from.t");
  if (opt.precision == Precision::Extended) return propagate_impl<long double>(op, lambda, from, to, opt);
  return propagate_impl<double>(op, lambda, from, to, opt);
}

std::int64_t count_below(const HalflineOperator& op, double E, const SolverOptions& opt) {
  if (opt.precision == Precision::Extended) return count_impl<long double>(op, E, opt);
  return count_impl<double>(op, E, opt);
}

std::int64_t count_negative(const HalflineOperator& op, double mu, const SolverOptions& opt) {
  if (!(mu >= 0.0)) throw InvalidArgument("shift must be nonnegative");
  return count_below(op, -mu, opt);
}

std::vector<Eigenvalue> eigenvalues_below(const HalflineOperator& op, double threshold, const SolverOptions& opt) {
  std::vector<Eigenvalue> out;
  // V_+ = 0 gives floor 0: nothing below a nonpositive threshold
  const double floor_value = -op.sup_effective_potential() * (1.0 + 1e-12);
  if (!(threshold > floor_value)) return out;
  if (count_below(op, floor_value, opt) != 0) throw NumericFailure("eigenvalue below the potential floor");
  const std::int64_t n = count_below(op, threshold, opt);
  if (n == 0) return out;

  struct Bracket {
    double lo, hi;
    std::int64_t nlo, nhi;
  };
  std::vector<Bracket> stack{{floor_value, threshold, 0, n}};
  while (!stack.empty()) {
    Bracket br = stack.back();
    stack.pop_back();
    if (br.nhi == br.nlo) continue;
    for (int it = 0; it < 4000; ++it) {
      const double mid = br.lo + 0.5 * (br.hi - br.lo);
      const double width = br.hi - br.lo;
      const double scale = std::max(std::abs(br.lo), std::abs(br.hi));
      const bool narrow = width <= std::max(opt.eig_rtol * scale, opt.eig_atol) || mid <= br.lo || mid >= br.hi;
      if (br.nhi - br.nlo == 1 && narrow) {
        out.push_back({mid, width});
        break;
      }
      if (narrow) {
        // unresolved cluster: report each member at the bracket midpoint
        for (std::int64_t i = br.nlo; i < br.nhi; ++i) out.push_back({mid, width});
        break;
      }
      const std::int64_t nm = count_below(op, mid, opt);
      if (nm == br.nlo) {
        br.lo = mid;
      } else if (nm == br.nhi) {
        br.hi = mid;
      } else {
        stack.push_back({mid, br.hi, nm, br.nhi});
        br.hi = mid;
        br.nhi = nm;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Eigenvalue& x, const Eigenvalue& y) { return x.value < y.value; });
  return out;
}

double moment_from(const std::vector<Eigenvalue>& ev, double gamma, double shift) {
  double sum = 0.0;
  for (const Eigenvalue& e : ev) {
    const double x = -shift - e.value;
    if (x > 0.0) sum += pow0(x, gamma);
  }
  return sum;
}

double moment(const HalflineOperator& op, double gamma, double shift, const SolverOptions& opt) {
  if (!(gamma >= 0.0)) throw InvalidArgument("moment order must be nonnegative");
  if (!(shift >= 0.0)) throw InvalidArgument("shift must be nonnegative");
  if (gamma == 0.0) return static_cast<double>(count_negative(op, shift, opt));
  return moment_from(eigenvalues_below(op, -shift, opt), gamma, shift);
}

}  // namespace arbor
