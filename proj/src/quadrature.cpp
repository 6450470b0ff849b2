#include "arbor/quadrature.hpp"

#include <cmath>

#include "arbor/core.hpp"

namespace arbor {

namespace {

constexpr double kX[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                          0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWK[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWG[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void gk15(const std::function<double(double)>& f, double a, double b, double& result, double& error) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWK[7], g = fc * kWG[3];
  for (int i = 0; i < 7; ++i) {
    const double x = h * kX[i];
    const double s = f(c - x) + f(c + x);
    k += kWK[i] * s;
    if (i % 2 == 1) g += kWG[i / 2] * s;
  }
  result = k * h;
  error = std::abs((k - g) * h);
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole, double err, double tol,
             int depth) {
  if (err <= tol || depth <= 0 || b - a <= 1e-15 * (std::abs(a) + std::abs(b))) return whole;
  const double m = 0.5 * (a + b);
  double l, el, r, er;
  gk15(f, a, m, l, el);
  gk15(f, m, b, r, er);
  return adapt(f, a, m, l, el, 0.5 * tol, depth - 1) + adapt(f, m, b, r, er, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rtol, double atol) {
  if (b == a) return 0.0;
  if (b < a) return -integrate(f, b, a, rtol, atol);
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("integrate needs a finite interval");
  double whole, err;
  gk15(f, a, b, whole, err);
  const double tol = std::max(atol, rtol * std::abs(whole));
  return adapt(f, a, b, whole, err, tol, 40);
}

double integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& breaks, double rtol,
                        double atol) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] > breaks[i]) sum += integrate(f, breaks[i], breaks[i + 1], rtol, atol);
  return sum;
}

}  // namespace arbor
