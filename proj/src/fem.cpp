#include "arbor/fem.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>

namespace arbor {

namespace {

constexpr double kGaussX[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr double kGaussW[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

struct ElementForms {
  double k11, k12, k22;  // stiffness
  double m11, m12, m22;  // mass
  double p11, p12, p22;  // potential
};

template <class G, class Q>
ElementForms element(double a, double b, const G& g, const Q& v) {
  ElementForms e{};
  const double h = b - a;
  double gk = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double x = 0.5 * (a + b) + 0.5 * h * kGaussX[i];
    const double w = 0.5 * h * kGaussW[i];
    const double gx = g(x), vx = v(x);
    const double pa = (b - x) / h, pb = (x - a) / h;
    gk += w * gx;
    e.m11 += w * gx * pa * pa;
    e.m12 += w * gx * pa * pb;
    e.m22 += w * gx * pb * pb;
    e.p11 += w * vx * gx * pa * pa;
    e.p12 += w * vx * gx * pa * pb;
    e.p22 += w * vx * gx * pb * pb;
  }
  e.k11 = gk / (h * h);
  e.k12 = -gk / (h * h);
  e.k22 = gk / (h * h);
  return e;
}

double nonzero(double d) { return d == 0.0 ? -DBL_MIN : d; }

// Tridiagonal forms on a half-line mesh.
struct Chain {
  std::vector<ElementForms> el;  // el[i] joins node i and i+1

  std::int64_t negatives(double E, bool drop_first, bool drop_last, double robin) const {
    const std::size_t n = el.size() + 1;
    auto diag = [&](std::size_t i) {
      double d = 0.0;
      if (i > 0) d += el[i - 1].k22 - el[i - 1].p22 - E * el[i - 1].m22;
      if (i + 1 < n) d += el[i].k11 - el[i].p11 - E * el[i].m11;
      if (i + 1 == n) d += robin;
      return d;
    };
    auto off = [&](std::size_t i) { return el[i].k12 - el[i].p12 - E * el[i].m12; };  // (i, i+1)
    const std::size_t first = drop_first ? 1 : 0;
    const std::size_t last = drop_last ? n - 2 : n - 1;
    std::int64_t neg = 0;
    double d = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
      double a = diag(i);
      if (i > first) {
        const double o = off(i - 1);
        a -= o * o / d;
      }
      d = nonzero(a);
      if (d < 0.0) ++neg;
    }
    return neg;
  }
};

double background_c(const HalflineOperator& op) {
  if (!op.background_dimension) return 0.0;
  const double d = *op.background_dimension;
  return (d - 1.0) * (d - 3.0) / 4.0;
}

Chain assemble_chain(const HalflineOperator& op, const std::vector<double>& nodes) {
  Chain c;
  c.el.reserve(nodes.size());
  const double bc = background_c(op);
  auto g = [&](double x) { return op.weight(x); };
  auto v = [&](double x) { return op.potential(x) - bc / ((1.0 + x) * (1.0 + x)); };
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) c.el.push_back(element(nodes[i], nodes[i + 1], g, v));
  return c;
}

double potential_end(const HalflineOperator& op) {
  if (op.potential.is_zero()) return op.left;
  return std::max(op.left, op.potential.support_end());
}

double extension_length(double E) {
  if (E < 0.0) return std::clamp(12.0 / std::sqrt(-E), 4.0, 400.0);
  return 10.0;
}

void push_uniform(std::vector<double>& out, double a, double b, double density) {
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) * density - 1e-9)));
  for (std::size_t i = 1; i <= n; ++i) out.push_back(i == n ? b : a + (b - a) * double(i) / double(n));
}

std::int64_t bisect_count(const std::function<std::int64_t(double)>& count, double lo, double hi, double rtol,
                          std::vector<double>& out) {
  const std::int64_t nhi = count(hi);
  struct Br {
    double lo, hi;
    std::int64_t nlo, nhi;
  };
  std::vector<Br> st{{lo, hi, 0, nhi}};
  while (!st.empty()) {
    Br b = st.back();
    st.pop_back();
    if (b.nlo == b.nhi) continue;
    for (;;) {
      const double mid = b.lo + 0.5 * (b.hi - b.lo);
      const double scale = std::max(std::abs(b.lo), std::abs(b.hi));
      if (b.hi - b.lo <= rtol * scale || mid <= b.lo || mid >= b.hi) {
        for (std::int64_t i = b.nlo; i < b.nhi; ++i) out.push_back(mid);
        break;
      }
      const std::int64_t nm = count(mid);
      if (nm == b.nlo) {
        b.lo = mid;
      } else if (nm == b.nhi) {
        b.hi = mid;
      } else {
        st.push_back({mid, b.hi, nm, b.nhi});
        b.hi = mid;
        b.nhi = nm;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return nhi;
}

}  // namespace

std::vector<double> halfline_mesh(const HalflineOperator& op, double T, const FemOptions& opt) {
  const double left = op.left;
  if (!(T > left)) throw InvalidArgument("truncation must exceed the left endpoint");
  std::vector<double> fixed{left, T};
  for (double t = op.weight.next_break(left); t < T; t = op.weight.next_break(t)) fixed.push_back(t);
  for (double t = op.potential.next_break(left); t < T; t = op.potential.next_break(t)) fixed.push_back(t);
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  const double TV = potential_end(op);
  std::vector<double> nodes{left};
  double h = 1.0 / opt.density;
  for (std::size_t i = 0; i + 1 < fixed.size(); ++i) {
    const double a = fixed[i], b = fixed[i + 1];
    if (b <= TV + 1e-12) {
      push_uniform(nodes, a, b, opt.density);
      continue;
    }
    double x = a;
    while (x < b) {
      double step = std::min(h, b - x);
      if (b - x - step < 0.3 * h) step = b - x;
      x = (step == b - x) ? b : x + step;
      nodes.push_back(x);
      h = std::min(h * opt.tail_grading, opt.max_element);
    }
  }
  return nodes;
}

OracleCount oracle_count(const HalflineOperator& op, double E, const FemOptions& opt) {
  if (E > 0.0) throw InvalidArgument("the finite element oracle counts below nonpositive energies");
  const double TV = potential_end(op);
  const double ext = opt.truncation > 0.0 ? opt.truncation - TV : extension_length(E);
  const bool exterior = E == 0.0 && !op.background_dimension && op.weight.transient();
  OracleCount r;
  for (int attempt = 0;; ++attempt) {
    const double T = TV + ext * std::pow(2.0, attempt);
    const std::vector<double> nodes = opt.nodes.empty() ? halfline_mesh(op, T, opt) : opt.nodes;
    const Chain c = assemble_chain(op, nodes);
    const bool dl = op.endpoint == Endpoint::Dirichlet;
    r.truncation = nodes.back();
    r.nodes = nodes.size();
    r.dirichlet = c.negatives(E, dl, true, 0.0);
    r.neumann = c.negatives(E, dl, false, 0.0);
    if (exterior) {
      const double robin = 1.0 / op.weight.tail_integral(nodes.back()).value();
      r.exterior = c.negatives(E, dl, false, robin);
      r.agree = true;
      r.value = *r.exterior;
    } else {
      r.agree = r.dirichlet == r.neumann;
      r.value = r.dirichlet;
    }
    if (r.agree || !opt.nodes.empty() || attempt >= opt.max_doublings) return r;
  }
}

OracleSpectrum oracle_spectrum(const HalflineOperator& op, double threshold, const FemOptions& opt, double rtol) {
  OracleSpectrum s;
  s.count = oracle_count(op, threshold, opt);
  FemOptions fixed = opt;
  if (fixed.nodes.empty()) fixed.nodes = halfline_mesh(op, s.count.truncation, opt);
  const Chain c = assemble_chain(op, fixed.nodes);
  const bool dl = op.endpoint == Endpoint::Dirichlet;
  auto count = [&](double E) { return c.negatives(E, dl, true, 0.0); };
  const double lo = -op.sup_effective_potential() * (1.0 + 1e-12) - 1e-300;
  if (threshold > lo) bisect_count(count, lo, threshold, rtol, s.eigenvalues);
  return s;
}

CertifiedCount certified_count(const HalflineOperator& op, double E, const std::vector<double>& densities,
                               FemOptions base) {
  CertifiedCount cc;
  for (double d : densities) {
    base.density = d;
    cc.levels.push_back(oracle_count(op, E, base));
    const std::size_t n = cc.levels.size();
    if (n >= 2) {
      const OracleCount &a = cc.levels[n - 2], &b = cc.levels[n - 1];
      if (a.agree && b.agree && a.value == b.value) {
        cc.certified = true;
        cc.value = b.value;
        cc.density = d;
        return cc;
      }
    }
  }
  return cc;
}

std::vector<double> tree_radial_nodes(const TreeDescriptor& tree, const SymmetricPotential& V, double T,
                                      double density) {
  std::vector<double> fixed{0.0, T};
  for (std::size_t k = 1; tree.radius(k) < T; ++k) fixed.push_back(tree.radius(k));
  for (double t = V.next_break(0.0); t < T; t = V.next_break(t)) fixed.push_back(t);
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  std::vector<double> nodes{0.0};
  for (std::size_t i = 0; i + 1 < fixed.size(); ++i) push_uniform(nodes, fixed[i], fixed[i + 1], density);
  return nodes;
}

TreeMesh build_tree_mesh(const TreeDescriptor& tree, const SymmetricPotential& V, double T,
                         const TreeOracleOptions& opt) {
  for (std::size_t k = 1; tree.radius(k) <= T; ++k)
    if (tree.radius(k) == T) throw InvalidArgument("truncation radius coincides with a vertex");
  const double estimate = opt.density * edge_length_below(tree, T);
  if (estimate > double(opt.max_nodes)) throw NumericFailure("tree mesh exceeds the node budget");
  TreeMesh m;
  m.radii = tree_radial_nodes(tree, V, T, opt.density);
  m.parent.push_back(-1);
  m.level.push_back(0);
  std::size_t begin = 0, end = 1;  // unknowns of the previous level
  std::size_t k = 1;               // next vertex generation
  for (std::size_t i = 1; i < m.radii.size(); ++i) {
    const double r = m.radii[i - 1];
    int children = 1;
    while (tree.radius(k) < r) ++k;
    if (r > 0.0 && tree.radius(k) == r) children = tree.branch(k);
    for (std::size_t j = begin; j < end; ++j)
      for (int c = 0; c < children; ++c) {
        m.parent.push_back(static_cast<std::int32_t>(j));
        m.level.push_back(static_cast<std::int32_t>(i));
      }
    begin = end;
    end = m.parent.size();
    if (end > opt.max_nodes) throw NumericFailure("tree mesh exceeds the node budget");
  }
  return m;
}

namespace {

struct TreeForms {
  TreeMesh mesh;
  std::vector<ElementForms> el;  // el[i] joins radial level i-1 and i (el[0] unused)
  std::vector<std::int32_t> nchild;
  double robin = 0.0;

  std::int64_t negatives(double E, bool drop_leaves, bool with_robin) const {
    const std::size_t n = mesh.parent.size();
    const auto L = static_cast<std::int32_t>(mesh.radii.size() - 1);
    std::vector<double> diag(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::int32_t l = mesh.level[j];
      double d = 0.0;
      if (l > 0) d += el[l].k22 - el[l].p22 - E * el[l].m22;
      if (l < L) d += nchild[j] * (el[l + 1].k11 - el[l + 1].p11 - E * el[l + 1].m11);
      if (l == L && with_robin) d += robin;
      diag[j] = d;
    }
    std::int64_t neg = 0;
    for (std::size_t j = n; j-- > 0;) {
      const std::int32_t l = mesh.level[j];
      if (drop_leaves && l == L) continue;
      const double d = nonzero(diag[j]);
      if (d < 0.0) ++neg;
      if (mesh.parent[j] >= 0) {
        const double o = el[l].k12 - el[l].p12 - E * el[l].m12;
        diag[mesh.parent[j]] -= o * o / d;
      }
    }
    return neg;
  }
};

TreeForms assemble_tree(const TreeDescriptor& tree, const SymmetricPotential& V, double T,
                        const TreeOracleOptions& opt) {
  TreeForms f;
  f.mesh = build_tree_mesh(tree, V, T, opt);
  f.el.resize(f.mesh.radii.size());
  auto one = [](double) { return 1.0; };
  auto v = [&](double x) { return V(x); };
  for (std::size_t i = 1; i < f.mesh.radii.size(); ++i) f.el[i] = element(f.mesh.radii[i - 1], f.mesh.radii[i], one, v);
  f.nchild.assign(f.mesh.parent.size(), 0);
  for (std::int32_t p : f.mesh.parent)
    if (p >= 0) ++f.nchild[p];
  const StepWeight g0 = branching_function(tree, 0);
  if (g0.transient()) f.robin = 1.0 / g0.scaled_tail_integral(T);
  return f;
}

}  // namespace

OracleCount direct_tree_oracle(const TreeDescriptor& tree, const SymmetricPotential& V, double E, double T,
                               const TreeOracleOptions& opt) {
  if (E > 0.0) throw InvalidArgument("the tree oracle counts below nonpositive energies");
  const TreeForms f = assemble_tree(tree, V, T, opt);
  OracleCount r;
  r.truncation = T;
  r.nodes = f.mesh.parent.size();
  r.dirichlet = f.negatives(E, true, false);
  r.neumann = f.negatives(E, false, false);
  if (E == 0.0 && f.robin > 0.0) {
    r.exterior = f.negatives(E, false, true);
    r.agree = true;
    r.value = *r.exterior;
  } else {
    r.agree = r.dirichlet == r.neumann;
    r.value = r.dirichlet;
  }
  return r;
}

std::vector<double> direct_tree_eigenvalues(const TreeDescriptor& tree, const SymmetricPotential& V,
                                            double threshold, double T, const TreeOracleOptions& opt,
                                            double rtol) {
  const TreeForms f = assemble_tree(tree, V, T, opt);
  std::vector<double> out;
  const double lo = -V.sup_positive() * (1.0 + 1e-12) - 1e-300;
  if (threshold > lo) bisect_count([&](double E) { return f.negatives(E, true, false); }, lo, threshold, rtol, out);
  return out;
}

CertifiedCount certified_tree_count(const TreeDescriptor& tree, const SymmetricPotential& V, double E, double T,
                                    const std::vector<double>& densities) {
  CertifiedCount cc;
  for (double d : densities) {
    TreeOracleOptions o;
    o.density = d;
    cc.levels.push_back(direct_tree_oracle(tree, V, E, T, o));
    const std::size_t n = cc.levels.size();
    if (n >= 2) {
      const OracleCount &a = cc.levels[n - 2], &b = cc.levels[n - 1];
      if (a.agree && b.agree && a.value == b.value) {
        cc.certified = true;
        cc.value = b.value;
        cc.density = d;
        return cc;
      }
    }
  }
  return cc;
}

}  // namespace arbor
