#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "arbor/potential.hpp"
#include "arbor/trial.hpp"
#include "arbor/tree.hpp"
#include "arbor/weight.hpp"

namespace arbor {

using Profile = std::function<double(double)>;

struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double ratio = 0.0;
  bool satisfied = true;
  std::map<std::string, double> params;
  std::string provenance;  // solver | oracle | closed-form | paper-constant

  static BoundReport make(std::string name, double lhs, double rhs, double constant, double slack = 1e-9);
};

enum class Mode { Halfline, Tree };

// int V_+^p w dt (halfline) or int_Gamma V_+^p w dx = int V_+^p w g dt (tree).
double weighted_rhs(const Weight& g, const SymmetricPotential& V, double p, const Profile& w, Mode mode);
// Tree form: p = gamma + (1+a)/2 and w = g_0^{a/(d-1)}.
double lt_rhs(const TreeDescriptor& tree, const SymmetricPotential& V, double gamma, double a, double d);
// Half-line form with weight (1+t)^a.
double lt_rhs_halfline(const SymmetricPotential& V, double gamma, double a);

// sup_t (int_0^t g^{q/2} w^{-(q-2)/2})^{2/q} int_t^inf 1/g, q = inf allowed;
// the Dirichlet variant swaps the two intervals. Throws DivergentIntegral for
// recurrent g.
Extended clr_M(const Weight& g, const Profile& w, double q, bool dirichlet = false);
// (M^p, (1+p')^{p-1} (1+1/p')^p M^p); p = 1 gives (M, M).
std::pair<double, double> clr_bound(double M, double p);

double sharp_clr_rhs(const Weight& g, const SymmetricPotential& V);
double consequence_clr_rhs(const Weight& g, const SymmetricPotential& V);

struct HardyResult {
  double lhs = 0.0;  // (int |w u|^q)^{2/q}, or sup |w u|^2
  double rhs = 0.0;  // int g |u'|^2
  Extended T;
  double S_lower = 0.0, S_upper = 0.0;
  bool ok = true;
};
// Weighted Hardy inequality with v^2 = g.
HardyResult hardy_check(const TrialFunction& u, const Profile& w, const Weight& g, double q);

struct ClassicalConstants {
  double L_cl;
  double ek_multiplier;  // 4 for gamma >= 1/2, 2 for gamma >= 3/2
};
double classical_lt_constant(double gamma);
ClassicalConstants classical_constants(double gamma);

}  // namespace arbor
