#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "arbor/bounds.hpp"
#include "arbor/config.hpp"
#include "arbor/corpus.hpp"
#include "arbor/decomposition.hpp"
#include "arbor/expr.hpp"
#include "arbor/fem.hpp"
#include "arbor/ground_state.hpp"
#include "arbor/homogeneous.hpp"
#include "arbor/scenarios.hpp"
#include "arbor/sobolev.hpp"
#include "arbor/verify.hpp"

namespace fs = std::filesystem;
using namespace arbor;

namespace {

enum Exit { kPass = 0, kViolation = 1, kSchema = 2, kNumeric = 3 };

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out;
  int jobs = 1;
};

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

class Csv {
 public:
  Csv(const fs::path& path, const std::string& header) : f_(path) {
    if (!f_) throw std::runtime_error("cannot write " + path.string());
    f_ << header << '\n';
  }
  template <class... T>
  void row(const T&... cells) {
    std::ostringstream s;
    bool first = true;
    ((s << (first ? "" : ",") << cell(cells), first = false), ...);
    f_ << s.str() << '\n';
  }

 private:
  static std::string cell(double x) { return num(x); }
  static std::string cell(std::int64_t x) { return std::to_string(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(const std::string& x) { return x; }
  static std::string cell(const char* x) { return x; }
  std::ofstream f_;
};

const char* kBoundsHeader = "name,lhs,rhs,constant,ratio,satisfied,params,provenance";

void bound_row(Csv& csv, const BoundReport& r) {
  std::string params;
  for (const auto& [k, v] : r.params) params += (params.empty() ? "" : ";") + k + "=" + num(v);
  csv.row(r.name, r.lhs, r.rhs, r.constant, r.ratio, r.satisfied ? "true" : "false", params,
          r.provenance.empty() ? "solver" : r.provenance);
}

// Summary document accumulated by a scenario.
struct Summary {
  Json doc;
  bool pass = true;

  void value(const std::string& key, double v, const char* provenance) {
    doc["results"][key] = {{"value", std::isfinite(v) ? Json(v) : Json(num(v))}, {"provenance", provenance}};
  }
  void assertion(const std::string& name, bool ok, const std::string& detail) {
    doc["assertions"].push_back({{"name", name}, {"pass", ok}, {"detail", detail}});
    pass = pass && ok;
  }
};

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read config " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("config is not valid JSON: ") + e.what());
  }
}

const Json& section(const Json& cfg, const char* name) {
  auto it = cfg.find(name);
  if (it == cfg.end() || !it->is_object()) throw SchemaError(std::string("missing section '") + name + "'");
  return *it;
}

template <class T>
T opt_value(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("scenario.") + key + ": " + e.what());
  }
}

Profile parse_profile(const Json& scn, const char* key) {
  const auto text = opt_value<std::string>(scn, key, "1");
  try {
    return parse_expression(text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("scenario.") + key + ": " + e.what());
  }
}

double parse_q(const Json& scn) {
  if (!scn.contains("q")) return kInf;
  const Json& q = scn.at("q");
  if (q.is_string() && (q == "inf" || q == "infinity")) return kInf;
  if (!q.is_number()) throw SchemaError("scenario.q: number or \"inf\" expected");
  return q.get<double>();
}

// T past the support and away from vertex radii
double oracle_truncation(const TreeDescriptor& tree, const SymmetricPotential& V, double shift) {
  double T = V.support_end() + std::max(5.0, 8.0 / std::sqrt(std::max(shift, 1e-2)));
  for (std::size_t k = 1; k < 200 && tree.radius(k) <= T + 1.0; ++k)
    if (std::abs(tree.radius(k) - T) < 0.05) T = tree.radius(k) + 0.25;
  return T;
}

int run_spectrum(const Json& cfg, const Flags& fl, const fs::path& out, Summary& sum) {
  const auto tree = parse_tree(section(cfg, "tree"));
  const auto V = parse_potential(section(cfg, "potential"));
  const Json scn = cfg.value("scenario", Json::object());
  const double shift = opt_value(scn, "shift", 0.0);
  const double gamma = opt_value(scn, "gamma", 1.0);
  const bool parallel = fl.jobs != 1;

  const auto spec = tree_spectrum(tree, V, -shift, SolverOptions{}, parallel);
  Csv csv(out / "eigenvalues.csv", "component_k,multiplicity,index,eigenvalue,bracket_width,provenance");
  std::int64_t count = 0;
  for (const auto& c : spec) {
    for (std::size_t i = 0; i < c.eigenvalues.size(); ++i)
      csv.row(c.k, c.multiplicity, i, c.eigenvalues[i].value, c.eigenvalues[i].width, "solver");
    count += c.multiplicity * std::int64_t(c.eigenvalues.size());
  }
  sum.value("count", double(count), "solver");
  sum.value("moment", tree_moment_from(spec, gamma, shift), "solver");

  if (opt_value(scn, "oracle", true)) {
    const double T = opt_value(scn, "truncation", oracle_truncation(tree, V, shift));
    const auto oc = certified_tree_count(tree, V, -shift, T);
    sum.value("oracle_truncation", T, "oracle");
    if (oc.certified) {
      sum.value("oracle_count", double(oc.value), "oracle");
      sum.assertion("decomposition equals direct oracle", oc.value == count,
                    std::to_string(count) + " vs " + std::to_string(oc.value));
    } else {
      sum.doc["notes"].push_back("oracle truncations disagree; no comparison made");
    }
  }
  return sum.pass ? kPass : kViolation;
}

int run_bound(const Json& cfg, const Flags& fl, const fs::path& out, Summary& sum) {
  const auto tree = parse_tree(section(cfg, "tree"));
  const auto V = parse_potential(section(cfg, "potential"));
  const Json& scn = section(cfg, "scenario");
  const auto kind = opt_value<std::string>(scn, "bound", "clr");
  const double slack = fl.tol.value_or(1e-9);
  const Weight g0(branching_function(tree, 0));
  Csv csv(out / "bounds.csv", kBoundsHeader);
  BoundReport r;
  if (kind == "clr") {
    const double q = parse_q(scn);
    const double p = std::isinf(q) ? 1.0 : q / (q - 2.0);
    const Profile w = parse_profile(scn, "w");
    const Extended M = clr_M(g0, w, q);
    if (M.is_infinite()) throw DivergentIntegral("M is infinite for this weight");
    const double C = clr_bound(M.value(), p).second;
    r = BoundReport::make("tree-clr", double(tree_count(tree, V)), C * weighted_rhs(g0, V, p, w, Mode::Tree), C, slack);
    r.params = {{"p", p}, {"q", q}, {"M", M.value()}};
  } else if (kind == "lieb-thirring") {
    const double gamma = opt_value(scn, "gamma", 0.5);
    const auto cc = classical_constants(gamma);
    const double C = cc.ek_multiplier * cc.L_cl;
    r = BoundReport::make("lieb-thirring", tree_moment(tree, V, gamma),
                          C * weighted_rhs(g0, V, gamma + 0.5, [](double) { return 1.0; }, Mode::Tree), C, slack);
    r.params = {{"gamma", gamma}};
  } else if (kind == "lt-ratio") {
    // constants are not explicit here: the ratio is the measured constant
    const double gamma = opt_value(scn, "gamma", 1.0), a = opt_value(scn, "a", 0.0), d = opt_value(scn, "d", 3.0);
    r = BoundReport::make("lt-ratio", tree_moment(tree, V, gamma), lt_rhs(tree, V, gamma, a, d), 1.0, kInf);
    r.params = {{"gamma", gamma}, {"a", a}, {"d", d}};
  } else {
    throw SchemaError("scenario.bound: expected clr, lieb-thirring or lt-ratio");
  }
  r.provenance = "solver";
  bound_row(csv, r);
  sum.value("lhs", r.lhs, "solver");
  sum.value("rhs", r.rhs, "closed-form");
  sum.value("ratio", r.ratio, "solver");
  sum.assertion(r.name, r.satisfied, num(r.lhs) + " <= " + num(r.rhs));
  if (!r.satisfied) sum.doc["violations"].push_back({{"tree", to_json(tree)}, {"potential", to_json(V)}});
  return sum.pass ? kPass : kViolation;
}

int run_verify(const Json& cfg, const Flags& fl, const fs::path& out, Summary& sum) {
  const Json scn = cfg.value("scenario", Json::object());
  VerifyOptions opt;
  opt.seed = fl.seed.value_or(opt_value<std::uint64_t>(scn, "seed", opt.seed));
  sum.doc["seed"] = opt.seed;
  opt.instances = opt_value(scn, "instances", 200);
  opt.min_certified = std::min(opt.min_certified, opt.instances);
  opt.trials = opt_value(scn, "trials", opt.trials);
  opt.parallel = fl.jobs != 1;
  const auto ids = opt_value(scn, "criteria", std::vector<int>{});
  for (int id : ids)
    if (id < 1 || id > 11) throw SchemaError("scenario.criteria: ids run from 1 to 11");

  Csv csv(out / "bounds.csv", kBoundsHeader);
  for (const auto& r : verify_all(opt, ids)) {
    for (const auto& b : r.reports) bound_row(csv, b);
    for (const auto& [k, v] : r.metrics) sum.value(std::to_string(r.id) + "." + k, v, "solver");
    sum.assertion(std::to_string(r.id) + " " + r.name, r.pass, r.summary);
    for (const auto& v : r.violations) sum.doc["violations"].push_back({{"criterion", r.id}, {"instance", v}});
  }
  return sum.pass ? kPass : kViolation;
}

int run_homogeneous(const Json& cfg, const Flags& fl, const fs::path& out, Summary& sum) {
  const Json& scn = section(cfg, "scenario");
  int b = opt_value(scn, "branch", 0);
  if (b == 0 && cfg.contains("tree")) {
    const auto tree = parse_tree(cfg["tree"]);
    if (tree.tail().kind != TailRule::Kind::Homogeneous || !tree.prefix().empty() || tree.tail().edge_length != 1.0)
      throw SchemaError("homogeneous scenario needs a homogeneous tree with unit edges");
    b = tree.tail().branch;
  }
  if (b < 2) throw SchemaError("scenario.branch: integer >= 2 required");
  const auto V = parse_potential(section(cfg, "potential"));
  const double tol = fl.tol.value_or(1e-12);

  sum.value("lambda_b", lambda_b(b), "closed-form");
  const auto gs = check_ground_state(b);
  sum.value("ode_residual", gs.ode_residual, "closed-form");
  sum.value("jump_residual", gs.jump_residual, "closed-form");
  sum.value("envelope_lo", gs.envelope_lo, "closed-form");
  sum.value("envelope_hi", gs.envelope_hi, "closed-form");
  sum.assertion("ground state residuals", gs.ode_residual <= tol && gs.jump_residual <= tol,
                num(std::max(gs.ode_residual, gs.jump_residual)));
  sum.assertion("ground state envelope", gs.envelope_lo > 0 && std::isfinite(gs.envelope_hi) && gs.positive,
                "[" + num(gs.envelope_lo) + ", " + num(gs.envelope_hi) + "]");

  const auto n1 = homogeneous_count_below_threshold(b, V);
  const auto n2 = homogeneous_count_shifted(b, V, 1e-9);
  sum.value("count_gsr", double(n1), "solver");
  sum.value("count_shifted", double(n2), "solver");
  sum.assertion("two-route count", n1 == n2, std::to_string(n1) + " vs " + std::to_string(n2));

  const auto clr = homo_clr_bound(b, V, parse_profile(scn, "w"), parse_q(scn));
  Csv csv(out / "bounds.csv", kBoundsHeader);
  bound_row(csv, clr.report);
  sum.value("M", clr.M, "closed-form");
  sum.value("measured_constant", clr.report.ratio, "solver");
  sum.value("envelope_prefactor", clr.envelope_prefactor, "closed-form");
  sum.assertion("homogeneous CLR within the envelope constant", clr.report.ratio <= clr.envelope_prefactor,
                num(clr.report.ratio) + " <= " + num(clr.envelope_prefactor));
  (void)fl;
  return sum.pass ? kPass : kViolation;
}

int run_sobolev(const Json& cfg, const Flags& fl, const fs::path& out, Summary& sum) {
  const Json& scn = section(cfg, "scenario");
  const std::uint64_t seed = fl.seed.value_or(opt_value<std::uint64_t>(scn, "seed", 1));
  sum.doc["seed"] = seed;
  const int trials = opt_value(scn, "trials", 500);
  const double slack = fl.tol.value_or(1e-9);
  Json cells = scn.value("cells", Json::array());
  if (cells.empty()) cells.push_back({{"q", scn.value("q", Json(kInf))}, {"beta", scn.value("beta", 0.5)}, {"d", scn.value("d", 3.0)}});

  Csv csv(out / "sweep.csv", "point,q,beta,d,lhs,rhs,ratio,constant,provenance");
  std::size_t idx = 0;
  for (const auto& c : cells) {
    const double q = parse_q(c), beta = opt_value(c, "beta", 0.5), d = opt_value(c, "d", 3.0);
    const auto K = sobolev_constant(q, beta, d);
    std::mt19937_64 rng(seed * 1000003ULL + idx);
    SobolevCheck worst;
    for (int i = 0; i < trials; ++i) {
      const auto chk = check_sobolev(random_trial(rng), q, beta, d);
      if (chk.ratio >= worst.ratio) worst = chk;
    }
    csv.row(idx, q, beta, d, worst.lhs, worst.rhs, worst.ratio, K.value, "closed-form:" + K.source);
    sum.assertion("cell " + std::to_string(idx), worst.ratio <= 1.0 + slack, "worst ratio " + num(worst.ratio));
    ++idx;
  }
  if (scn.contains("gamma") && scn.contains("a")) {
    const auto D = duality_map(scn["gamma"].get<double>(), scn["a"].get<double>(), scn.value("d", 3.0));
    sum.value("p", D.p, "closed-form");
    sum.value("q", D.q, "closed-form");
    sum.value("beta", D.beta, "closed-form");
    sum.value("theta", D.theta, "closed-form");
    sum.doc["region"] = region_name(D.region);
    if (lowest_admissible(D.gamma, D.a, D.d)) {
      const auto ob = one_bound_state_bound(D.gamma, D.a, D.d);
      sum.value("one_bound_state_C", ob.C, "paper-constant");
    }
  }
  return sum.pass ? kPass : kViolation;
}

std::vector<double> alpha_grid(const Json& scn) {
  const auto grid = opt_value(scn, "alpha_grid", std::vector<double>{});
  if (grid.empty()) throw SchemaError("scenario.alpha_grid: non-empty list required");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw SchemaError("scenario.alpha_grid must be increasing");
  return grid;
}

int run_weyl(const Json& cfg, const Flags& fl, const fs::path& out, Summary& sum) {
  const auto tree = parse_tree(section(cfg, "tree"));
  const auto V = parse_potential(section(cfg, "potential"));
  const Json& scn = section(cfg, "scenario");
  const double gamma = opt_value(scn, "gamma", 1.0);
  const auto s = weyl_sweep(tree, V, gamma, alpha_grid(scn), fl.jobs != 1);
  Csv csv(out / "sweep.csv", "point,alpha,lhs,rhs,ratio,flag,provenance");
  std::size_t i = 0;
  for (const auto& p : s.points) csv.row(i++, p.alpha, p.moment, p.semiclassical, p.ratio, p.degenerate ? "alpha=0" : "", "solver");
  sum.value("last_ratio", s.last_ratio, "solver");
  sum.doc["monotone"] = s.monotone;
  const double tol = fl.tol.value_or(opt_value(scn, "tolerance", 0.15));
  sum.assertion("Weyl ratio near 1 at the largest coupling", std::abs(s.last_ratio - 1.0) <= tol, num(s.last_ratio));
  return sum.pass ? kPass : kViolation;
}

int run_weak(const Json& cfg, const Flags& fl, const fs::path& out, Summary& sum) {
  const auto tree = parse_tree(section(cfg, "tree"));
  const auto V = parse_potential(section(cfg, "potential"));
  const Json& scn = section(cfg, "scenario");
  const double d = opt_value(scn, "d", 1.0);
  if (!(d >= 1.0 && d < 2.0)) throw SchemaError("scenario.d: weak coupling needs 1 <= d < 2");
  const auto f = weak_coupling_fit(tree, V, d, alpha_grid(scn), fl.jobs != 1);
  Csv csv(out / "sweep.csv", "point,alpha,lhs,rhs,ratio,count,used,provenance");
  std::size_t i = 0;
  for (const auto& p : f.points) {
    const double scale = std::pow(p.alpha, f.expected);
    csv.row(i++, p.alpha, -p.lambda1, scale, -p.lambda1 / scale, p.count, p.used ? "true" : "false", "solver");
  }
  sum.value("slope", f.slope, "solver");
  sum.value("expected", f.expected, "closed-form");
  sum.value("points_used", double(f.used), "solver");
  const double tol = fl.tol.value_or(opt_value(scn, "tolerance", 0.5));
  sum.assertion("weak-coupling exponent", f.used >= 2 && std::abs(f.slope - f.expected) <= tol,
                num(f.slope) + " vs " + num(f.expected));
  return sum.pass ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negative spectrum of Schrodinger operators on regular metric trees"};
  app.require_subcommand(1);
  Flags fl;
  std::uint64_t seed = 0;
  double tol = 0.0;
  app.add_option("--config", fl.config, "JSON configuration document");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized scenarios");
  auto* tol_opt = app.add_option("--tol", tol, "tolerance override for the scenario's assertion");
  app.add_option("--out", fl.out, "output directory");
  app.add_option("--jobs", fl.jobs, "OpenMP threads; 1 runs the serial path")->check(CLI::PositiveNumber);
  const std::vector<std::pair<std::string, int (*)(const Json&, const Flags&, const fs::path&, Summary&)>> scenarios = {
      {"spectrum", run_spectrum}, {"bound", run_bound},     {"verify", run_verify},       {"homogeneous", run_homogeneous},
      {"sobolev", run_sobolev},   {"weyl", run_weyl},       {"weak-coupling", run_weak}};
  for (const auto& [name, fn] : scenarios) app.add_subcommand(name, "run the " + name + " scenario")->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kSchema;
  }
  if (seed_opt->count()) fl.seed = seed;
  if (tol_opt->count()) fl.tol = tol;
  omp_set_num_threads(fl.jobs);

  const std::string name = app.get_subcommands().front()->get_name();
  Summary sum;
  sum.doc["scenario"] = name;
  sum.doc["seed"] = fl.seed ? Json(*fl.seed) : Json(nullptr);
  sum.doc["assertions"] = Json::array();
  sum.doc["violations"] = Json::array();
  int rc = kPass;
  try {
    const Json cfg = load_config(fl.config);
    if (cfg.contains("scenario") && cfg["scenario"].contains("name") && cfg["scenario"]["name"] != name)
      throw SchemaError("config scenario.name does not match the subcommand");
    if (fl.out.empty()) fl.out = cfg.contains("output") ? cfg["output"].value("dir", "out") : "out";
    const fs::path out(fl.out);
    fs::create_directories(out);
    for (const auto& [n, fn] : scenarios)
      if (n == name) rc = fn(cfg, fl, out, sum);
    sum.doc["pass"] = sum.pass;
    std::ofstream(out / "summary.json") << sum.doc.dump(2) << '\n';
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const RegionError& e) {
    std::cerr << "parameters outside the valid region: " << e.what() << '\n';
    return kSchema;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kSchema;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  for (const auto& a : sum.doc["assertions"])
    std::cout << (a["pass"].get<bool>() ? "PASS  " : "FAIL  ") << a["name"].get<std::string>() << ": "
              << a["detail"].get<std::string>() << '\n';
  return rc;
}
