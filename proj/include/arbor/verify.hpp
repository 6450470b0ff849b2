#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arbor/bounds.hpp"
#include "arbor/config.hpp"

namespace arbor {

struct VerifyOptions {
  std::uint64_t seed = 20261016;
  int instances = 300;     // randomized instances per campaign
  int min_certified = 200; // oracle campaigns need at least this many certified cases
  int trials = 500;        // trial functions per Sobolev cell
  bool parallel = true;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = true;
  std::string summary;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<BoundReport> reports;  // one row per evaluated inequality instance
  std::vector<Json> violations;      // replayable descriptions of failing instances
  double seconds = 0.0;
};

CriterionResult verify_tree_oracle(const VerifyOptions& opt);
CriterionResult verify_halfline_oracle(const VerifyOptions& opt);
CriterionResult verify_sharp_clr(const VerifyOptions& opt);
CriterionResult verify_tree_clr(const VerifyOptions& opt);
CriterionResult verify_lieb_thirring(const VerifyOptions& opt);
CriterionResult verify_weyl(const VerifyOptions& opt);
CriterionResult verify_weak_coupling(const VerifyOptions& opt);
CriterionResult verify_homogeneous(const VerifyOptions& opt);
CriterionResult verify_sobolev(const VerifyOptions& opt);
CriterionResult verify_sandwich(const VerifyOptions& opt);
CriterionResult verify_one_bound_state(const VerifyOptions& opt);

// ids 1..11; an empty selection runs everything
std::vector<CriterionResult> verify_all(const VerifyOptions& opt, const std::vector<int>& ids = {});

}  // namespace arbor
