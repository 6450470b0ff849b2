#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "arbor/halfline.hpp"
#include "arbor/trial.hpp"
#include "arbor/tree.hpp"

namespace arbor {

// Random potential corpus: piecewise constant, at most max_pieces pieces,
// depths in [depth_lo, depth_hi], support inside [0, support_hi].
struct CorpusSpec {
  int max_pieces = 6;
  double depth_lo = 0.1;
  double depth_hi = 10.0;
  double support_hi = 8.0;
};

SymmetricPotential random_potential(std::mt19937_64& rng, const CorpusSpec& spec = {});

struct TreeInstance {
  TreeDescriptor tree;
  SymmetricPotential V;
  double shift = 0.0;       // count below -shift
  double truncation = 0.0;  // for the direct oracle: past supp V, before the fourth vertex
};
// At most three explicit generations with b in {2, 3}; V lives inside them.
TreeInstance random_tree_instance(std::mt19937_64& rng);

struct HalflineInstance {
  HalflineOperator op;
  double E = 0.0;
};
// Random step weight (recurrent, exponential or power-like tail), random
// endpoint and energy 0 (transient weights only) or a negative shift.
HalflineInstance random_halfline_instance(std::mt19937_64& rng, const CorpusSpec& spec = {});

// g = m(t) (1+t)^{d-1} with a piecewise-constant m in [1, ratio].
Weight random_power_weight(std::mt19937_64& rng, double d, double ratio);

// Piecewise linear, compactly supported, random scale.
TrialFunction random_trial(std::mt19937_64& rng);

// Batch kernels: one task per instance, OpenMP when parallel is set. With
// parallel = false they are the serial reference.
std::vector<std::int64_t> batch_tree_counts(const std::vector<TreeInstance>& in, bool parallel);
std::vector<std::int64_t> batch_halfline_counts(const std::vector<HalflineInstance>& in, bool parallel);
std::vector<double> batch_tree_moments(const std::vector<TreeInstance>& in, double gamma, bool parallel);

}  // namespace arbor
