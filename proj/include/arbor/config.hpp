#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "arbor/halfline.hpp"
#include "arbor/tree.hpp"

namespace arbor {

// Malformed or incomplete configuration document.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

// tree: {"generator": "homogeneous"|"geometric"|"halfline"|"explicit", ...}
TreeDescriptor parse_tree(const Json& j);
// potential: {"kind": "piecewise", "breakpoints": [...], "values": [...]}
//         or {"kind": "expr", "expr": "...", "support": [lo, hi], "kinks": [...]}
SymmetricPotential parse_potential(const Json& j);
// weight: {"kind": "step", "breaks", "values", "tail": {...}} or
//         {"kind": "power", "exponent", "offset", "breaks", "factors"}
Weight parse_weight(const Json& j);

Json to_json(const TreeDescriptor& tree);
// Piecewise-constant potentials only; profiles are described by their samples.
Json to_json(const SymmetricPotential& V);
Json to_json(const Weight& g);

}  // namespace arbor
