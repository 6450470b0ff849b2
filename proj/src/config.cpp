#include "arbor/config.hpp"

#include "arbor/expr.hpp"
#include "arbor/weight.hpp"

namespace arbor {

namespace {

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object()) throw SchemaError(std::string(where) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string(where) + ": missing '" + key + "'");
  return *it;
}

template <class T>
T get(const Json& j, const char* key, const char* where) {
  try {
    return field(j, key, where).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string(where) + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback, const char* where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

TailRule parse_tail(const Json& j) {
  const auto rule = get<std::string>(j, "rule", "tree.tail");
  if (rule == "homogeneous")
    return TailRule::homogeneous(get<double>(j, "edge_length", "tree.tail"), get<int>(j, "branch", "tree.tail"));
  if (rule == "geometric")
    return TailRule::geometric(get<double>(j, "ratio", "tree.tail"), get<double>(j, "edge_length", "tree.tail"),
                               get<int>(j, "branch", "tree.tail"));
  if (rule == "halfline") return TailRule::halfline();
  throw SchemaError("tree.tail: unknown rule '" + rule + "'");
}

}  // namespace

TreeDescriptor parse_tree(const Json& j) {
  const auto gen = get<std::string>(j, "generator", "tree");
  try {
    if (gen == "homogeneous")
      return TreeDescriptor::homogeneous(get_or(j, "edge_length", 1.0, "tree"), get<int>(j, "branch", "tree"));
    if (gen == "geometric")
      return TreeDescriptor::geometric(get<double>(j, "ratio", "tree"), get_or(j, "edge_length", 1.0, "tree"),
                                       get<int>(j, "branch", "tree"));
    if (gen == "halfline") return TreeDescriptor::halfline();
    if (gen == "explicit") {
      auto prefix = get<std::vector<std::pair<double, int>>>(j, "prefix", "tree");
      return build_tree(std::move(prefix), parse_tail(field(j, "tail", "tree")));
    }
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("tree: ") + e.what());
  }
  throw SchemaError("tree: unknown generator '" + gen + "'");
}

SymmetricPotential parse_potential(const Json& j) {
  const auto kind = get<std::string>(j, "kind", "potential");
  try {
    if (kind == "piecewise")
      return SymmetricPotential::piecewise(get<std::vector<double>>(j, "breakpoints", "potential"),
                                           get<std::vector<double>>(j, "values", "potential"));
    if (kind == "expr") {
      const auto support = get<std::vector<double>>(j, "support", "potential");
      if (support.size() != 2) throw SchemaError("potential.support: expected [lo, hi]");
      return SymmetricPotential::profile(parse_expression(get<std::string>(j, "expr", "potential")), support[0],
                                         support[1], get_or(j, "kinks", std::vector<double>{}, "potential"));
    }
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("potential: ") + e.what());
  }
  throw SchemaError("potential: unknown kind '" + kind + "'");
}

Weight parse_weight(const Json& j) {
  const auto kind = get<std::string>(j, "kind", "weight");
  try {
    if (kind == "step") {
      GeometricPattern tail;
      if (j.contains("tail")) {
        const Json& t = j["tail"];
        tail.first_length = get_or(t, "first_length", 1.0, "weight.tail");
        tail.length_ratio = get_or(t, "length_ratio", 1.0, "weight.tail");
        tail.first_value = get<double>(t, "first_value", "weight.tail");
        tail.value_ratio = get_or(t, "value_ratio", 1.0, "weight.tail");
      } else {
        tail.first_value = get<std::vector<double>>(j, "values", "weight").back();
      }
      return Weight(StepWeight(get<std::vector<double>>(j, "breaks", "weight"),
                               get<std::vector<double>>(j, "values", "weight"), tail));
    }
    if (kind == "power") {
      PowerWeight w;
      w.exponent = get<double>(j, "exponent", "weight");
      w.offset = get_or(j, "offset", 1.0, "weight");
      w.breaks = get_or(j, "breaks", std::vector<double>{}, "weight");
      w.factors = get_or(j, "factors", std::vector<double>{1.0}, "weight");
      return Weight(w);
    }
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("weight: ") + e.what());
  }
  throw SchemaError("weight: unknown kind '" + kind + "'");
}

Json to_json(const TreeDescriptor& tree) {
  Json j;
  j["generator"] = "explicit";
  j["prefix"] = tree.prefix();
  const TailRule& t = tree.tail();
  switch (t.kind) {
    case TailRule::Kind::Homogeneous:
      j["tail"] = {{"rule", "homogeneous"}, {"edge_length", t.edge_length}, {"branch", t.branch}};
      break;
    case TailRule::Kind::Geometric:
      j["tail"] = {{"rule", "geometric"}, {"ratio", t.length_ratio}, {"edge_length", t.edge_length},
                   {"branch", t.branch}};
      break;
    case TailRule::Kind::Halfline:
      j["tail"] = {{"rule", "halfline"}};
      break;
  }
  return j;
}

Json to_json(const SymmetricPotential& V) {
  Json j;
  j["kind"] = "piecewise";
  if (V.piecewise_constant()) {
    j["breakpoints"] = V.breaks();
    j["values"] = V.values();
  } else {
    // midpoint samples on the profile's own breaks
    std::vector<double> v;
    for (std::size_t i = 0; i + 1 < V.breaks().size(); ++i) v.push_back(V(0.5 * (V.breaks()[i] + V.breaks()[i + 1])));
    j["breakpoints"] = V.breaks();
    j["values"] = v;
    j["sampled"] = true;
  }
  return j;
}

Json to_json(const Weight& g) {
  Json j;
  if (const StepWeight* s = g.step()) {
    j["kind"] = "step";
    j["breaks"] = s->breaks();
    j["values"] = s->values();
    const auto& t = s->tail();
    j["tail"] = {{"first_length", t.first_length}, {"length_ratio", t.length_ratio},
                 {"first_value", t.first_value}, {"value_ratio", t.value_ratio}};
  } else if (const PowerWeight* p = g.power()) {
    j["kind"] = "power";
    j["exponent"] = p->exponent;
    j["offset"] = p->offset;
    j["breaks"] = p->breaks;
    j["factors"] = p->factors;
  } else {
    j["kind"] = "ground-state";
    j["branch"] = g.gsr()->ground->branch();
    j["left"] = g.gsr()->left;
  }
  return j;
}

}  // namespace arbor
