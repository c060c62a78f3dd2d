#include "substab/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "substab/errors.hpp"

namespace substab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  for (const Json& v : j) out.push_back(rational_from_json(v));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

std::vector<ElementSet> sets_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of id arrays");
  std::vector<ElementSet> out;
  for (const Json& v : j) out.push_back(set_from_json(v));
  return out;
}

Json sets_to_json(const std::vector<ElementSet>& sets) {
  Json out = Json::array();
  for (ElementSet s : sets) out.push_back(to_json(s));
  return out;
}

// Maps keyed by element id ("0", "1", ...) with one entry per element.
template <class Fn>
auto id_map_from_json(const Json& j, int ground_size, Fn&& convert) {
  if (!j.is_object()) throw ParseError("expected an id-keyed object");
  std::vector<decltype(convert(Json{}))> out(static_cast<std::size_t>(ground_size));
  std::vector<bool> seen(static_cast<std::size_t>(ground_size), false);
  for (const auto& [key, v] : j.items()) {
    std::size_t used = 0;
    int id = -1;
    try {
      id = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || id < 0 || id >= ground_size)
      throw ParseError("bad element id key '" + key + "'");
    out[id] = convert(v);
    seen[id] = true;
  }
  for (int id = 0; id < ground_size; ++id)
    if (!seen[id]) throw ParseError("no entry for element " + std::to_string(id));
  return out;
}

template <class T, class Fn>
Json id_map_to_json(const std::vector<T>& values, Fn&& convert) {
  Json out = Json::object();
  for (std::size_t i = 0; i < values.size(); ++i) out[std::to_string(i)] = convert(values[i]);
  return out;
}

void check_version(const Json& j) {
  if (int_field(j, "version") != kFormatVersion)
    throw ParseError("unsupported format version " + field(j, "version").dump());
}

}  // namespace

Instance make_instance(std::string name, IndependenceSystem system, Objective objective,
                       std::map<std::string, std::string> parameters, std::string note) {
  if (system.ground_size() != objective.ground_size())
    throw InvalidArgument("instance system and objective ground sizes differ");
  return Instance{std::move(name), std::move(note), std::move(parameters), std::move(system),
                  std::move(objective)};
}

Json to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rational must be a \"num/den\" string, got " + j.dump());
}

Json to_json(ElementSet s) { return s.ids(); }

ElementSet set_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("set must be an id array, got " + j.dump());
  ElementSet s;
  for (const Json& v : j) {
    if (!v.is_number_integer()) throw ParseError("set ids must be integers");
    const int id = v.get<int>();
    if (id < 0 || id >= ElementSet::kMaxElements) throw ParseError("set id out of range");
    if (s.contains(id)) throw ParseError("set lists id " + std::to_string(id) + " twice");
    s = s.with(id);
  }
  return s;
}

Json to_json(const IndependenceSystem& sys) {
  Json j;
  j["kind"] = std::string(sys.kind_name());
  j["ground_size"] = sys.ground_size();
  std::visit(overloaded{
                 [&](const UniformMatroid& k) { j["rank"] = k.rank; },
                 [&](const PartitionMatroid& k) {
                   j["blocks"] = sets_to_json(k.blocks);
                   j["capacities"] = k.capacities;
                 },
                 [&](const MatroidIntersection& k) {
                   j["parts"] = Json::array();
                   for (const auto& part : k.parts) j["parts"].push_back(to_json(part));
                 },
                 [&](const MatchingSystem& k) {
                   j["nodes"] = k.nodes;
                   j["edges"] = Json::array();
                   for (const Edge& e : k.edges) j["edges"].push_back({e.u, e.v});
                 },
                 [&](const AtspSystem& k) { j["nodes"] = k.nodes; },
                 [&](const KnapsackSystem& k) {
                   j["sizes"] = rationals_to_json(k.sizes);
                   j["budget"] = to_json(k.budget);
                 },
                 [&](const TwoSystemCounterexample& k) {
                   j["n"] = k.n;
                   j["special"] = k.special;
                 },
                 [&](const AbLowerBoundSystem& k) {
                   j["a_size"] = k.a_size;
                   j["b_size"] = k.b_size;
                   j["p"] = k.p;
                 },
                 [&](const ExplicitSystem& k) { j["maximal_sets"] = sets_to_json(k.maximal_sets); },
                 [&](const MinorSystem& k) {
                   j["base"] = to_json(*k.base);
                   j["deleted"] = to_json(k.deleted);
                   j["contracted"] = to_json(k.contracted);
                 },
             },
             sys.kind());
  return j;
}

IndependenceSystem system_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  const int n = int_field(j, "ground_size");
  try {
    if (kind == "uniform_matroid") return uniform_matroid(n, int_field(j, "rank"));
    if (kind == "partition_matroid")
      return partition_matroid(n, sets_from_json(field(j, "blocks")),
                               field(j, "capacities").get<std::vector<int>>());
    if (kind == "matroid_intersection") {
      std::vector<IndependenceSystem> parts;
      for (const Json& p : field(j, "parts")) parts.push_back(system_from_json(p));
      return IndependenceSystem(n, MatroidIntersection{std::move(parts)});
    }
    if (kind == "matching") {
      std::vector<Edge> edges;
      for (const Json& e : field(j, "edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a [u, v] pair");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
      }
      return IndependenceSystem(n, MatchingSystem{int_field(j, "nodes"), std::move(edges)});
    }
    if (kind == "atsp") return IndependenceSystem(n, AtspSystem{int_field(j, "nodes")});
    if (kind == "knapsack")
      return IndependenceSystem(n, KnapsackSystem{rationals_from_json(field(j, "sizes")),
                                                  rational_from_json(field(j, "budget"))});
    if (kind == "two_system_counterexample")
      return IndependenceSystem(
          n, TwoSystemCounterexample{int_field(j, "n"), int_field(j, "special")});
    if (kind == "ab_lower_bound")
      return IndependenceSystem(n, AbLowerBoundSystem{int_field(j, "a_size"),
                                                      int_field(j, "b_size"), int_field(j, "p")});
    if (kind == "explicit")
      return IndependenceSystem(n, ExplicitSystem{sets_from_json(field(j, "maximal_sets"))});
    if (kind == "minor")
      return IndependenceSystem(
          n, MinorSystem{std::make_shared<const IndependenceSystem>(system_from_json(field(j, "base"))),
                         set_from_json(field(j, "deleted")),
                         set_from_json(field(j, "contracted"))});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("system '") + kind + "': " + e.what());
  }
  throw ParseError("unknown system kind '" + kind + "'");
}

Json to_json(const Objective& obj) {
  Json j;
  j["kind"] = std::string(obj.kind_name());
  j["ground_size"] = obj.ground_size();
  std::visit(overloaded{
                 [&](const AdditiveObjective& k) {
                   j["weights"] = id_map_to_json(k.weights, [](const Rational& r) { return to_json(r); });
                 },
                 [&](const CoverageObjective& k) {
                   j["covers"] = id_map_to_json(k.covers, [](ElementSet s) { return to_json(s); });
                   j["universe_weights"] = rationals_to_json(k.universe_weights);
                 },
                 [&](const TableObjective& k) {
                   Json values = Json::object();
                   for (std::size_t m = 0; m < k.values.size(); ++m)
                     if (k.values[m]) values[std::to_string(m)] = to_json(*k.values[m]);
                   j["values"] = std::move(values);
                 },
                 [&](const BlockSumObjective& k) {
                   j["blocks"] = sets_to_json(k.blocks);
                   j["components"] = Json::array();
                   for (const auto& c : k.components) j["components"].push_back(to_json(c));
                 },
             },
             obj.kind());
  return j;
}

Objective objective_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  const int n = int_field(j, "ground_size");
  if (n < 0 || n > ElementSet::kMaxElements) throw ParseError("objective ground size out of range");
  try {
    if (kind == "additive")
      return Objective(n, AdditiveObjective{id_map_from_json(field(j, "weights"), n,
                                                             [](const Json& v) { return rational_from_json(v); })});
    if (kind == "coverage")
      return Objective(n, CoverageObjective{id_map_from_json(field(j, "covers"), n,
                                                             [](const Json& v) { return set_from_json(v); }),
                                            rationals_from_json(field(j, "universe_weights"))});
    if (kind == "table") {
      if (n > kMaxEnumerationCap) throw ParseError("table objective too large");
      std::vector<std::optional<Rational>> values(std::size_t{1} << n);
      for (const auto& [key, v] : field(j, "values").items()) {
        std::size_t used = 0;
        unsigned long long mask = 0;
        try {
          mask = std::stoull(key, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != key.size() || mask >= values.size())
          throw ParseError("bad table mask key '" + key + "'");
        values[mask] = rational_from_json(v);
      }
      return Objective(n, TableObjective{std::move(values)});
    }
    if (kind == "block_sum") {
      std::vector<Objective> components;
      for (const Json& c : field(j, "components")) components.push_back(objective_from_json(c));
      return Objective(n, BlockSumObjective{sets_from_json(field(j, "blocks")), std::move(components)});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("objective '") + kind + "': " + e.what());
  }
  throw ParseError("unknown objective kind '" + kind + "'");
}

Json to_json(const Instance& inst) {
  Json j;
  j["version"] = kFormatVersion;
  j["name"] = inst.name;
  j["note"] = inst.note;
  j["parameters"] = inst.parameters;
  j["system"] = to_json(inst.system);
  j["objective"] = to_json(inst.objective);
  return j;
}

Instance instance_from_json(const Json& j) {
  check_version(j);
  try {
    std::map<std::string, std::string> params;
    if (j.contains("parameters")) params = j.at("parameters").get<std::map<std::string, std::string>>();
    return make_instance(j.value("name", std::string{}), system_from_json(field(j, "system")),
                         objective_from_json(field(j, "objective")), std::move(params),
                         j.value("note", std::string{}));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

std::string serialize_instance(const Instance& inst) { return to_json(inst).dump(2) + "\n"; }

Instance parse_instance(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance file: ") + e.what());
  }
  return instance_from_json(j);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << serialize_instance(inst);
}

Json to_json(const SolveTrace& trace) {
  return {{"picks", trace.picks},
          {"deltas", rationals_to_json(trace.deltas)},
          {"final_set", to_json(trace.final_set)},
          {"final_value", to_json(trace.final_value)},
          {"iterations", trace.iterations},
          {"budget_exhausted", trace.budget_exhausted}};
}

Json to_json(const OptimumResult& opt) {
  return {{"set", to_json(opt.set)},
          {"value", to_json(opt.value)},
          {"unique", opt.unique},
          {"tie_count", opt.tie_count}};
}

Json to_json(const SystemProfile& profile) {
  Json j;
  j["p_system"] = to_json(profile.p_system);
  j["p_extendible"] = profile.p_extendible ? Json(*profile.p_extendible) : Json("none");
  j["p_hereditary"] = profile.p_hereditary ? to_json(*profile.p_hereditary) : Json(nullptr);
  j["downward_closed"] = profile.downward_closed;
  return j;
}

Json to_json(const ObjectiveReport& r) {
  Json j{{"normalized", r.normalized},
         {"nonnegative", r.nonnegative},
         {"monotone", r.monotone},
         {"submodular", r.submodular}};
  if (r.negative_witness) j["negative_witness"] = to_json(*r.negative_witness);
  if (r.monotone_witness)
    j["monotone_witness"] = {{"set", to_json(r.monotone_witness->set)},
                             {"element", r.monotone_witness->element}};
  if (r.submodular_witness)
    j["submodular_witness"] = {{"smaller", to_json(r.submodular_witness->smaller)},
                               {"larger", to_json(r.submodular_witness->larger)},
                               {"element", r.submodular_witness->element}};
  return j;
}

Json to_json(const SequencePerturbation& pert) {
  return {{"type", "sequence"},
          {"ordering", pert.ordering},
          {"deltas", rationals_to_json(pert.deltas)},
          {"boosted", to_json(pert.boosted)},
          {"gamma", to_json(pert.gamma)}};
}

Json to_json(const AdditivePerturbation& pert) {
  return {{"type", "additive"},
          {"multipliers", rationals_to_json(pert.multipliers)},
          {"gamma", to_json(pert.gamma)}};
}

Json to_json(const PerturbationValidation& v) {
  Json j{{"ok", v.ok()},
         {"monotone_submodular", v.shape.ok},
         {"sandwich", v.sandwich.ok},
         {"marginals", v.marginals.ok}};
  if (v.shape.witness) j["shape_witness"] = to_json(*v.shape.witness);
  if (v.sandwich.witness) j["sandwich_witness"] = to_json(*v.sandwich.witness);
  if (v.marginals.witness)
    j["marginal_witness"] = {{"set", to_json(v.marginals.witness->set)},
                             {"element", v.marginals.witness->element}};
  return j;
}

Json to_json(const StabilityReport& report) {
  Json j;
  j["kind"] = report.kind == ReportKind::additive_exact ? "additive-exact" : "submodular-upper-bound";
  j["gamma_star"] = report.gamma_star ? to_json(*report.gamma_star) : Json("infinity");
  j["optimum"] = to_json(report.optimum);
  j["competing_set"] = to_json(report.competing_set);
  if (report.certificate)
    j["certificate"] = std::visit([](const auto& c) { return to_json(c); }, *report.certificate);
  return j;
}

}  // namespace substab
