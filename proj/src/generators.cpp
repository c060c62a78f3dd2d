#include "substab/generators.hpp"

#include <algorithm>
#include <random>

#include "substab/errors.hpp"

namespace substab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Modulo sampling keeps streams identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

  bool chance(const Rational& p) {
    const unsigned long den = p.get_den().get_ui();
    const unsigned long num = p.get_num().get_ui();
    return below(den) < num;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

void check_probability(const Rational& p, const char* what) {
  if (p < 0 || p > 1) throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
  if (!p.get_den().fits_ulong_p()) throw InvalidArgument(std::string(what) + " denominator too large");
}

void check_ground(int n) {
  if (n < 1 || n > ElementSet::kMaxElements)
    throw InvalidArgument("generated ground size must be in [1, 64]");
}

IndependenceSystem make_system(const SystemFamily& family, Rng& rng) {
  return std::visit(
      overloaded{
          [&](const PartitionIntersectionFamily& f) {
            check_ground(f.ground_size);
            if (f.p < 1 || f.blocks < 1 || f.max_capacity < 1)
              throw InvalidArgument("partition intersection needs p, blocks, max_capacity >= 1");
            const int b = std::min(f.blocks, f.ground_size);
            std::vector<IndependenceSystem> parts;
            for (int m = 0; m < f.p; ++m) {
              std::vector<ElementId> ids(f.ground_size);
              for (int i = 0; i < f.ground_size; ++i) ids[i] = i;
              rng.shuffle(ids);
              std::vector<ElementSet> blocks(b);
              for (int i = 0; i < f.ground_size; ++i) {
                const auto target = i < b ? static_cast<std::size_t>(i) : rng.below(b);
                blocks[target] = blocks[target].with(ids[i]);
              }
              std::vector<int> caps(b);
              for (int& c : caps) c = 1 + static_cast<int>(rng.below(f.max_capacity));
              parts.push_back(partition_matroid(f.ground_size, std::move(blocks), std::move(caps)));
            }
            return matroid_intersection(std::move(parts));
          },
          [&](const MatchingGraphFamily& f) {
            check_probability(f.edge_probability, "edge probability");
            if (f.nodes < 2 || f.max_edges < 1)
              throw InvalidArgument("matching graph needs >= 2 nodes and max_edges >= 1");
            std::vector<Edge> edges;
            for (int u = 0; u < f.nodes; ++u)
              for (int v = u + 1; v < f.nodes; ++v)
                if (rng.chance(f.edge_probability)) edges.push_back({u, v});
            rng.shuffle(edges);
            if (static_cast<int>(edges.size()) > f.max_edges) edges.resize(f.max_edges);
            if (edges.empty()) edges.push_back({0, 1});
            std::sort(edges.begin(), edges.end(),
                      [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
            return matching_system(f.nodes, std::move(edges));
          },
          [&](const ExplicitRandomFamily& f) {
            check_ground(f.ground_size);
            check_probability(f.density, "density");
            if (f.sets < 1) throw InvalidArgument("explicit family needs at least one set");
            std::vector<ElementSet> sets;
            for (int i = 0; i < f.sets; ++i) {
              ElementSet s;
              for (int e = 0; e < f.ground_size; ++e)
                if (rng.chance(f.density)) s = s.with(e);
              sets.push_back(s);
            }
            return explicit_system(f.ground_size, std::move(sets));
          },
          [&](const UniformFamily& f) {
            check_ground(f.ground_size);
            return uniform_matroid(f.ground_size, f.rank);
          },
          [&](const WelfareFamily& f) {
            if (f.items < 1 || f.players < 1) throw InvalidArgument("welfare needs items, players >= 1");
            check_ground(f.items * f.players);
            std::vector<ElementSet> blocks;
            for (int item = 0; item < f.items; ++item) {
              ElementSet block;
              for (int player = 0; player < f.players; ++player)
                block = block.with(item * f.players + player);
              blocks.push_back(block);
            }
            return partition_matroid(f.items * f.players, std::move(blocks),
                                     std::vector<int>(f.items, 1));
          },
      },
      family);
}

Objective make_coverage(const CoverageFamily& f, int n, Rng& rng) {
  if (f.universe < 1 || f.universe > ElementSet::kMaxElements)
    throw InvalidArgument("coverage universe must be in [1, 64]");
  check_probability(f.density, "coverage density");
  if (f.max_numerator < 1 || f.denominator < 1)
    throw InvalidArgument("coverage weights need positive numerator bound and denominator");
  std::vector<ElementSet> covers(n);
  for (ElementSet& c : covers) {
    for (int u = 0; u < f.universe; ++u)
      if (rng.chance(f.density)) c = c.with(u);
    if (c.empty()) c = ElementSet::singleton(static_cast<int>(rng.below(f.universe)));
  }
  std::vector<Rational> weights(f.universe);
  for (Rational& w : weights)
    w = make_rational(1 + static_cast<long>(rng.below(f.max_numerator)), f.denominator);
  return coverage_objective(std::move(covers), std::move(weights));
}

Objective make_objective(const ObjectiveFamily& family, int n, Rng& rng) {
  return std::visit(
      overloaded{
          [&](const AdditiveFamily& f) {
            if (f.max_numerator < 1 || f.denominator < 1)
              throw InvalidArgument("additive weights need positive numerator bound and denominator");
            std::vector<Rational> w(n);
            for (Rational& x : w)
              x = make_rational(1 + static_cast<long>(rng.below(f.max_numerator)), f.denominator);
            return additive_objective(std::move(w));
          },
          [&](const CoverageFamily& f) { return make_coverage(f, n, rng); },
          [&](const BlockSumFamily& f) {
            if (f.blocks < 1) throw InvalidArgument("block sum needs at least one block");
            const int b = std::min(f.blocks, n);
            std::vector<ElementSet> blocks(b);
            for (int e = 0; e < n; ++e) blocks[e % b] = blocks[e % b].with(e);
            std::vector<Objective> components;
            for (const ElementSet& block : blocks)
              components.push_back(make_coverage(f.component, block.size(), rng));
            return block_sum_objective(n, std::move(blocks), std::move(components));
          },
      },
      family);
}

Rational rational_or(const Json& j, const char* key, const Rational& fallback) {
  return j.contains(key) ? rational_from_json(j.at(key)) : fallback;
}

CoverageFamily coverage_from_json(const Json& j) {
  CoverageFamily f;
  f.universe = j.value("universe", f.universe);
  f.density = rational_or(j, "density", f.density);
  f.max_numerator = j.value("max_numerator", f.max_numerator);
  f.denominator = j.value("denominator", f.denominator);
  return f;
}

Json coverage_to_json(const CoverageFamily& f) {
  return {{"family", "coverage"},
          {"universe", f.universe},
          {"density", to_json(f.density)},
          {"max_numerator", f.max_numerator},
          {"denominator", f.denominator}};
}

}  // namespace

Instance generate(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  IndependenceSystem sys = make_system(spec.system, rng);
  Objective obj = make_objective(spec.objective, sys.ground_size(), rng);
  const std::string name = family_name(spec.system) + "/" + family_name(spec.objective) + "/" +
                           std::to_string(spec.seed);
  return make_instance(name, std::move(sys), std::move(obj), {{"seed", std::to_string(spec.seed)}},
                       "generated");
}

std::string family_name(const SystemFamily& family) {
  return std::visit(overloaded{
                        [](const PartitionIntersectionFamily& f) {
                          return "partition_intersection(p=" + std::to_string(f.p) + ")";
                        },
                        [](const MatchingGraphFamily&) { return std::string("matching_graph"); },
                        [](const ExplicitRandomFamily&) { return std::string("explicit_random"); },
                        [](const UniformFamily&) { return std::string("uniform"); },
                        [](const WelfareFamily&) { return std::string("welfare"); },
                    },
                    family);
}

std::string family_name(const ObjectiveFamily& family) {
  return std::visit(overloaded{
                        [](const AdditiveFamily&) { return std::string("additive"); },
                        [](const CoverageFamily&) { return std::string("coverage"); },
                        [](const BlockSumFamily&) { return std::string("block_sum"); },
                    },
                    family);
}

Json to_json(const GeneratorSpec& spec) {
  Json j;
  j["seed"] = spec.seed;
  j["system"] = std::visit(
      overloaded{
          [](const PartitionIntersectionFamily& f) -> Json {
            return {{"family", "partition_intersection"}, {"p", f.p}, {"ground_size", f.ground_size},
                    {"blocks", f.blocks}, {"max_capacity", f.max_capacity}};
          },
          [](const MatchingGraphFamily& f) -> Json {
            return {{"family", "matching_graph"}, {"nodes", f.nodes},
                    {"edge_probability", to_json(f.edge_probability)}, {"max_edges", f.max_edges}};
          },
          [](const ExplicitRandomFamily& f) -> Json {
            return {{"family", "explicit_random"}, {"ground_size", f.ground_size}, {"sets", f.sets},
                    {"density", to_json(f.density)}};
          },
          [](const UniformFamily& f) -> Json {
            return {{"family", "uniform"}, {"ground_size", f.ground_size}, {"rank", f.rank}};
          },
          [](const WelfareFamily& f) -> Json {
            return {{"family", "welfare"}, {"items", f.items}, {"players", f.players}};
          },
      },
      spec.system);
  j["objective"] = std::visit(
      overloaded{
          [](const AdditiveFamily& f) -> Json {
            return {{"family", "additive"}, {"max_numerator", f.max_numerator},
                    {"denominator", f.denominator}};
          },
          [](const CoverageFamily& f) -> Json { return coverage_to_json(f); },
          [](const BlockSumFamily& f) -> Json {
            return {{"family", "block_sum"}, {"blocks", f.blocks},
                    {"component", coverage_to_json(f.component)}};
          },
      },
      spec.objective);
  return j;
}

GeneratorSpec generator_spec_from_json(const Json& j) {
  try {
    GeneratorSpec spec;
    spec.seed = j.value("seed", std::uint64_t{0});
    const Json& s = j.at("system");
    const std::string sf = s.at("family").get<std::string>();
    if (sf == "partition_intersection") {
      PartitionIntersectionFamily f;
      f.p = s.value("p", f.p);
      f.ground_size = s.value("ground_size", f.ground_size);
      f.blocks = s.value("blocks", f.blocks);
      f.max_capacity = s.value("max_capacity", f.max_capacity);
      spec.system = f;
    } else if (sf == "matching_graph") {
      MatchingGraphFamily f;
      f.nodes = s.value("nodes", f.nodes);
      f.edge_probability = rational_or(s, "edge_probability", f.edge_probability);
      f.max_edges = s.value("max_edges", f.max_edges);
      spec.system = f;
    } else if (sf == "explicit_random") {
      ExplicitRandomFamily f;
      f.ground_size = s.value("ground_size", f.ground_size);
      f.sets = s.value("sets", f.sets);
      f.density = rational_or(s, "density", f.density);
      spec.system = f;
    } else if (sf == "uniform") {
      UniformFamily f;
      f.ground_size = s.value("ground_size", f.ground_size);
      f.rank = s.value("rank", f.rank);
      spec.system = f;
    } else if (sf == "welfare") {
      WelfareFamily f;
      f.items = s.value("items", f.items);
      f.players = s.value("players", f.players);
      spec.system = f;
    } else {
      throw ParseError("unknown system family '" + sf + "'");
    }

    const Json& o = j.at("objective");
    const std::string of = o.at("family").get<std::string>();
    if (of == "additive") {
      AdditiveFamily f;
      f.max_numerator = o.value("max_numerator", f.max_numerator);
      f.denominator = o.value("denominator", f.denominator);
      spec.objective = f;
    } else if (of == "coverage") {
      spec.objective = coverage_from_json(o);
    } else if (of == "block_sum") {
      BlockSumFamily f;
      f.blocks = o.value("blocks", f.blocks);
      if (o.contains("component")) f.component = coverage_from_json(o.at("component"));
      spec.objective = f;
    } else {
      throw ParseError("unknown objective family '" + of + "'");
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("generator spec: ") + e.what());
  }
}

}  // namespace substab
