#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "substab/instance_io.hpp"
#include "substab/rational.hpp"

namespace substab {

/// Intersection of p random partition matroids: each matroid assigns every
/// element to one of `blocks` blocks (nonempty) with capacity in
/// [1, max_capacity].
struct PartitionIntersectionFamily {
  int p = 2;
  int ground_size = 8;
  int blocks = 3;
  int max_capacity = 2;
};

/// Each of the nodes*(nodes-1)/2 possible edges is kept with probability
/// edge_probability; edges are the elements. At most max_edges edges.
struct MatchingGraphFamily {
  int nodes = 5;
  Rational edge_probability = make_rational(1, 2);
  int max_edges = 12;
};

/// Downward closure of `sets` random subsets, each element kept with
/// probability density.
struct ExplicitRandomFamily {
  int ground_size = 6;
  int sets = 4;
  Rational density = make_rational(1, 2);
};

struct UniformFamily {
  int ground_size = 6;
  int rank = 3;
};

/// items x players elements, id = item * players + player; each item goes to
/// at most one player (a partition matroid by item).
struct WelfareFamily {
  int items = 4;
  int players = 2;
};

using SystemFamily = std::variant<PartitionIntersectionFamily, MatchingGraphFamily,
                                  ExplicitRandomFamily, UniformFamily, WelfareFamily>;

/// Weights k/denominator with k uniform in [1, max_numerator].
struct AdditiveFamily {
  int max_numerator = 100;
  int denominator = 10;
};

/// Element covers each universe item with probability density; universe
/// weights k/denominator with k uniform in [1, max_numerator].
struct CoverageFamily {
  int universe = 8;
  Rational density = make_rational(1, 3);
  int max_numerator = 10;
  int denominator = 1;
};

/// Sum of coverage functions over `blocks` blocks; element e belongs to block
/// e mod blocks (for welfare instances: the player).
struct BlockSumFamily {
  int blocks = 2;
  CoverageFamily component;
};

using ObjectiveFamily = std::variant<AdditiveFamily, CoverageFamily, BlockSumFamily>;

struct GeneratorSpec {
  SystemFamily system;
  ObjectiveFamily objective;
  std::uint64_t seed = 0;
};

/// Deterministic in the spec. Throws InvalidArgument on malformed families.
Instance generate(const GeneratorSpec& spec);

std::string family_name(const SystemFamily& family);
std::string family_name(const ObjectiveFamily& family);

Json to_json(const GeneratorSpec& spec);
GeneratorSpec generator_spec_from_json(const Json& j);

}  // namespace substab
