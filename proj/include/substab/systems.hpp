#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "substab/element_set.hpp"
#include "substab/exec.hpp"
#include "substab/rational.hpp"

namespace substab {

class IndependenceSystem;

/// All sets of size at most `rank`.
struct UniformMatroid {
  int rank = 0;
  bool operator==(const UniformMatroid&) const = default;
};

/// Blocks partition the ground set; at most capacities[i] elements per block.
struct PartitionMatroid {
  std::vector<ElementSet> blocks;
  std::vector<int> capacities;
  bool operator==(const PartitionMatroid&) const = default;
};

/// Sets independent in every part. Parts share the ground set.
struct MatroidIntersection {
  std::vector<IndependenceSystem> parts;
  bool operator==(const MatroidIntersection&) const;
};

struct Edge {
  int u = 0;
  int v = 0;
  bool operator==(const Edge&) const = default;
};

/// Edges of an undirected graph are the elements; matchings are independent.
struct MatchingSystem {
  int nodes = 0;
  std::vector<Edge> edges;
  bool operator==(const MatchingSystem&) const = default;
};

/// Directed arcs of the complete digraph on `nodes` vertices are the
/// elements (no self-loops); independent sets are vertex-disjoint directed
/// paths or a single Hamiltonian cycle. Arc ids come from atsp_arc().
struct AtspSystem {
  int nodes = 0;
  bool operator==(const AtspSystem&) const = default;
};

struct KnapsackSystem {
  std::vector<Rational> sizes;
  Rational budget;
  bool operator==(const KnapsackSystem&) const = default;
};

/// Ground set A + {special}, |A| = n even. Independent: any subset of A, or
/// the special element with at most n/2 elements of A.
struct TwoSystemCounterexample {
  int n = 0;
  ElementId special = 0;
  bool operator==(const TwoSystemCounterexample&) const = default;
};

/// A = ids [0, a_size), B = ids [a_size, a_size + b_size).
/// S independent iff |S∩A| + p|S∩B| <= |A| or p|S∩A| + |S∩B| <= |B|.
struct AbLowerBoundSystem {
  int a_size = 0;
  int b_size = 0;
  int p = 1;
  bool operator==(const AbLowerBoundSystem&) const = default;
};

/// Downward closure of the listed sets (which need not be an antichain).
struct ExplicitSystem {
  std::vector<ElementSet> maximal_sets;
  bool operator==(const ExplicitSystem&) const = default;
};

/// Deletion/contraction of a base system. Remaining base elements are
/// renumbered 0..m-1 in increasing base-id order.
struct MinorSystem {
  std::shared_ptr<const IndependenceSystem> base;
  ElementSet deleted;
  ElementSet contracted;
  bool operator==(const MinorSystem&) const;
};

using SystemKind =
    std::variant<UniformMatroid, PartitionMatroid, MatroidIntersection,
                 MatchingSystem, AtspSystem, KnapsackSystem,
                 TwoSystemCounterexample, AbLowerBoundSystem, ExplicitSystem,
                 MinorSystem>;

/// Downward-closed family of feasible subsets of {0, ..., ground_size-1},
/// answered as a membership oracle. Immutable after construction.
class IndependenceSystem {
 public:
  /// Validates the kind's parameters against the ground size.
  IndependenceSystem(int ground_size, SystemKind kind);

  int ground_size() const { return ground_size_; }
  ElementSet ground() const { return ElementSet::full(ground_size_); }
  const SystemKind& kind() const { return kind_; }
  std::string_view kind_name() const;

  /// Throws PreconditionError if s has elements outside the ground set.
  bool is_independent(ElementSet s) const;

  bool operator==(const IndependenceSystem& other) const;

 private:
  bool contains_unchecked(ElementSet s) const;

  int ground_size_ = 0;
  SystemKind kind_;
  // Cached for MinorSystem: base ids that survive, in increasing order.
  ElementSet minor_kept_;
};

// Factories. Each validates its parameters and throws InvalidArgument.
IndependenceSystem uniform_matroid(int ground_size, int rank);
IndependenceSystem partition_matroid(int ground_size, std::vector<ElementSet> blocks,
                                     std::vector<int> capacities);
IndependenceSystem matroid_intersection(std::vector<IndependenceSystem> parts);
IndependenceSystem matching_system(int nodes, std::vector<Edge> edges);
IndependenceSystem atsp_system(int nodes);
IndependenceSystem knapsack_system(std::vector<Rational> sizes, Rational budget);
IndependenceSystem two_system_counterexample(int n, std::optional<ElementId> special = {});
IndependenceSystem ab_lower_bound_system(int a_size, int b_size, int p);
IndependenceSystem explicit_system(int ground_size, std::vector<ElementSet> maximal_sets);

/// Element id of the arc from -> to in AtspSystem(nodes).
ElementId atsp_arc(int nodes, int from, int to);
std::pair<int, int> atsp_endpoints(int nodes, ElementId arc);

bool is_independent(const IndependenceSystem& sys, ElementSet s);

/// True iff no single element can be added feasibly. s must be independent.
bool is_maximal(const IndependenceSystem& sys, ElementSet s);

/// Elements e not in s with s+e independent, in increasing id order.
std::vector<ElementId> feasible_extensions(const IndependenceSystem& sys, ElementSet s);

/// Every independent set exactly once, in bitmask order. Capped.
std::vector<ElementSet> enumerate_independent_sets(const IndependenceSystem& sys,
                                                   Exec exec = Exec::parallel);

/// System on X \ y whose independent sets are those of sys inside X \ y.
IndependenceSystem deletion(const IndependenceSystem& sys, ElementSet y);

/// System on X \ y where z is independent iff z ∪ y is. y must be independent.
IndependenceSystem contraction(const IndependenceSystem& sys, ElementSet y);

/// Membership bit for every subset of a capped ground set.
class IndependenceTable {
 public:
  IndependenceTable(const IndependenceSystem& sys, Exec exec = Exec::parallel);

  int ground_size() const { return ground_size_; }
  bool operator[](ElementSet s) const { return bits_[s.bits()] != 0; }
  bool test(ElementSet::Bits mask) const { return bits_[mask] != 0; }
  std::size_t independent_count() const;

 private:
  int ground_size_;
  std::vector<std::uint8_t> bits_;
};

/// Witness (T, S) with S independent, T ⊆ S and T dependent.
struct ClosureViolation {
  ElementSet subset;
  ElementSet superset;
};

/// Exhaustive downward-closure check (also checks that ∅ is independent).
std::optional<ClosureViolation> find_closure_violation(const IndependenceSystem& sys,
                                                       Exec exec = Exec::parallel);

}  // namespace substab
