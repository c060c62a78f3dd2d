#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "substab/element_set.hpp"
#include "substab/exec.hpp"
#include "substab/objectives.hpp"
#include "substab/rational.hpp"
#include "substab/systems.hpp"

namespace substab {

/// Ordered picks with their marginal gains. For local search the picks are a
/// greedy ordering of the final set and iterations counts accepted moves.
struct SolveTrace {
  std::vector<ElementId> picks;
  std::vector<Rational> deltas;
  ElementSet final_set;
  Rational final_value;
  std::size_t iterations = 0;
  bool budget_exhausted = false;
};

enum class TieBreak { lexicographic, seeded_random };

struct TieBreakPolicy {
  TieBreak mode = TieBreak::lexicographic;
  std::uint64_t seed = 0;
};

/// Adds the feasible element of largest marginal until the set is maximal.
/// Zero-marginal elements are still added.
SolveTrace greedy(const IndependenceSystem& sys, const Objective& obj,
                  TieBreakPolicy tie_break = {});

/// Each step picks uniformly (by seed) among feasible elements whose marginal
/// is at least alpha times the best. Requires 0 < alpha <= 1.
SolveTrace greedy_alpha(const IndependenceSystem& sys, const Objective& obj,
                        const Rational& alpha, std::uint64_t seed);

enum class StartKind { explicit_set, greedy_seeded, empty_maximal };

struct LocalSearchConfig {
  int remove_cap = 1;  // p
  int add_cap = 1;     // q
  /// Defaults to 10 * 2^ground_size.
  std::optional<std::size_t> max_iterations;
  StartKind start = StartKind::empty_maximal;
  ElementSet initial_set;  // used when start == explicit_set
};

/// Best-improvement local search over swaps removing up to p and adding up to
/// q elements. Neighbors are ordered by (removed mask, added mask); the first
/// strictly best neighbor wins. Hitting the iteration budget sets
/// budget_exhausted and returns the current set.
SolveTrace local_search(const IndependenceSystem& sys, const Objective& obj,
                        const LocalSearchConfig& cfg);

/// Start set used for StartKind::empty_maximal: ∅ extended by the lowest
/// feasible id until maximal.
ElementSet lowest_id_maximal(const IndependenceSystem& sys);

struct Swap {
  ElementSet removed;
  ElementSet added;
  ElementSet result;
  Rational value;
};

/// Best strictly improving (p,q)-swap from s, or empty if s is swap-stable.
std::optional<Swap> best_improving_swap(const IndependenceSystem& sys, const Objective& obj,
                                        ElementSet s, int p, int q);

/// Greedy ordering of the elements of `a` (largest marginal first, ties to
/// the lowest id) and the marginal of each within the prefix.
struct GreedyOrdering {
  std::vector<ElementId> order;
  std::vector<Rational> deltas;
};
GreedyOrdering greedy_ordering(const Objective& obj, ElementSet a);

struct OptimumResult {
  ElementSet set;
  Rational value;
  bool unique = true;
  /// Number of independent sets reaching the optimum value.
  std::size_t tie_count = 1;
};

/// Maximizer by full enumeration; ties resolve to the smallest bitmask.
OptimumResult exact_optimum(const IndependenceSystem& sys, const Objective& obj,
                            Exec exec = Exec::parallel);

struct LocalOptimum {
  ElementSet set;
  Rational value;
};

/// Every independent set without a strictly improving (p,q)-swap, in
/// bitmask order.
std::vector<LocalOptimum> all_local_optima(const IndependenceSystem& sys, const Objective& obj,
                                           int p, int q, Exec exec = Exec::parallel);

/// Which local-search guarantees apply to a (p,q) configuration on a system
/// of the given extendibility. Any (p,q) with p >= extendibility and q >= 1
/// contains the (p_ext,1) neighborhood the guarantees are stated for.
struct LocalSearchHypothesis {
  bool approximation = false;  // 1/(p^2) additive, 1/(p^2+1) submodular
  bool recovery = false;       // exact recovery of p^2 / p^2+1 stable instances
  std::string note;
};
LocalSearchHypothesis classify_local_search(std::optional<int> p_extendible, int p, int q);

}  // namespace substab
