#pragma once

// Hand-rolled generators and naive oracles shared by the unit tests. The
// oracles use only is_independent / value and plain loops, never the library
// kernels they are compared against.

#include <algorithm>
#include <climits>
#include <random>
#include <vector>

#include "substab/objectives.hpp"
#include "substab/systems.hpp"

namespace support {

using namespace substab;
using Bits = ElementSet::Bits;

inline Rational R(long num, long den = 1) { return make_rational(num, den); }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool coin(int num, int den) { return below(den) < num; }
  Rational rational(int max_num, int den) { return R(between(0, max_num), den); }
  ElementSet subset(int n, int num = 1, int den = 2) {
    Bits b = 0;
    for (int e = 0; e < n; ++e)
      if (coin(num, den)) b |= Bits{1} << e;
    return ElementSet(b);
  }
  std::vector<ElementId> permutation(ElementSet s) {
    std::vector<ElementId> ids = s.ids();
    for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[below(static_cast<int>(i))]);
    return ids;
  }

 private:
  std::mt19937_64 rng_;
};

inline IndependenceSystem random_explicit(Gen& g, int n) {
  std::vector<ElementSet> sets;
  const int count = g.between(1, 4);
  for (int i = 0; i < count; ++i) sets.push_back(g.subset(n));
  return explicit_system(n, sets);
}

inline IndependenceSystem random_partition(Gen& g, int n) {
  const int blocks = g.between(1, std::min(n, 3));
  std::vector<ElementSet> parts(blocks);
  std::vector<Bits> bits(blocks, 0);
  for (int e = 0; e < n; ++e) bits[e < blocks ? e : g.below(blocks)] |= Bits{1} << e;
  std::vector<int> caps;
  for (int b = 0; b < blocks; ++b) {
    parts[b] = ElementSet(bits[b]);
    caps.push_back(g.between(1, 2));
  }
  return partition_matroid(n, parts, caps);
}

inline IndependenceSystem random_matching(Gen& g, int max_edges) {
  const int nodes = g.between(3, 5);
  std::vector<Edge> edges;
  for (int u = 0; u < nodes; ++u)
    for (int v = u + 1; v < nodes; ++v)
      if (static_cast<int>(edges.size()) < max_edges && g.coin(2, 3)) edges.push_back({u, v});
  if (edges.empty()) edges.push_back({0, 1});
  return matching_system(nodes, edges);
}

inline IndependenceSystem random_knapsack(Gen& g, int n) {
  std::vector<Rational> sizes;
  for (int e = 0; e < n; ++e) sizes.push_back(R(g.between(1, 6), 3));
  return knapsack_system(sizes, R(g.between(3, 12), 3));
}

/// Mixes the concrete families; n is the ground size except for matchings.
inline IndependenceSystem random_system(Gen& g, int n) {
  switch (g.below(5)) {
    case 0: return random_explicit(g, n);
    case 1: return random_partition(g, n);
    case 2: return random_matching(g, n);
    case 3: return random_knapsack(g, n);
    default: {
      std::vector<IndependenceSystem> parts{random_partition(g, n), random_partition(g, n)};
      return matroid_intersection(parts);
    }
  }
}

inline Objective random_additive(Gen& g, int n) {
  std::vector<Rational> w;
  for (int e = 0; e < n; ++e) w.push_back(R(g.between(1, 40), g.between(1, 4)));
  return additive_objective(w);
}

inline Objective random_coverage(Gen& g, int n) {
  const int universe = g.between(2, 6);
  std::vector<ElementSet> covers;
  for (int e = 0; e < n; ++e) covers.push_back(g.subset(universe));
  std::vector<Rational> weights;
  for (int u = 0; u < universe; ++u) weights.push_back(R(g.between(1, 9), g.between(1, 3)));
  return coverage_objective(covers, weights);
}

inline Objective random_block_sum(Gen& g, int n) {
  const int blocks = std::min(n, 2);
  std::vector<Bits> bits(blocks, 0);
  for (int e = 0; e < n; ++e) bits[e % blocks] |= Bits{1} << e;
  std::vector<ElementSet> parts;
  std::vector<Objective> comps;
  for (int b = 0; b < blocks; ++b) {
    parts.push_back(ElementSet(bits[b]));
    comps.push_back(random_coverage(g, parts.back().size()));
  }
  return block_sum_objective(n, parts, comps);
}

inline Objective random_submodular(Gen& g, int n) {
  switch (g.below(3)) {
    case 0: return random_additive(g, n);
    case 1: return random_coverage(g, n);
    default: return random_block_sum(g, n);
  }
}

// Naive oracles -------------------------------------------------------------

inline std::vector<ElementSet> naive_independent(const IndependenceSystem& sys) {
  std::vector<ElementSet> out;
  for (Bits m = 0; m < (Bits{1} << sys.ground_size()); ++m)
    if (sys.is_independent(ElementSet(m))) out.push_back(ElementSet(m));
  return out;
}

inline bool naive_subset(Bits a, Bits b) { return (a & ~b) == 0; }

/// Max over Y of (largest base)/(smallest base), skipping Y without a
/// nonempty base.
inline Rational naive_p_system(const IndependenceSystem& sys) {
  const int n = sys.ground_size();
  Rational best = 1;
  for (Bits y = 0; y < (Bits{1} << n); ++y) {
    int lo = INT_MAX;
    int hi = 0;
    for (Bits j = 0; j < (Bits{1} << n); ++j) {
      if (!naive_subset(j, y) || !sys.is_independent(ElementSet(j))) continue;
      bool maximal = true;
      for (int e = 0; e < n && maximal; ++e) {
        const Bits bit = Bits{1} << e;
        if ((y & bit) && !(j & bit) && sys.is_independent(ElementSet(j | bit))) maximal = false;
      }
      if (!maximal) continue;
      const int size = std::popcount(j);
      lo = std::min(lo, size);
      hi = std::max(hi, size);
    }
    if (lo > 0 && lo != INT_MAX) best = std::max(best, R(hi, lo));
  }
  return best;
}

/// Smallest p such that every (A ⊆ B, e) triple has a Z of size <= p.
/// Z = B\A always works, so the answer is at most n.
inline int naive_p_extendibility(const IndependenceSystem& sys) {
  const int n = sys.ground_size();
  int worst = 0;
  const auto ind = [&](Bits m) { return sys.is_independent(ElementSet(m)); };
  for (Bits b = 0; b < (Bits{1} << n); ++b) {
    if (!ind(b)) continue;
    for (int e = 0; e < n; ++e) {
      const Bits eb = Bits{1} << e;
      if (b & eb) continue;
      for (Bits a = 0; a < (Bits{1} << n); ++a) {
        if (!naive_subset(a, b) || !ind(a | eb)) continue;
        int need = INT_MAX;
        for (Bits z = 0; z < (Bits{1} << n); ++z)
          if (naive_subset(z, b & ~a) && ind((b & ~z) | eb)) need = std::min(need, std::popcount(z));
        worst = std::max(worst, need);
      }
    }
  }
  return std::max(1, worst);
}

struct NaiveOptimum {
  ElementSet set;
  Rational value;
  int ties = 0;
};

inline NaiveOptimum naive_optimum(const IndependenceSystem& sys, const Objective& obj) {
  NaiveOptimum best{ElementSet{}, Rational(-1), 0};
  for (ElementSet s : naive_independent(sys)) {
    const Rational v = obj.value(s);
    if (v > best.value) best = {s, v, 1};
    else if (v == best.value) ++best.ties;
  }
  return best;
}

/// Plain greedy with lowest-id tie-breaking.
inline ElementSet naive_greedy(const IndependenceSystem& sys, const Objective& obj) {
  ElementSet s;
  for (;;) {
    int pick = -1;
    Rational best;
    for (int e = 0; e < sys.ground_size(); ++e) {
      if (s.contains(e) || !sys.is_independent(s.with(e))) continue;
      const Rational gain = obj.value(s.with(e)) - obj.value(s);
      if (pick < 0 || gain > best) {
        pick = e;
        best = gain;
      }
    }
    if (pick < 0) return s;
    s = s.with(pick);
  }
}

/// True iff no independent T with |S\T| <= p, |T\S| <= q beats S.
inline bool naive_swap_stable(const IndependenceSystem& sys, const Objective& obj, ElementSet s, int p, int q) {
  const Rational v = obj.value(s);
  for (Bits t = 0; t < (Bits{1} << sys.ground_size()); ++t) {
    const ElementSet ts(t);
    if ((s - ts).size() <= p && (ts - s).size() <= q && sys.is_independent(ts) && obj.value(ts) > v) return false;
  }
  return true;
}

}  // namespace support
