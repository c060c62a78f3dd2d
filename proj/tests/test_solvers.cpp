#include <doctest.h>

#include <numeric>
#include <set>

#include "substab/analysis.hpp"
#include "substab/errors.hpp"
#include "substab/scenarios.hpp"
#include "substab/solvers.hpp"
#include "support.hpp"

using namespace substab;
using support::R;

namespace {

LocalSearchConfig from(ElementSet start, int p, int q = 1) {
  LocalSearchConfig cfg;
  cfg.remove_cap = p;
  cfg.add_cap = q;
  cfg.start = StartKind::explicit_set;
  cfg.initial_set = start;
  return cfg;
}

void check_trace(const IndependenceSystem& sys, const Objective& obj, const SolveTrace& t) {
  CHECK(t.picks.size() == t.deltas.size());
  CHECK(std::accumulate(t.deltas.begin(), t.deltas.end(), Rational(0)) == t.final_value);
  CHECK(value(obj, t.final_set) == t.final_value);
  ElementSet prefix;
  for (std::size_t i = 0; i < t.picks.size(); ++i) {
    CHECK(t.deltas[i] >= 0);
    CHECK(t.deltas[i] == marginal(obj, prefix, t.picks[i]));
    prefix = prefix.with(t.picks[i]);
    CHECK(sys.is_independent(prefix));
  }
  CHECK(prefix == t.final_set);
}

}  // namespace

TEST_CASE("greedy examples") {
  const Instance path = matching_path_instance(R(1, 10));
  const SolveTrace g = greedy(path.system, path.objective);
  CHECK(g.picks == std::vector<ElementId>{1});
  CHECK(g.final_value == R(11, 10));

  const Instance knap = knapsack_instance(3, R(1, 10));
  const SolveTrace k = greedy(knap.system, knap.objective);
  CHECK(k.picks == std::vector<ElementId>{0, 1, 2, 3});
  CHECK(k.final_value == R(71, 10));

  const Instance card = cardinality_instance(2, R(1, 100));
  const SolveTrace c = greedy(card.system, card.objective);
  CHECK(c.picks == std::vector<ElementId>{0, 1});
  CHECK(c.final_value == R(3, 4) + R(1, 100));

  // Zero-marginal elements are still added.
  const SolveTrace z = greedy(uniform_matroid(3, 3), additive_objective({R(1), R(0), R(0)}));
  CHECK(z.final_set == ElementSet::full(3));
  check_trace(uniform_matroid(3, 3), additive_objective({R(1), R(0), R(0)}), z);
}

TEST_CASE("greedy tie-breaking policies") {
  const auto sys = uniform_matroid(4, 1);
  const Objective flat = additive_objective({R(1), R(1), R(1), R(1)});
  CHECK(greedy(sys, flat).picks == std::vector<ElementId>{0});
  std::set<ElementId> seen;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const SolveTrace t = greedy(sys, flat, {TieBreak::seeded_random, seed});
    CHECK(t.picks.size() == 1);
    CHECK(greedy(sys, flat, {TieBreak::seeded_random, seed}).picks == t.picks);
    seen.insert(t.picks[0]);
  }
  CHECK(seen.size() > 1);
}

TEST_CASE("greedy_alpha") {
  const Instance path = matching_path_instance(R(1, 10));
  CHECK_THROWS_AS(greedy_alpha(path.system, path.objective, R(0), 1), InvalidArgument);
  CHECK_THROWS_AS(greedy_alpha(path.system, path.objective, R(3, 2), 1), InvalidArgument);
  // alpha = 1 has no freedom here: the unique best edge.
  CHECK(greedy_alpha(path.system, path.objective, R(1), 5).final_set == ElementSet::of({1}));
  // alpha = 1/2 admits every edge first; some seed picks e1 and recovers the optimum.
  bool recovered = false;
  bool fooled = false;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SolveTrace t = greedy_alpha(path.system, path.objective, R(1, 2), seed);
    check_trace(path.system, path.objective, t);
    recovered |= t.final_set == ElementSet::of({0, 2});
    fooled |= t.final_set == ElementSet::of({1});
  }
  CHECK(recovered);
  CHECK(fooled);

  // Every pick is within alpha of the best available marginal.
  support::Gen g(3);
  for (int round = 0; round < 30; ++round) {
    const int n = g.between(2, 8);
    const IndependenceSystem sys = support::random_system(g, n);
    const Objective f = support::random_submodular(g, sys.ground_size());
    const Rational alpha = R(g.between(1, 3), 3);
    const SolveTrace t = greedy_alpha(sys, f, alpha, round);
    check_trace(sys, f, t);
    CHECK(is_maximal(sys, t.final_set));
    ElementSet prefix;
    for (ElementId e : t.picks) {
      Rational best = 0;
      for (ElementId x : feasible_extensions(sys, prefix)) best = std::max(best, marginal(f, prefix, x));
      CHECK(marginal(f, prefix, e) >= alpha * best);
      prefix = prefix.with(e);
    }
  }
}

TEST_CASE("local search examples") {
  const Instance lb = ab_lower_bound_instance(8, 12, 2, R(3, 2));
  const SolveTrace a = local_search(lb.system, lb.objective, from(ElementSet::full(8), 2));
  CHECK(a.final_set == ElementSet::full(8));
  CHECK(a.final_value == 8);
  CHECK(a.iterations == 0);

  const Instance fig = figure_counter_instance(R(1, 100));
  // From {a1, a2} a (2,1)-swap to {a2, b} already improves: 1+eps+2 > 2+2eps.
  const auto swap = best_improving_swap(fig.system, fig.objective, ElementSet::of({0, 1}), 2, 1);
  REQUIRE(swap.has_value());
  CHECK(swap->value > 2 + 2 * R(1, 100));
  CHECK(fig.system.is_independent(swap->result));

  const Instance two = two_system_instance(6, R(1, 100000), R(1, 100000000));
  const SolveTrace t = local_search(two.system, two.objective, from(ElementSet::full(6), 2));
  CHECK(t.final_set == ElementSet::full(6));

  // Explicit starts must be independent.
  CHECK_THROWS_AS(local_search(lb.system, lb.objective, from(ElementSet::full(20), 2)), PreconditionError);
  CHECK_THROWS_AS(local_search(lb.system, lb.objective, from({}, 0, 0)), InvalidArgument);
}

TEST_CASE("local search start kinds and budget") {
  const Instance path = matching_path_instance(R(1, 10));
  LocalSearchConfig cfg;
  cfg.start = StartKind::empty_maximal;
  CHECK(lowest_id_maximal(path.system) == ElementSet::of({0, 2}));
  CHECK(local_search(path.system, path.objective, cfg).final_set == ElementSet::of({0, 2}));
  cfg.start = StartKind::greedy_seeded;
  // {e2} is (1,1)-stable: swapping it for e1 or e3 loses value.
  CHECK(local_search(path.system, path.objective, cfg).final_set == ElementSet::of({1}));
  cfg.remove_cap = 1;
  cfg.add_cap = 2;
  CHECK(local_search(path.system, path.objective, cfg).final_set == ElementSet::of({0, 2}));

  const auto sys = uniform_matroid(6, 6);
  const Objective w = additive_objective({R(1), R(2), R(3), R(4), R(5), R(6)});
  LocalSearchConfig tight = from({}, 1);
  tight.max_iterations = 2;
  const SolveTrace t = local_search(sys, w, tight);
  CHECK(t.budget_exhausted);
  CHECK(t.iterations == 2);
  tight.max_iterations.reset();
  CHECK_FALSE(local_search(sys, w, tight).budget_exhausted);
}

TEST_CASE("exact optimum examples") {
  const Instance path = matching_path_instance(R(1, 10));
  const OptimumResult o = exact_optimum(path.system, path.objective);
  CHECK(o.set == ElementSet::of({0, 2}));
  CHECK(o.value == 2);
  CHECK(o.unique);

  const Instance fig = figure_counter_instance(R(1, 100));
  const OptimumResult f = exact_optimum(fig.system, fig.objective);
  CHECK(f.set == ElementSet::of({2, 3, 4, 5}));
  CHECK(f.value == 8);
  CHECK(f.unique);

  const OptimumResult e = exact_optimum(uniform_matroid(3, 0), additive_objective({R(1), R(2), R(3)}));
  CHECK(e.set.empty());
  CHECK(e.value == 0);

  const OptimumResult tie = exact_optimum(uniform_matroid(2, 1), additive_objective({R(1), R(1)}));
  CHECK_FALSE(tie.unique);
  CHECK(tie.tie_count == 2);
  CHECK(tie.set == ElementSet::of({0}));
}

TEST_CASE("all local optima examples") {
  const Objective w = additive_objective({R(3), R(1), R(4), R(2)});
  const auto top = all_local_optima(uniform_matroid(4, 2), w, 1, 1);
  REQUIRE(top.size() == 1);
  CHECK(top[0].set == ElementSet::of({0, 2}));

  const Instance path = matching_path_instance(R(1, 10));
  const auto lo = all_local_optima(path.system, path.objective, 1, 1);
  std::vector<ElementSet> sets;
  for (const auto& l : lo) sets.push_back(l.set);
  CHECK(sets == std::vector<ElementSet>{ElementSet::of({1}), ElementSet::of({0, 2})});

  const Instance fig = figure_counter_instance(R(1, 100));
  const auto flo = all_local_optima(fig.system, fig.objective, 2, 1);
  bool has_b = false;
  for (const auto& l : flo) has_b |= l.set == ElementSet::of({2, 3, 4, 5});
  CHECK(has_b);
}

TEST_CASE("local search hypothesis classification") {
  CHECK(classify_local_search(2, 2, 1).recovery);
  CHECK(classify_local_search(2, 3, 2).approximation);
  CHECK_FALSE(classify_local_search(2, 1, 1).recovery);
  CHECK_FALSE(classify_local_search(std::nullopt, 2, 1).approximation);
  CHECK_FALSE(classify_local_search(2, 1, 1).note.empty());
}

TEST_CASE("property: solvers against naive oracles") {
  support::Gen g(77);
  for (int round = 0; round < 50; ++round) {
    const int n = g.between(1, 8);
    const IndependenceSystem sys = support::random_system(g, n);
    const Objective f = support::random_submodular(g, sys.ground_size());
    CAPTURE(round);

    const SolveTrace gr = greedy(sys, f);
    check_trace(sys, f, gr);
    CHECK(gr.final_set == support::naive_greedy(sys, f));
    CHECK(is_maximal(sys, gr.final_set));

    const auto naive = support::naive_optimum(sys, f);
    const OptimumResult opt = exact_optimum(sys, f);
    CHECK(opt.value == naive.value);
    CHECK(opt.tie_count == static_cast<std::size_t>(naive.ties));
    CHECK(opt.unique == (naive.ties == 1));
    CHECK(exact_optimum(sys, f, Exec::serial).set == opt.set);

    const int p = g.between(1, 2);
    const int q = g.between(1, 2);
    LocalSearchConfig cfg;
    cfg.remove_cap = p;
    cfg.add_cap = q;
    const SolveTrace ls = local_search(sys, f, cfg);
    CHECK_FALSE(ls.budget_exhausted);
    CHECK(sys.is_independent(ls.final_set));
    CHECK(support::naive_swap_stable(sys, f, ls.final_set, p, q));
    CHECK_FALSE(best_improving_swap(sys, f, ls.final_set, p, q).has_value());

    const auto optima = all_local_optima(sys, f, p, q);
    CHECK(all_local_optima(sys, f, p, q, Exec::serial).size() == optima.size());
    std::size_t expected = 0;
    for (ElementSet s : support::naive_independent(sys))
      if (support::naive_swap_stable(sys, f, s, p, q)) ++expected;
    CHECK(optima.size() == expected);
    bool found = false;
    for (const auto& lo : optima) found |= lo.set == ls.final_set;
    CHECK(found);

    // Greedy ordering deltas sum to the value of the ordered set.
    const ElementSet a = g.subset(sys.ground_size());
    const GreedyOrdering go = greedy_ordering(f, a);
    CHECK(std::accumulate(go.deltas.begin(), go.deltas.end(), Rational(0)) == value(f, a));
  }
}

TEST_CASE("property: (p,1)-local optima approximation on p-extendible systems") {
  support::Gen g(1234);
  for (int round = 0; round < 30; ++round) {
    const int n = g.between(2, 8);
    const IndependenceSystem sys = support::random_system(g, n);
    const Objective f = support::random_submodular(g, sys.ground_size());
    const int p = *p_extendibility(sys);
    const bool additive = additive_weights(f).has_value();
    const Rational opt = exact_optimum(sys, f).value;
    for (const auto& lo : all_local_optima(sys, f, p, 1))
      CHECK(lo.value * (additive ? p * p : p * p + 1) >= opt);
  }
}
