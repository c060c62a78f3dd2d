#include "substab/solvers.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "substab/errors.hpp"

namespace substab {
namespace {

using Bits = ElementSet::Bits;

// Subsets of `pool` with at most k elements, in increasing bitmask order.
std::vector<Bits> small_subsets(ElementSet pool, int k) {
  std::vector<Bits> out;
  const std::vector<ElementId> ids = pool.ids();
  auto rec = [&](auto&& self, std::size_t from, Bits acc, int left) -> void {
    out.push_back(acc);
    if (left == 0) return;
    for (std::size_t i = from; i < ids.size(); ++i)
      self(self, i + 1, acc | (Bits{1} << ids[i]), left - 1);
  };
  rec(rec, 0, 0, k);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t default_budget(int n) {
  const int shift = std::min(n, 40);
  return std::size_t{10} << shift;
}

void check_caps(int p, int q) {
  if (p < 0 || q < 0 || p + q == 0)
    throw InvalidArgument("local search needs p, q >= 0 and a nonempty neighborhood");
}

void check_shapes(const IndependenceSystem& sys, const Objective& obj) {
  if (sys.ground_size() != obj.ground_size())
    throw InvalidArgument("system and objective ground sizes differ");
}

// Picks among candidates whose marginal clears `threshold` (relative to the
// best) per the policy. candidates are in increasing id order.
template <class Select>
SolveTrace run_greedy(const IndependenceSystem& sys, const Objective& obj, Select&& select) {
  check_shapes(sys, obj);
  SolveTrace trace;
  ElementSet s;
  Rational current = obj.value(s);
  for (;;) {
    const std::vector<ElementId> feasible = feasible_extensions(sys, s);
    if (feasible.empty()) break;
    std::vector<Rational> gains;
    gains.reserve(feasible.size());
    for (ElementId e : feasible) gains.push_back(obj.value(s.with(e)) - current);
    const std::size_t idx = select(feasible, gains);
    const ElementId e = feasible[idx];
    s = s.with(e);
    current += gains[idx];
    trace.picks.push_back(e);
    trace.deltas.push_back(gains[idx]);
    ++trace.iterations;
  }
  trace.final_set = s;
  trace.final_value = current;
  return trace;
}

}  // namespace

SolveTrace greedy(const IndependenceSystem& sys, const Objective& obj, TieBreakPolicy tie_break) {
  std::mt19937_64 rng(tie_break.seed);
  return run_greedy(sys, obj, [&](const std::vector<ElementId>&, const std::vector<Rational>& gains) {
    const Rational best = *std::max_element(gains.begin(), gains.end());
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < gains.size(); ++i)
      if (gains[i] == best) ties.push_back(i);
    if (tie_break.mode == TieBreak::lexicographic || ties.size() == 1) return ties.front();
    return ties[rng() % ties.size()];
  });
}

SolveTrace greedy_alpha(const IndependenceSystem& sys, const Objective& obj, const Rational& alpha,
                        std::uint64_t seed) {
  if (alpha <= 0 || alpha > 1) throw InvalidArgument("greedy_alpha needs 0 < alpha <= 1");
  std::mt19937_64 rng(seed);
  return run_greedy(sys, obj, [&](const std::vector<ElementId>&, const std::vector<Rational>& gains) {
    const Rational threshold = alpha * *std::max_element(gains.begin(), gains.end());
    std::vector<std::size_t> admissible;
    for (std::size_t i = 0; i < gains.size(); ++i)
      if (gains[i] >= threshold) admissible.push_back(i);
    return admissible[rng() % admissible.size()];
  });
}

ElementSet lowest_id_maximal(const IndependenceSystem& sys) {
  ElementSet s;
  for (ElementId e = 0; e < sys.ground_size(); ++e)
    if (sys.is_independent(s.with(e))) s = s.with(e);
  return s;
}

std::optional<Swap> best_improving_swap(const IndependenceSystem& sys, const Objective& obj,
                                        ElementSet s, int p, int q) {
  check_caps(p, q);
  check_shapes(sys, obj);
  const Rational base = obj.value(s);
  const std::vector<Bits> removals = small_subsets(s, p);
  const std::vector<Bits> additions = small_subsets(sys.ground() - s, q);
  std::optional<Swap> best;
  for (Bits r : removals) {
    for (Bits a : additions) {
      if (r == 0 && a == 0) continue;
      const ElementSet t = (s - ElementSet(r)) | ElementSet(a);
      if (!sys.is_independent(t)) continue;
      Rational v = obj.value(t);
      if (v > base && (!best || v > best->value))
        best = Swap{ElementSet(r), ElementSet(a), t, std::move(v)};
    }
  }
  return best;
}

GreedyOrdering greedy_ordering(const Objective& obj, ElementSet a) {
  GreedyOrdering out;
  ElementSet prefix;
  Rational current = obj.value(prefix);
  while (prefix != a) {
    std::optional<ElementId> pick;
    Rational best;
    for (ElementId e : a - prefix) {
      Rational gain = obj.value(prefix.with(e)) - current;
      if (!pick || gain > best) {
        pick = e;
        best = std::move(gain);
      }
    }
    prefix = prefix.with(*pick);
    current += best;
    out.order.push_back(*pick);
    out.deltas.push_back(best);
  }
  return out;
}

SolveTrace local_search(const IndependenceSystem& sys, const Objective& obj,
                        const LocalSearchConfig& cfg) {
  check_caps(cfg.remove_cap, cfg.add_cap);
  check_shapes(sys, obj);
  ElementSet s;
  switch (cfg.start) {
    case StartKind::explicit_set:
      if (!sys.is_independent(cfg.initial_set))
        throw PreconditionError("local search start " + cfg.initial_set.to_string() +
                                " is not independent");
      s = cfg.initial_set;
      break;
    case StartKind::greedy_seeded:
      s = greedy(sys, obj).final_set;
      break;
    case StartKind::empty_maximal:
      s = lowest_id_maximal(sys);
      break;
  }
  const std::size_t budget = cfg.max_iterations.value_or(default_budget(sys.ground_size()));
  SolveTrace trace;
  for (;;) {
    auto move = best_improving_swap(sys, obj, s, cfg.remove_cap, cfg.add_cap);
    if (!move) break;
    if (trace.iterations == budget) {
      trace.budget_exhausted = true;
      break;
    }
    s = move->result;
    ++trace.iterations;
  }
  GreedyOrdering ordering = greedy_ordering(obj, s);
  trace.picks = std::move(ordering.order);
  trace.deltas = std::move(ordering.deltas);
  trace.final_set = s;
  trace.final_value = obj.value(s);
  return trace;
}

OptimumResult exact_optimum(const IndependenceSystem& sys, const Objective& obj, Exec exec) {
  check_shapes(sys, obj);
  const IndependenceTable table(sys, exec);
  const long long total = 1LL << sys.ground_size();

  struct Best {
    bool any = false;
    Rational value;
    Bits mask = 0;
    std::size_t ties = 0;
    void offer(const Rational& v, Bits m, std::size_t count) {
      if (!any || v > value) {
        any = true;
        value = v;
        mask = m;
        ties = count;
      } else if (v == value) {
        mask = std::min(mask, m);
        ties += count;
      }
    }
  };

  Best best;
  if (exec == Exec::serial) {
    for (long long m = 0; m < total; ++m)
      if (table.test(static_cast<Bits>(m)))
        best.offer(obj.value(ElementSet(static_cast<Bits>(m))), static_cast<Bits>(m), 1);
  } else {
#pragma omp parallel
    {
      Best local;
#pragma omp for schedule(static)
      for (long long m = 0; m < total; ++m)
        if (table.test(static_cast<Bits>(m)))
          local.offer(obj.value(ElementSet(static_cast<Bits>(m))), static_cast<Bits>(m), 1);
#pragma omp critical(substab_optimum)
      if (local.any) best.offer(local.value, local.mask, local.ties);
    }
  }
  return OptimumResult{ElementSet(best.mask), best.value, best.ties == 1, best.ties};
}

std::vector<LocalOptimum> all_local_optima(const IndependenceSystem& sys, const Objective& obj,
                                           int p, int q, Exec exec) {
  check_caps(p, q);
  check_shapes(sys, obj);
  const IndependenceTable table(sys, exec);
  const std::vector<Rational> values = tabulate(obj, exec);
  const ElementSet ground = sys.ground();
  const long long total = 1LL << sys.ground_size();
  std::vector<std::uint8_t> stable(static_cast<std::size_t>(total), 0);

  auto is_stable = [&](Bits s) {
    const ElementSet set(s);
    const std::vector<Bits> removals = small_subsets(set, p);
    const std::vector<Bits> additions = small_subsets(ground - set, q);
    for (Bits r : removals)
      for (Bits a : additions) {
        if (r == 0 && a == 0) continue;
        const Bits t = (s & ~r) | a;
        if (table.test(t) && values[t] > values[s]) return false;
      }
    return true;
  };

#pragma omp parallel for schedule(dynamic, 64) if (exec == Exec::parallel)
  for (long long m = 0; m < total; ++m)
    if (table.test(static_cast<Bits>(m))) stable[m] = is_stable(static_cast<Bits>(m)) ? 1 : 0;

  std::vector<LocalOptimum> out;
  for (long long m = 0; m < total; ++m)
    if (stable[m]) out.push_back({ElementSet(static_cast<Bits>(m)), values[m]});
  return out;
}

LocalSearchHypothesis classify_local_search(std::optional<int> p_extendible, int p, int q) {
  LocalSearchHypothesis h;
  if (!p_extendible) {
    h.note = "system is not p-extendible within the cap; no guarantee applies";
    return h;
  }
  const int pe = *p_extendible;
  if (p >= pe && q >= 1) {
    h.approximation = true;
    h.recovery = true;
    h.note = "neighborhood contains (" + std::to_string(pe) + ",1)-swaps of a " +
             std::to_string(pe) + "-extendible system";
  } else {
    h.note = "(" + std::to_string(p) + "," + std::to_string(q) +
             ")-swaps are weaker than (" + std::to_string(pe) + ",1) on a " +
             std::to_string(pe) + "-extendible system; no guarantee applies";
  }
  return h;
}

}  // namespace substab
