#include "substab/analysis.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <vector>

#include "substab/errors.hpp"

namespace substab {
namespace {

using Bits = ElementSet::Bits;

struct Ratio {
  long long num = 1;
  long long den = 1;
};

bool exceeds(Ratio a, Ratio b) { return a.num * b.den > b.num * a.den; }

Rational to_rational(Ratio r) { return make_rational(static_cast<long>(r.num), static_cast<long>(r.den)); }

// Base-ratio scan of the minor sys/contracted restricted to `kept`, read from
// a precomputed table. A base J of Y is an independent J ⊆ Y whose blocked
// set covers Y\J.
Ratio p_system_kernel(const IndependenceTable& table, ElementSet kept, ElementSet contracted,
                      bool parallel) {
  const int g = kept.size();
  const Bits total = Bits{1} << g;
  std::vector<std::uint8_t> ind(total);
  std::vector<Bits> blocked(total, 0);
  for (Bits l = 0; l < total; ++l) ind[l] = table[expand(l, kept) | contracted] ? 1 : 0;
  for (Bits l = 0; l < total; ++l) {
    if (!ind[l]) continue;
    for (int e = 0; e < g; ++e) {
      const Bits bit = Bits{1} << e;
      if (!(l & bit) && !ind[l | bit]) blocked[l] |= bit;
    }
  }

  Ratio best;
  const long long count = static_cast<long long>(total);
#pragma omp parallel if (parallel)
  {
    Ratio local;
#pragma omp for schedule(dynamic, 64)
    for (long long y = 0; y < count; ++y) {
      const Bits ymask = static_cast<Bits>(y);
      int max_base = 0;
      int min_base = INT_MAX;
      for_each_subset(ElementSet(ymask), [&](ElementSet j) {
        const Bits jb = j.bits();
        if (ind[jb] && ((ymask & ~jb) & ~blocked[jb]) == 0) {
          const int size = std::popcount(jb);
          max_base = std::max(max_base, size);
          min_base = std::min(min_base, size);
        }
      });
      if (min_base > 0 && min_base != INT_MAX) {
        const Ratio r{max_base, min_base};
        if (exceeds(r, local)) local = r;
      }
    }
#pragma omp critical(substab_p_system)
    if (exceeds(local, best)) best = local;
  }
  return best;
}

Rational p_system_reference(const IndependenceSystem& sys) {
  Ratio best;
  const Bits total = Bits{1} << sys.ground_size();
  for (Bits y = 0; y < total; ++y) {
    const ElementSet ys(y);
    int max_base = 0;
    int min_base = INT_MAX;
    for_each_subset(ys, [&](ElementSet j) {
      if (!sys.is_independent(j)) return;
      for (ElementId e : ys - j)
        if (sys.is_independent(j.with(e))) return;
      max_base = std::max(max_base, j.size());
      min_base = std::min(min_base, j.size());
    });
    if (min_base > 0 && min_base != INT_MAX) {
      const Ratio r{max_base, min_base};
      if (exceeds(r, best)) best = r;
    }
  }
  return to_rational(best);
}

// Largest minimal |Z| over all (A, B, e) triples; 0 for a system with no
// triple needing a removal.
int max_extension_need(const IndependenceTable& table, int n) {
  const long long total = 1LL << n;
  int worst = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : worst)
  for (long long bm = 0; bm < total; ++bm) {
    const ElementSet b(static_cast<Bits>(bm));
    if (!table[b]) continue;
    const int bs = b.size();
    const Bits local_total = Bits{1} << bs;
    const Bits local_full = local_total - 1;
    const std::vector<ElementId> ids = b.ids();
    std::vector<Bits> global(local_total, 0);
    for (Bits l = 1; l < local_total; ++l)
      global[l] = global[l & (l - 1)] | (Bits{1} << ids[std::countr_zero(l)]);
    std::vector<int> m(local_total);
    for (ElementId e = 0; e < n; ++e) {
      if (b.contains(e) || !table[ElementSet::singleton(e)] || table[b.with(e)]) continue;
      const Bits eb = Bits{1} << e;
      for (Bits l = 0; l < local_total; ++l) {
        int best = table.test((b.bits() & ~global[l]) | eb) ? std::popcount(l) : INT_MAX;
        for (Bits rest = l; rest != 0 && best > 0; rest &= rest - 1)
          best = std::min(best, m[l ^ (rest & (~rest + 1))]);
        m[l] = best;
      }
      for (Bits a = 0; a < local_total; ++a)
        if (table.test(global[a] | eb)) worst = std::max(worst, m[local_full ^ a]);
    }
  }
  return worst;
}

bool extendible_at(const IndependenceSystem& sys, int p) {
  const ElementSet ground = sys.ground();
  bool ok = true;
  for_each_subset(ground, [&](ElementSet b) {
    if (!ok || !sys.is_independent(b)) return;
    for (ElementId e : ground - b) {
      for_each_subset(b, [&](ElementSet a) {
        if (!ok || !sys.is_independent(a.with(e))) return;
        bool found = false;
        for_each_subset(b - a, [&](ElementSet z) {
          if (!found && z.size() <= p && sys.is_independent((b - z).with(e))) found = true;
        });
        if (!found) ok = false;
      });
      if (!ok) return;
    }
  });
  return ok;
}

Rational hereditary_reference(const IndependenceSystem& sys) {
  Rational best = 1;
  for_each_subset(sys.ground(), [&](ElementSet y) {
    best = std::max(best, p_system_reference(deletion(sys, y)));
    if (sys.is_independent(y)) best = std::max(best, p_system_reference(contraction(sys, y)));
  });
  return best;
}

}  // namespace

Rational p_system_parameter(const IndependenceSystem& sys, Exec exec) {
  require_cap(sys.ground_size(), enumeration_cap(), "p_system_parameter");
  if (exec == Exec::serial) return p_system_reference(sys);
  const IndependenceTable table(sys, exec);
  return to_rational(p_system_kernel(table, sys.ground(), ElementSet{}, true));
}

std::optional<int> p_extendibility(const IndependenceSystem& sys, std::optional<int> cap,
                                   Exec exec) {
  require_cap(sys.ground_size(), enumeration_cap(), "p_extendibility");
  const int limit = cap.value_or(std::max(1, sys.ground_size()));
  if (limit < 1) throw InvalidArgument("p_extendibility cap must be >= 1");
  if (exec == Exec::serial) {
    for (int p = 1; p <= limit; ++p)
      if (extendible_at(sys, p)) return p;
    return std::nullopt;
  }
  const IndependenceTable table(sys, exec);
  const int p = std::max(1, max_extension_need(table, sys.ground_size()));
  if (p > limit) return std::nullopt;
  return p;
}

Rational hereditary_parameter(const IndependenceSystem& sys, Exec exec) {
  require_cap(sys.ground_size(), hereditary_cap(), "hereditary_parameter");
  if (exec == Exec::serial) return hereditary_reference(sys);

  // Deleting elements only shrinks the family of Y, and deleting after a
  // contraction is again such a restriction, so contractions dominate.
  const IndependenceTable table(sys, exec);
  std::vector<ElementSet> contractions;
  for_each_subset(sys.ground(), [&](ElementSet c) {
    if (table[c]) contractions.push_back(c);
  });
  Ratio best;
  const long long count = static_cast<long long>(contractions.size());
#pragma omp parallel
  {
    Ratio local;
#pragma omp for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
      const ElementSet c = contractions[i];
      const Ratio r = p_system_kernel(table, sys.ground() - c, c, false);
      if (exceeds(r, local)) local = r;
    }
#pragma omp critical(substab_hereditary)
    if (exceeds(local, best)) best = local;
  }
  return to_rational(best);
}

bool verify_hereditary_extendible_equivalence(const IndependenceSystem& sys, Exec exec) {
  const Rational h = hereditary_parameter(sys, exec);
  const std::optional<int> p = p_extendibility(sys, std::nullopt, exec);
  if (!p) return false;
  const mpz_class floor_h = h.get_num() / h.get_den();
  return floor_h == *p;
}

SystemProfile profile_system(const IndependenceSystem& sys, Exec exec) {
  SystemProfile profile;
  profile.downward_closed = !find_closure_violation(sys, exec).has_value();
  profile.p_system = p_system_parameter(sys, exec);
  profile.p_extendible = p_extendibility(sys, std::nullopt, exec);
  if (sys.ground_size() <= hereditary_cap()) profile.p_hereditary = hereditary_parameter(sys, exec);
  return profile;
}

}  // namespace substab
