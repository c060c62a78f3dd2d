#include "substab/systems.hpp"

#include <algorithm>
#include <string>

#include "substab/errors.hpp"

namespace substab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool atsp_independent(int nodes, ElementSet s) {
  std::vector<int> succ(nodes, -1);
  std::vector<int> in_degree(nodes, 0);
  for (ElementId arc : s) {
    const auto [from, to] = atsp_endpoints(nodes, arc);
    if (succ[from] != -1 || in_degree[to] != 0) return false;
    succ[from] = to;
    ++in_degree[to];
  }
  // Degrees are at most one, so components are paths or cycles; only a
  // Hamiltonian cycle may close.
  for (int start = 0; start < nodes; ++start) {
    int v = succ[start];
    int steps = 1;
    while (v != -1 && v != start && steps <= nodes) {
      v = succ[v];
      ++steps;
    }
    if (v == start && steps < nodes) return false;
  }
  return true;
}

void check_within(const IndependenceSystem& sys, ElementSet s, std::string_view op) {
  if (!s.subset_of(sys.ground()))
    throw PreconditionError(std::string(op) + ": set " + s.to_string() +
                            " is not within the ground set of size " +
                            std::to_string(sys.ground_size()));
}

}  // namespace

bool MatroidIntersection::operator==(const MatroidIntersection& other) const {
  return parts == other.parts;
}

bool MinorSystem::operator==(const MinorSystem& other) const {
  return deleted == other.deleted && contracted == other.contracted &&
         *base == *other.base;
}

IndependenceSystem::IndependenceSystem(int ground_size, SystemKind kind)
    : ground_size_(ground_size), kind_(std::move(kind)) {
  if (ground_size < 0 || ground_size > ElementSet::kMaxElements)
    throw InvalidArgument("ground size must be in [0, 64], got " +
                          std::to_string(ground_size));
  const ElementSet ground = this->ground();
  std::visit(
      overloaded{
          [&](const UniformMatroid& k) {
            if (k.rank < 0) throw InvalidArgument("uniform matroid rank must be >= 0");
          },
          [&](const PartitionMatroid& k) {
            if (k.blocks.size() != k.capacities.size())
              throw InvalidArgument("partition matroid needs one capacity per block");
            ElementSet seen;
            for (std::size_t i = 0; i < k.blocks.size(); ++i) {
              if (k.capacities[i] < 0)
                throw InvalidArgument("partition matroid capacities must be >= 0");
              if (k.blocks[i].intersects(seen))
                throw InvalidArgument("partition matroid blocks overlap");
              seen = seen | k.blocks[i];
            }
            if (seen != ground)
              throw InvalidArgument("partition matroid blocks must cover the ground set exactly");
          },
          [&](const MatroidIntersection& k) {
            if (k.parts.empty())
              throw InvalidArgument("matroid intersection needs at least one part");
            for (const auto& part : k.parts)
              if (part.ground_size() != ground_size)
                throw InvalidArgument("intersection parts must share the ground set");
          },
          [&](const MatchingSystem& k) {
            if (static_cast<int>(k.edges.size()) != ground_size)
              throw InvalidArgument("matching system: one element per edge");
            for (const Edge& e : k.edges)
              if (e.u < 0 || e.v < 0 || e.u >= k.nodes || e.v >= k.nodes || e.u == e.v)
                throw InvalidArgument("matching system: bad edge endpoints");
          },
          [&](const AtspSystem& k) {
            if (k.nodes < 2 || k.nodes * (k.nodes - 1) != ground_size)
              throw InvalidArgument("ATSP system on n >= 2 nodes has n(n-1) arcs");
          },
          [&](const KnapsackSystem& k) {
            if (static_cast<int>(k.sizes.size()) != ground_size)
              throw InvalidArgument("knapsack: one size per element");
            for (const auto& size : k.sizes)
              if (size < 0) throw InvalidArgument("knapsack sizes must be nonnegative");
            if (k.budget < 0) throw InvalidArgument("knapsack budget must be nonnegative");
          },
          [&](const TwoSystemCounterexample& k) {
            if (k.n < 0 || k.n % 2 != 0)
              throw InvalidArgument("two-system counterexample needs even n");
            if (k.n + 1 != ground_size || k.special < 0 || k.special > k.n)
              throw InvalidArgument("two-system counterexample has n+1 elements");
          },
          [&](const AbLowerBoundSystem& k) {
            if (k.a_size < 0 || k.b_size < 0 || k.p < 1 ||
                k.a_size + k.b_size != ground_size)
              throw InvalidArgument("A/B lower-bound system: bad sizes or p");
          },
          [&](const ExplicitSystem& k) {
            for (ElementSet s : k.maximal_sets)
              if (!s.subset_of(ground))
                throw InvalidArgument("explicit system set outside ground set");
          },
          [&](const MinorSystem& k) {
            if (!k.base) throw InvalidArgument("minor without base system");
            if (k.deleted.intersects(k.contracted))
              throw InvalidArgument("minor: deleted and contracted sets overlap");
            const ElementSet removed = k.deleted | k.contracted;
            if (!removed.subset_of(k.base->ground()))
              throw InvalidArgument("minor: removed elements outside base ground set");
            if (k.base->ground_size() - removed.size() != ground_size)
              throw InvalidArgument("minor: ground size mismatch");
            if (!k.base->is_independent(k.contracted))
              throw InvalidArgument("minor: contracted set must be independent");
            minor_kept_ = k.base->ground() - removed;
          },
      },
      kind_);
}

std::string_view IndependenceSystem::kind_name() const {
  return std::visit(
      overloaded{
          [](const UniformMatroid&) { return std::string_view("uniform_matroid"); },
          [](const PartitionMatroid&) { return std::string_view("partition_matroid"); },
          [](const MatroidIntersection&) { return std::string_view("matroid_intersection"); },
          [](const MatchingSystem&) { return std::string_view("matching"); },
          [](const AtspSystem&) { return std::string_view("atsp"); },
          [](const KnapsackSystem&) { return std::string_view("knapsack"); },
          [](const TwoSystemCounterexample&) {
            return std::string_view("two_system_counterexample");
          },
          [](const AbLowerBoundSystem&) { return std::string_view("ab_lower_bound"); },
          [](const ExplicitSystem&) { return std::string_view("explicit"); },
          [](const MinorSystem&) { return std::string_view("minor"); },
      },
      kind_);
}

bool IndependenceSystem::is_independent(ElementSet s) const {
  check_within(*this, s, "is_independent");
  return contains_unchecked(s);
}

bool IndependenceSystem::contains_unchecked(ElementSet s) const {
  if (s.empty()) return true;
  return std::visit(
      overloaded{
          [&](const UniformMatroid& k) { return s.size() <= k.rank; },
          [&](const PartitionMatroid& k) {
            for (std::size_t i = 0; i < k.blocks.size(); ++i)
              if ((s & k.blocks[i]).size() > k.capacities[i]) return false;
            return true;
          },
          [&](const MatroidIntersection& k) {
            return std::all_of(k.parts.begin(), k.parts.end(),
                               [&](const IndependenceSystem& part) {
                                 return part.contains_unchecked(s);
                               });
          },
          [&](const MatchingSystem& k) {
            std::vector<char> used(k.nodes, 0);
            for (ElementId id : s) {
              const Edge& e = k.edges[id];
              if (used[e.u] || used[e.v]) return false;
              used[e.u] = used[e.v] = 1;
            }
            return true;
          },
          [&](const AtspSystem& k) { return atsp_independent(k.nodes, s); },
          [&](const KnapsackSystem& k) {
            Rational total = 0;
            for (ElementId id : s) total += k.sizes[id];
            return total <= k.budget;
          },
          [&](const TwoSystemCounterexample& k) {
            if (!s.contains(k.special)) return true;
            return s.size() - 1 <= k.n / 2;
          },
          [&](const AbLowerBoundSystem& k) {
            const ElementSet a_part = ElementSet::full(k.a_size);
            const int in_a = (s & a_part).size();
            const int in_b = s.size() - in_a;
            return in_a + k.p * in_b <= k.a_size || k.p * in_a + in_b <= k.b_size;
          },
          [&](const ExplicitSystem& k) {
            return std::any_of(k.maximal_sets.begin(), k.maximal_sets.end(),
                               [&](ElementSet m) { return s.subset_of(m); });
          },
          [&](const MinorSystem& k) {
            return k.base->contains_unchecked(expand(s.bits(), minor_kept_) |
                                              k.contracted);
          },
      },
      kind_);
}

bool IndependenceSystem::operator==(const IndependenceSystem& other) const {
  return ground_size_ == other.ground_size_ && kind_ == other.kind_;
}

IndependenceSystem uniform_matroid(int ground_size, int rank) {
  return IndependenceSystem(ground_size, UniformMatroid{rank});
}

IndependenceSystem partition_matroid(int ground_size, std::vector<ElementSet> blocks,
                                     std::vector<int> capacities) {
  return IndependenceSystem(ground_size,
                            PartitionMatroid{std::move(blocks), std::move(capacities)});
}

IndependenceSystem matroid_intersection(std::vector<IndependenceSystem> parts) {
  if (parts.empty()) throw InvalidArgument("matroid intersection needs at least one part");
  const int n = parts.front().ground_size();
  return IndependenceSystem(n, MatroidIntersection{std::move(parts)});
}

IndependenceSystem matching_system(int nodes, std::vector<Edge> edges) {
  const int m = static_cast<int>(edges.size());
  return IndependenceSystem(m, MatchingSystem{nodes, std::move(edges)});
}

IndependenceSystem atsp_system(int nodes) {
  return IndependenceSystem(nodes * (nodes - 1), AtspSystem{nodes});
}

IndependenceSystem knapsack_system(std::vector<Rational> sizes, Rational budget) {
  const int n = static_cast<int>(sizes.size());
  return IndependenceSystem(n, KnapsackSystem{std::move(sizes), std::move(budget)});
}

IndependenceSystem two_system_counterexample(int n, std::optional<ElementId> special) {
  return IndependenceSystem(n + 1, TwoSystemCounterexample{n, special.value_or(n)});
}

IndependenceSystem ab_lower_bound_system(int a_size, int b_size, int p) {
  return IndependenceSystem(a_size + b_size, AbLowerBoundSystem{a_size, b_size, p});
}

IndependenceSystem explicit_system(int ground_size, std::vector<ElementSet> maximal_sets) {
  return IndependenceSystem(ground_size, ExplicitSystem{std::move(maximal_sets)});
}

ElementId atsp_arc(int nodes, int from, int to) {
  if (from == to || from < 0 || to < 0 || from >= nodes || to >= nodes)
    throw InvalidArgument("atsp_arc: bad endpoints");
  return from * (nodes - 1) + (to < from ? to : to - 1);
}

std::pair<int, int> atsp_endpoints(int nodes, ElementId arc) {
  const int from = arc / (nodes - 1);
  const int slot = arc % (nodes - 1);
  return {from, slot < from ? slot : slot + 1};
}

bool is_independent(const IndependenceSystem& sys, ElementSet s) {
  return sys.is_independent(s);
}

bool is_maximal(const IndependenceSystem& sys, ElementSet s) {
  if (!sys.is_independent(s)) throw PreconditionError("is_maximal: set is not independent");
  for (ElementId e : sys.ground() - s)
    if (sys.is_independent(s.with(e))) return false;
  return true;
}

std::vector<ElementId> feasible_extensions(const IndependenceSystem& sys, ElementSet s) {
  if (!sys.is_independent(s))
    throw PreconditionError("feasible_extensions: set is not independent");
  std::vector<ElementId> out;
  for (ElementId e : sys.ground() - s)
    if (sys.is_independent(s.with(e))) out.push_back(e);
  return out;
}

std::vector<ElementSet> enumerate_independent_sets(const IndependenceSystem& sys, Exec exec) {
  const IndependenceTable table(sys, exec);
  std::vector<ElementSet> out;
  out.reserve(table.independent_count());
  const ElementSet::Bits total = ElementSet::Bits{1} << sys.ground_size();
  for (ElementSet::Bits m = 0; m < total; ++m)
    if (table.test(m)) out.emplace_back(m);
  return out;
}

IndependenceSystem deletion(const IndependenceSystem& sys, ElementSet y) {
  check_within(sys, y, "deletion");
  if (y.empty()) return sys;
  const int remaining = sys.ground_size() - y.size();
  if (const auto* u = std::get_if<UniformMatroid>(&sys.kind()))
    return uniform_matroid(remaining, u->rank);
  if (const auto* k = std::get_if<KnapsackSystem>(&sys.kind())) {
    std::vector<Rational> sizes;
    for (ElementId e : sys.ground() - y) sizes.push_back(k->sizes[e]);
    return knapsack_system(std::move(sizes), k->budget);
  }
  if (const auto* m = std::get_if<MinorSystem>(&sys.kind())) {
    const ElementSet kept = m->base->ground() - (m->deleted | m->contracted);
    return IndependenceSystem(
        remaining, MinorSystem{m->base, m->deleted | expand(y.bits(), kept), m->contracted});
  }
  return IndependenceSystem(
      remaining,
      MinorSystem{std::make_shared<const IndependenceSystem>(sys), y, ElementSet{}});
}

IndependenceSystem contraction(const IndependenceSystem& sys, ElementSet y) {
  check_within(sys, y, "contraction");
  if (!sys.is_independent(y))
    throw PreconditionError("contraction: contracted set " + y.to_string() +
                            " is not independent");
  if (y.empty()) return sys;
  const int remaining = sys.ground_size() - y.size();
  if (const auto* u = std::get_if<UniformMatroid>(&sys.kind()))
    return uniform_matroid(remaining, u->rank - y.size());
  if (const auto* k = std::get_if<KnapsackSystem>(&sys.kind())) {
    std::vector<Rational> sizes;
    Rational budget = k->budget;
    for (ElementId e : y) budget -= k->sizes[e];
    for (ElementId e : sys.ground() - y) sizes.push_back(k->sizes[e]);
    return knapsack_system(std::move(sizes), budget);
  }
  if (const auto* m = std::get_if<MinorSystem>(&sys.kind())) {
    const ElementSet kept = m->base->ground() - (m->deleted | m->contracted);
    return IndependenceSystem(
        remaining, MinorSystem{m->base, m->deleted, m->contracted | expand(y.bits(), kept)});
  }
  return IndependenceSystem(
      remaining,
      MinorSystem{std::make_shared<const IndependenceSystem>(sys), ElementSet{}, y});
}

IndependenceTable::IndependenceTable(const IndependenceSystem& sys, Exec exec)
    : ground_size_(sys.ground_size()) {
  require_cap(ground_size_, enumeration_cap(), "independence table");
  const long long total = 1LL << ground_size_;
  bits_.assign(static_cast<std::size_t>(total), 0);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long m = 0; m < total; ++m)
      bits_[m] = sys.is_independent(ElementSet(static_cast<ElementSet::Bits>(m))) ? 1 : 0;
  } else {
    for (long long m = 0; m < total; ++m)
      bits_[m] = sys.is_independent(ElementSet(static_cast<ElementSet::Bits>(m))) ? 1 : 0;
  }
}

std::size_t IndependenceTable::independent_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::optional<ClosureViolation> find_closure_violation(const IndependenceSystem& sys,
                                                       Exec exec) {
  if (!sys.is_independent(ElementSet{})) return ClosureViolation{ElementSet{}, ElementSet{}};
  const IndependenceTable table(sys, exec);
  const ElementSet::Bits total = ElementSet::Bits{1} << sys.ground_size();
  // Closing under single-element removal suffices by induction.
  for (ElementSet::Bits m = 0; m < total; ++m) {
    if (!table.test(m)) continue;
    for (ElementId e : ElementSet(m))
      if (!table[ElementSet(m).without(e)])
        return ClosureViolation{ElementSet(m).without(e), ElementSet(m)};
  }
  return std::nullopt;
}

}  // namespace substab
