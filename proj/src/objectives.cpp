#include "substab/objectives.hpp"

#include <limits>
#include <string>

#include "substab/errors.hpp"

namespace substab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

using Bits = ElementSet::Bits;
constexpr unsigned long long kNone = std::numeric_limits<unsigned long long>::max();

Bits bit(ElementId e) { return Bits{1} << e; }

std::optional<MonotoneWitness> monotone_witness_at(const std::vector<Rational>& v, int n,
                                                   Bits s) {
  for (ElementId j = 0; j < n; ++j)
    if (!(s & bit(j)) && v[s | bit(j)] < v[s]) return MonotoneWitness{ElementSet(s), j};
  return std::nullopt;
}

std::optional<SubmodularWitness> local_submodular_witness_at(const std::vector<Rational>& v,
                                                             int n, Bits s) {
  for (ElementId i = 0; i < n; ++i) {
    if (s & bit(i)) continue;
    for (ElementId j = i + 1; j < n; ++j) {
      if (s & bit(j)) continue;
      if (v[s | bit(i)] + v[s | bit(j)] < v[s | bit(i) | bit(j)] + v[s])
        return SubmodularWitness{ElementSet(s), ElementSet(s | bit(i)), j};
    }
  }
  return std::nullopt;
}

ObjectiveReport validate_parallel(int n, const std::vector<Rational>& v) {
  ObjectiveReport report;
  report.normalized = v[0] == 0;
  const long long total = 1LL << n;
  unsigned long long first_negative = kNone;
  unsigned long long first_monotone = kNone;
  unsigned long long first_submodular = kNone;
#pragma omp parallel for schedule(static) \
    reduction(min : first_negative, first_monotone, first_submodular)
  for (long long m = 0; m < total; ++m) {
    const Bits s = static_cast<Bits>(m);
    if (v[s] < 0 && s < first_negative) first_negative = s;
    if (s < first_monotone && monotone_witness_at(v, n, s)) first_monotone = s;
    if (s < first_submodular && local_submodular_witness_at(v, n, s)) first_submodular = s;
  }
  if (first_negative != kNone) {
    report.nonnegative = false;
    report.negative_witness = ElementSet(first_negative);
  }
  if (first_monotone != kNone) {
    report.monotone = false;
    report.monotone_witness = monotone_witness_at(v, n, first_monotone);
  }
  if (first_submodular != kNone) {
    report.submodular = false;
    report.submodular_witness = local_submodular_witness_at(v, n, first_submodular);
  }
  return report;
}

ObjectiveReport validate_serial(int n, const std::vector<Rational>& v) {
  ObjectiveReport report;
  report.normalized = v[0] == 0;
  const ElementSet ground = ElementSet::full(n);
  const Bits total = Bits{1} << n;
  for (Bits s = 0; s < total; ++s) {
    if (report.nonnegative && v[s] < 0) {
      report.nonnegative = false;
      report.negative_witness = ElementSet(s);
    }
    for (ElementId j = 0; j < n && report.monotone; ++j)
      if (!(s & bit(j)) && v[s | bit(j)] < v[s]) {
        report.monotone = false;
        report.monotone_witness = MonotoneWitness{ElementSet(s), j};
      }
    if (!report.submodular) continue;
    for_each_subset(ground - ElementSet(s), [&](ElementSet extra) {
      if (!report.submodular) return;
      const Bits t = s | extra.bits();
      for (ElementId j = 0; j < n; ++j) {
        if (t & bit(j)) continue;
        if (v[s | bit(j)] - v[s] < v[t | bit(j)] - v[t]) {
          report.submodular = false;
          report.submodular_witness = SubmodularWitness{ElementSet(s), ElementSet(t), j};
          return;
        }
      }
    });
  }
  return report;
}

}  // namespace

bool BlockSumObjective::operator==(const BlockSumObjective& other) const {
  return blocks == other.blocks && components == other.components;
}

Objective::Objective(int ground_size, ObjectiveKind kind)
    : ground_size_(ground_size), kind_(std::move(kind)) {
  if (ground_size < 0 || ground_size > ElementSet::kMaxElements)
    throw InvalidArgument("objective ground size must be in [0, 64]");
  std::visit(
      overloaded{
          [&](const AdditiveObjective& k) {
            if (static_cast<int>(k.weights.size()) != ground_size)
              throw InvalidArgument("additive objective: one weight per element");
          },
          [&](const CoverageObjective& k) {
            if (static_cast<int>(k.covers.size()) != ground_size)
              throw InvalidArgument("coverage objective: one cover per element");
            if (k.universe_weights.size() > ElementSet::kMaxElements)
              throw InvalidArgument("coverage universe is limited to 64 items");
            const ElementSet universe =
                ElementSet::full(static_cast<int>(k.universe_weights.size()));
            for (ElementSet c : k.covers)
              if (!c.subset_of(universe))
                throw InvalidArgument("coverage objective: cover outside the universe");
          },
          [&](const TableObjective& k) {
            if (ground_size > kMaxEnumerationCap ||
                k.values.size() != (std::size_t{1} << ground_size))
              throw InvalidArgument("table objective needs 2^n entries");
          },
          [&](const BlockSumObjective& k) {
            if (k.blocks.size() != k.components.size())
              throw InvalidArgument("block sum: one component per block");
            ElementSet seen;
            for (std::size_t i = 0; i < k.blocks.size(); ++i) {
              if (k.blocks[i].intersects(seen))
                throw InvalidArgument("block sum: blocks overlap");
              seen = seen | k.blocks[i];
              if (k.components[i].ground_size() != k.blocks[i].size())
                throw InvalidArgument("block sum: component size must match its block");
            }
            if (seen != ElementSet::full(ground_size))
              throw InvalidArgument("block sum: blocks must cover the ground set");
          },
      },
      kind_);
}

std::string_view Objective::kind_name() const {
  return std::visit(overloaded{
                        [](const AdditiveObjective&) { return std::string_view("additive"); },
                        [](const CoverageObjective&) { return std::string_view("coverage"); },
                        [](const TableObjective&) { return std::string_view("table"); },
                        [](const BlockSumObjective&) { return std::string_view("block_sum"); },
                    },
                    kind_);
}

Rational Objective::value(ElementSet s) const {
  if (!s.subset_of(ground()))
    throw PreconditionError("value: set " + s.to_string() + " outside the ground set");
  return value_unchecked(s);
}

Rational Objective::value_unchecked(ElementSet s) const {
  return std::visit(
      overloaded{
          [&](const AdditiveObjective& k) {
            Rational total = 0;
            for (ElementId e : s) total += k.weights[e];
            return total;
          },
          [&](const CoverageObjective& k) {
            ElementSet covered;
            for (ElementId e : s) covered = covered | k.covers[e];
            Rational total = 0;
            for (ElementId u : covered) total += k.universe_weights[u];
            return total;
          },
          [&](const TableObjective& k) {
            const auto& entry = k.values[s.bits()];
            if (!entry) throw MissingTableEntry(s.bits());
            return *entry;
          },
          [&](const BlockSumObjective& k) {
            Rational total = 0;
            for (std::size_t i = 0; i < k.blocks.size(); ++i)
              total += k.components[i].value_unchecked(ElementSet(compress(s, k.blocks[i])));
            return total;
          },
      },
      kind_);
}

bool Objective::operator==(const Objective& other) const {
  return ground_size_ == other.ground_size_ && kind_ == other.kind_;
}

Objective additive_objective(std::vector<Rational> weights) {
  const int n = static_cast<int>(weights.size());
  return Objective(n, AdditiveObjective{std::move(weights)});
}

Objective coverage_objective(std::vector<ElementSet> covers,
                             std::vector<Rational> universe_weights) {
  const int n = static_cast<int>(covers.size());
  return Objective(n, CoverageObjective{std::move(covers), std::move(universe_weights)});
}

Objective table_objective(int ground_size, std::vector<std::optional<Rational>> values) {
  return Objective(ground_size, TableObjective{std::move(values)});
}

Objective block_sum_objective(int ground_size, std::vector<ElementSet> blocks,
                              std::vector<Objective> components) {
  return Objective(ground_size, BlockSumObjective{std::move(blocks), std::move(components)});
}

Rational value(const Objective& obj, ElementSet s) { return obj.value(s); }

Rational marginal(const Objective& obj, ElementSet s, ElementId j) {
  if (j < 0 || j >= obj.ground_size())
    throw PreconditionError("marginal: element " + std::to_string(j) + " outside ground set");
  if (s.contains(j))
    throw PreconditionError("marginal: element " + std::to_string(j) + " already in " +
                            s.to_string());
  return obj.value(s.with(j)) - obj.value(s);
}

std::optional<std::vector<Rational>> additive_weights(const Objective& obj) {
  if (const auto* a = std::get_if<AdditiveObjective>(&obj.kind())) return a->weights;
  return std::nullopt;
}

std::vector<Rational> tabulate(const Objective& obj, Exec exec) {
  require_cap(obj.ground_size(), enumeration_cap(), "tabulate");
  const long long total = 1LL << obj.ground_size();
  std::vector<Rational> values(static_cast<std::size_t>(total));
  if (exec == Exec::parallel) {
    // Exceptions must not escape the parallel region; rethrow afterwards.
    unsigned long long missing = kNone;
#pragma omp parallel for schedule(static) reduction(min : missing)
    for (long long m = 0; m < total; ++m) {
      try {
        values[m] = obj.value(ElementSet(static_cast<Bits>(m)));
      } catch (const MissingTableEntry& e) {
        if (e.mask() < missing) missing = e.mask();
      }
    }
    if (missing != kNone) throw MissingTableEntry(missing);
  } else {
    for (long long m = 0; m < total; ++m) values[m] = obj.value(ElementSet(static_cast<Bits>(m)));
  }
  return values;
}

ObjectiveReport validate_table(int ground_size, const std::vector<Rational>& values, Exec exec) {
  require_cap(ground_size, enumeration_cap(), "validate_objective");
  if (values.size() != (std::size_t{1} << ground_size))
    throw InvalidArgument("value table needs 2^n entries");
  return exec == Exec::parallel ? validate_parallel(ground_size, values)
                                : validate_serial(ground_size, values);
}

ObjectiveReport validate_objective(const Objective& obj, Exec exec) {
  return validate_table(obj.ground_size(), tabulate(obj, exec), exec);
}

}  // namespace substab
