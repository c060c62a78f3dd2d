#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "substab/element_set.hpp"
#include "substab/exec.hpp"
#include "substab/rational.hpp"

namespace substab {

class Objective;

/// w(S) = sum of weights.
struct AdditiveObjective {
  std::vector<Rational> weights;
  bool operator==(const AdditiveObjective&) const = default;
};

/// Element i covers covers[i] ⊆ universe; f(S) = weight of the covered union.
struct CoverageObjective {
  std::vector<ElementSet> covers;
  std::vector<Rational> universe_weights;
  bool operator==(const CoverageObjective&) const = default;
};

/// One value per subset, indexed by bitmask. Missing entries are errors.
struct TableObjective {
  std::vector<std::optional<Rational>> values;
  bool operator==(const TableObjective&) const = default;
};

/// f(S) = sum_i f_i(S ∩ B_i). components[i] is defined on block i with the
/// block's elements renumbered 0..|B_i|-1 in increasing id order.
struct BlockSumObjective {
  std::vector<ElementSet> blocks;
  std::vector<Objective> components;
  bool operator==(const BlockSumObjective&) const;
};

using ObjectiveKind =
    std::variant<AdditiveObjective, CoverageObjective, TableObjective, BlockSumObjective>;

/// Exact set-function oracle on {0, ..., ground_size-1}. Immutable.
class Objective {
 public:
  /// Validates the kind against the ground size; throws InvalidArgument.
  Objective(int ground_size, ObjectiveKind kind);

  int ground_size() const { return ground_size_; }
  ElementSet ground() const { return ElementSet::full(ground_size_); }
  const ObjectiveKind& kind() const { return kind_; }
  std::string_view kind_name() const;

  /// Throws PreconditionError outside the ground set, MissingTableEntry for
  /// undefined table entries.
  Rational value(ElementSet s) const;

  bool operator==(const Objective& other) const;

 private:
  Rational value_unchecked(ElementSet s) const;

  int ground_size_ = 0;
  ObjectiveKind kind_;
};

Objective additive_objective(std::vector<Rational> weights);
Objective coverage_objective(std::vector<ElementSet> covers,
                             std::vector<Rational> universe_weights);
/// values.size() must be 2^ground_size.
Objective table_objective(int ground_size, std::vector<std::optional<Rational>> values);
Objective block_sum_objective(int ground_size, std::vector<ElementSet> blocks,
                              std::vector<Objective> components);

Rational value(const Objective& obj, ElementSet s);

/// f(s + j) - f(s). Throws PreconditionError when j is already in s.
Rational marginal(const Objective& obj, ElementSet s, ElementId j);

/// Weights when obj is additive, empty otherwise.
std::optional<std::vector<Rational>> additive_weights(const Objective& obj);

/// f on every subset, indexed by bitmask. Capped by enumeration_cap().
std::vector<Rational> tabulate(const Objective& obj, Exec exec = Exec::parallel);

struct MonotoneWitness {
  ElementSet set;
  ElementId element;
};

/// marginal(smaller, element) < marginal(larger, element), smaller ⊆ larger.
struct SubmodularWitness {
  ElementSet smaller;
  ElementSet larger;
  ElementId element;
};

struct ObjectiveReport {
  bool normalized = true;   // f(∅) = 0
  bool nonnegative = true;
  bool monotone = true;
  bool submodular = true;
  std::optional<ElementSet> negative_witness;
  std::optional<MonotoneWitness> monotone_witness;
  std::optional<SubmodularWitness> submodular_witness;

  bool ok() const { return normalized && nonnegative && monotone && submodular; }
};

/// Exhaustive check of f(∅) = 0, f >= 0, monotonicity and submodularity.
/// The parallel path checks submodularity through adjacent pairs
/// (S+i, S+j), which is equivalent; the serial path scans all S ⊆ T.
ObjectiveReport validate_objective(const Objective& obj, Exec exec = Exec::parallel);

/// Same checks on a raw value table.
ObjectiveReport validate_table(int ground_size, const std::vector<Rational>& values,
                               Exec exec = Exec::parallel);

}  // namespace substab
