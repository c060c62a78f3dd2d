#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "substab/instance_io.hpp"
#include "substab/rational.hpp"

namespace substab {

using ScenarioParams = std::map<std::string, std::string>;

/// One claim checked by a scenario. Mismatches are recorded, never thrown.
struct Expectation {
  std::string claim;
  std::string note;  // why the expected value holds
  std::string expected;
  std::string observed;
  bool passed = false;
};

/// Aggregate over a sweep (or a single instance) for the summary table.
struct SweepRow {
  std::string algorithm;
  std::string system_class;
  std::string objective_class;
  std::size_t instances = 0;
  std::size_t failures = 0;  // runs that missed the optimum
  std::size_t skipped = 0;
  std::size_t violations = 0;
  std::optional<Rational> worst_ratio;  // algorithm value / optimum
  std::optional<Rational> max_gamma;    // largest certificate gamma
  std::string ratio_bound;
  std::string gamma_bound;
  std::string flag;
};

struct ScenarioResult {
  std::string id;
  ScenarioParams params;
  std::vector<Expectation> expectations;
  std::vector<SweepRow> rows;
  Json details = Json::object();
  double seconds = 0;

  bool passed() const;
};

struct ScenarioInfo {
  std::string id;
  std::string summary;
  ScenarioParams defaults;
};

const std::vector<ScenarioInfo>& scenario_registry();

/// Runs a registered scenario with `overrides` merged over its defaults.
/// Throws InvalidArgument for an unknown id or parameter name.
ScenarioResult run_scenario(std::string_view id, const ScenarioParams& overrides = {});

// Named instances used by the scenarios.

/// Path e1-e2-e3 with weights (1, 1+eps, 1).
Instance matching_path_instance(const Rational& eps);

/// A = {0..m-1} (value 2, size 1), e* = m (value 1+eps, size 1),
/// C = {m+1..2m} (value 1, size 1/m); budget m+1.
Instance knapsack_instance(int m, const Rational& eps);

/// Two-system counterexample on A = {0..n-1}, e* = n with w(e*) = 1. The
/// heaviest n/2 elements of A weigh `high`, the rest `low`.
Instance two_system_instance(int n, const Rational& high, const Rational& low);

/// |A| = a_size with weight 1, |B| = b_size with weight b_weight.
Instance ab_lower_bound_instance(int a_size, int b_size, int p, const Rational& b_weight);

/// a1 = 0, a2 = 1 (weight 1+eps); B1 = {2,3}, B2 = {4,5} (weight 2).
/// Maximal sets: {a1,a2}, {a1} ∪ B2, {a2} ∪ B1, B1 ∪ B2.
Instance figure_counter_instance(const Rational& eps);

/// Elements A1 = 0, B1 = 1, A2 = 2, B2 = 3; one of {A1,B1} and one of
/// {A2,B2}. Coverage of x, y (weight 1), e1, e2 (weight eps) with
/// A1 -> {x, e1}, B1 -> {y}, A2 -> {e2}, B2 -> {x}.
Instance matroid_filmus_instance(const Rational& eps);

/// Uniform matroid of rank k on e = 0, x_1..x_k = 1..k with
/// f(O) = |O|/k and f({e} ∪ O) = 1/k + |O|(1/k)(1 - 1/k) + eps for O ⊆ {x_i}.
Instance cardinality_instance(int k, const Rational& eps);

/// Complete digraph on 3 nodes; the cycle 0->1->2->0 has unit arcs, the
/// reverse arc 1->0 weighs 1+eps, the remaining arcs weigh 0.
Instance atsp_triangle_instance(const Rational& eps);

}  // namespace substab
