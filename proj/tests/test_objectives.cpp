#include <doctest.h>

#include "substab/errors.hpp"
#include "substab/objectives.hpp"
#include "substab/scenarios.hpp"
#include "support.hpp"

using namespace substab;
using support::R;

TEST_CASE("value and marginal examples") {
  const Objective w = additive_objective({R(1), R(11, 10), R(1)});
  CHECK(value(w, ElementSet::of({0, 2})) == 2);
  CHECK(value(w, {}) == 0);
  CHECK(marginal(w, ElementSet::of({0, 2}), 1) == R(11, 10));
  CHECK_THROWS_AS(marginal(w, ElementSet::of({1}), 1), PreconditionError);
  CHECK_THROWS_AS(value(w, ElementSet::of({3})), PreconditionError);

  // e1 -> {u1, u2}, e2 -> {u2, u3}.
  const Objective cov = coverage_objective({ElementSet::of({0, 1}), ElementSet::of({1, 2})}, {R(1), R(1), R(1)});
  CHECK(value(cov, ElementSet::of({0, 1})) == 3);
  CHECK(marginal(cov, ElementSet::of({0}), 1) == 1);
  CHECK(value(cov, {}) == 0);

  const Instance card = cardinality_instance(2, R(1, 100));
  CHECK(marginal(card.objective, {}, 0) == R(1, 2) + R(1, 100));
  CHECK(marginal(card.objective, ElementSet::of({1}), 0) == R(1, 4) + R(1, 100));
  CHECK(value(card.objective, ElementSet::of({1, 2})) == 1);
  CHECK(value(card.objective, ElementSet::of({0, 1, 2})) == 1 + R(1, 100));
}

TEST_CASE("table objectives require every entry") {
  std::vector<std::optional<Rational>> values(4);
  values[0] = R(0);
  values[1] = R(1);
  values[3] = R(2);
  const Objective t = table_objective(2, values);
  CHECK(value(t, ElementSet::of({0})) == 1);
  CHECK_THROWS_AS(value(t, ElementSet::of({1})), MissingTableEntry);
  try {
    tabulate(t);
    FAIL("expected MissingTableEntry");
  } catch (const MissingTableEntry& e) {
    CHECK(e.mask() == 2);
  }
  CHECK_THROWS_AS(table_objective(2, std::vector<std::optional<Rational>>(3)), InvalidArgument);
}

TEST_CASE("validate_objective verdicts and witnesses") {
  CHECK(validate_objective(additive_objective({R(1), R(2), R(0)})).ok());
  CHECK(validate_objective(coverage_objective({ElementSet::of({0, 1}), ElementSet::of({1})}, {R(2), R(3)})).ok());

  // f(a) = f(b) = 1, f(ab) = 3: supermodular.
  const Objective super = table_objective(2, {R(0), R(1), R(1), R(3)});
  for (Exec exec : {Exec::serial, Exec::parallel}) {
    const ObjectiveReport rep = validate_objective(super, exec);
    CHECK(rep.monotone);
    CHECK_FALSE(rep.submodular);
    REQUIRE(rep.submodular_witness.has_value());
    const auto& wit = *rep.submodular_witness;
    CHECK(wit.smaller.subset_of(wit.larger));
    CHECK_FALSE(wit.larger.contains(wit.element));
    CHECK(marginal(super, wit.smaller, wit.element) < marginal(super, wit.larger, wit.element));
  }

  const Objective dip = table_objective(2, {R(0), R(2), R(1), R(1)});
  const ObjectiveReport rep = validate_objective(dip);
  CHECK_FALSE(rep.monotone);
  REQUIRE(rep.monotone_witness.has_value());
  CHECK(marginal(dip, rep.monotone_witness->set, rep.monotone_witness->element) < 0);

  const ObjectiveReport bad = validate_table(1, {R(1), R(0)});
  CHECK_FALSE(bad.normalized);
  CHECK_FALSE(validate_table(1, {R(0), R(-1)}).nonnegative);
}

TEST_CASE("block sums decompose over their blocks") {
  const Objective f0 = table_objective(2, {R(0), R(2), R(1), R(2)});
  const Objective f1 = additive_objective({R(5)});
  const Objective bs =
      block_sum_objective(3, {ElementSet::of({0, 2}), ElementSet::of({1})}, {f0, f1});
  CHECK(value(bs, ElementSet::of({0, 1, 2})) == 7);
  CHECK(value(bs, ElementSet::of({2})) == 1);
  CHECK(value(bs, ElementSet::of({1, 2})) == 6);
  CHECK_THROWS_AS(block_sum_objective(3, {ElementSet::of({0, 2})}, {f0}), InvalidArgument);
  CHECK_THROWS_AS(block_sum_objective(3, {ElementSet::of({0, 2}), ElementSet::of({1})}, {f1, f1}), InvalidArgument);
}

TEST_CASE("scenario objectives are monotone submodular") {
  for (const Instance& inst :
       {matching_path_instance(R(1, 10)), knapsack_instance(3, R(1, 10)), two_system_instance(6, R(1, 1000), R(1, 10000)),
        figure_counter_instance(R(1, 100)), matroid_filmus_instance(R(1, 100)), cardinality_instance(2, R(1, 100)),
        cardinality_instance(3, R(1, 100)), atsp_triangle_instance(R(1, 10))}) {
    CAPTURE(inst.name);
    CHECK(validate_objective(inst.objective).ok());
    CHECK(validate_objective(inst.objective, Exec::serial).ok());
  }
}

TEST_CASE("property: coverage equals inclusion-exclusion, additive marginals are constant") {
  support::Gen g(5);
  for (int round = 0; round < 50; ++round) {
    const int n = g.between(1, 4);
    const Objective cov = support::random_coverage(g, n);
    const auto& kind = std::get<CoverageObjective>(cov.kind());
    for (ElementSet::Bits m = 0; m < (ElementSet::Bits{1} << n); ++m) {
      // Inclusion-exclusion over nonempty subfamilies of the chosen elements.
      Rational total = 0;
      for_each_subset(ElementSet(m), [&](ElementSet sub) {
        if (sub.empty()) return;
        ElementSet common = ElementSet::full(static_cast<int>(kind.universe_weights.size()));
        for (ElementId e : sub) common = common & kind.covers[e];
        Rational w = 0;
        for (ElementId u : common) w += kind.universe_weights[u];
        total += sub.size() % 2 == 1 ? w : Rational(-w);
      });
      CHECK(value(cov, ElementSet(m)) == total);
    }
    const Objective add = support::random_additive(g, n);
    const ElementSet s = g.subset(n);
    for (ElementId j = 0; j < n; ++j)
      if (!s.contains(j)) CHECK(marginal(add, s, j) == marginal(add, {}, j));
  }
}

TEST_CASE("property: block sums match a flattened table; validators agree") {
  support::Gen g(8);
  for (int round = 0; round < 30; ++round) {
    const int n = g.between(2, 7);
    const Objective f = support::random_submodular(g, n);
    const auto table = tabulate(f);
    CHECK(tabulate(f, Exec::serial) == table);
    std::vector<std::optional<Rational>> opt(table.begin(), table.end());
    const Objective flat = table_objective(n, opt);
    for (ElementSet::Bits m = 0; m < table.size(); ++m) CHECK(value(flat, ElementSet(m)) == table[m]);
    const auto a = validate_objective(f, Exec::serial);
    const auto b = validate_objective(f, Exec::parallel);
    CHECK(a.ok());
    CHECK(b.ok());
    // Random tables: both validators agree on every verdict.
    std::vector<Rational> raw(std::size_t{1} << n);
    for (std::size_t m = 1; m < raw.size(); ++m) raw[m] = R(g.between(0, 6));
    const auto s = validate_table(n, raw, Exec::serial);
    const auto p = validate_table(n, raw, Exec::parallel);
    CHECK(s.monotone == p.monotone);
    CHECK(s.submodular == p.submodular);
  }
}
