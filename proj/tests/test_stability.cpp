#include <doctest.h>

#include "substab/analysis.hpp"
#include "substab/errors.hpp"
#include "substab/scenarios.hpp"
#include "substab/solvers.hpp"
#include "substab/stability.hpp"
#include "support.hpp"

using namespace substab;
using support::R;

namespace {

/// min over independent S != S* with w(S\S*) > 0 of w(S*\S)/w(S\S*).
std::optional<Rational> naive_threshold(const IndependenceSystem& sys, const std::vector<Rational>& w,
                                        ElementSet s_star) {
  const auto weight = [&](ElementSet s) {
    Rational t = 0;
    for (ElementId e : s) t += w[e];
    return t;
  };
  std::optional<Rational> best;
  for (ElementSet s : support::naive_independent(sys)) {
    if (s == s_star || weight(s - s_star) == 0) continue;
    const Rational r = weight(s_star - s) / weight(s - s_star);
    if (!best || r < *best) best = r;
  }
  return best;
}

SequencePerturbation seq_of(const CertificateResult& c) {
  REQUIRE(std::holds_alternative<SequencePerturbation>(c));
  return std::get<SequencePerturbation>(c);
}

}  // namespace

TEST_CASE("additive threshold examples") {
  const Instance path = matching_path_instance(R(1, 10));
  const StabilityReport st = additive_stability_threshold(path.system, *additive_weights(path.objective));
  CHECK(st.kind == ReportKind::additive_exact);
  CHECK(st.gamma_star == R(20, 11));
  CHECK(st.competing_set == ElementSet::of({1}));
  CHECK(st.optimum == ElementSet::of({0, 2}));
  REQUIRE(st.certificate.has_value());
  const auto& mult = std::get<AdditivePerturbation>(*st.certificate);
  // Under the witness multipliers the competitor ties the optimum.
  Rational comp = 0;
  Rational opt = 0;
  const auto w = *additive_weights(path.objective);
  for (ElementId e : st.competing_set) comp += w[e] * mult.multipliers[e];
  for (ElementId e : st.optimum) opt += w[e] * mult.multipliers[e];
  CHECK(comp == opt);
  for (const Rational& m : mult.multipliers) CHECK((m >= 1 && m <= mult.gamma));

  // The 2-system instance with two tiers of tiny weights is extremely stable.
  const Instance two = two_system_instance(6, R(1, 100000), R(1, 100000000000));
  const StabilityReport big = additive_stability_threshold(two.system, *additive_weights(two.objective));
  REQUIRE(big.gamma_star.has_value());
  CHECK(*big.gamma_star > 100000);

  // Graded weights a_i = i/10^6 instead: swapping a4 for a3 costs only 4/3.
  std::vector<Rational> graded;
  for (int i = 1; i <= 6; ++i) graded.push_back(R(i, 1000000));
  graded.push_back(R(1));
  const StabilityReport small = additive_stability_threshold(two_system_counterexample(6), graded);
  CHECK(small.gamma_star == R(4, 3));
  CHECK(naive_threshold(two_system_counterexample(6), graded, small.optimum) == R(4, 3));

  // Nothing can compete with a lone independent set: infinite threshold.
  const StabilityReport inf = additive_stability_threshold(uniform_matroid(2, 2), {R(1), R(2)});
  CHECK_FALSE(inf.gamma_star.has_value());
}

TEST_CASE("additive threshold errors") {
  try {
    additive_stability_threshold(uniform_matroid(2, 1), {R(1), R(1)});
    FAIL("expected StabilityError");
  } catch (const StabilityError& e) {
    CHECK(e.code() == StabilityError::Code::non_unique_optimum);
  }
  try {
    // {0} and {0,1} tie with w(1) = 0.
    additive_stability_threshold(uniform_matroid(2, 2), {R(1), R(0)});
    FAIL("expected StabilityError");
  } catch (const StabilityError& e) {
    CHECK(e.code() == StabilityError::Code::zero_weight_tie);
  }
  CHECK_THROWS_AS(additive_stability_threshold(uniform_matroid(2, 1), {R(-1), R(1)}), InvalidArgument);
}

TEST_CASE("sequence perturbation examples") {
  const Objective w = additive_objective({R(1), R(2), R(3)});
  CHECK(tabulate(build_sequence_perturbation(w, {2, 0}, R(1))) == tabulate(w));
  // Additive: ordering elements are scaled by gamma.
  const Objective scaled = build_sequence_perturbation(w, {2, 0}, R(3, 2));
  CHECK(tabulate(scaled) == tabulate(additive_objective({R(3, 2), R(2), R(9, 2)})));

  const Instance card = cardinality_instance(2, R(1, 100));
  const Objective ft = build_sequence_perturbation(card.objective, {0}, R(3, 2));
  CHECK(value(ft, ElementSet::of({1, 2})) == 1);
  CHECK(value(ft, ElementSet::of({0, 1})) == 1 + R(3, 2) * R(1, 100));

  const SequencePerturbation sp = sequence_perturbation(card.objective, {0, 1}, R(2));
  CHECK(sp.deltas == std::vector<Rational>{R(1, 2) + R(1, 100), R(1, 4)});
  CHECK(sp.boosted == ElementSet::of({0, 1}));

  CHECK_THROWS_AS(build_sequence_perturbation(w, {0, 0}, R(2)), InvalidArgument);
  CHECK_THROWS_AS(build_sequence_perturbation(w, {0}, R(1, 2)), InvalidArgument);
}

TEST_CASE("validate_gamma_perturbation examples") {
  const Instance card = cardinality_instance(2, R(1, 100));
  const Objective& f = card.objective;
  CHECK(validate_gamma_perturbation(f, f, R(3)).ok());

  // (gamma + 1) f breaks the sandwich on any positive set.
  const auto table = tabulate(f);
  std::vector<std::optional<Rational>> big;
  for (const Rational& v : table) big.push_back(v * 3);
  const auto bad = validate_gamma_perturbation(f, table_objective(3, big), R(2));
  CHECK_FALSE(bad.sandwich.ok);
  REQUIRE(bad.sandwich.witness.has_value());
  CHECK(value(f, *bad.sandwich.witness) > 0);
  CHECK_FALSE(bad.ok());

  // A perturbation that boosts a pair jointly but not the singletons breaks
  // the marginal bound and submodularity.
  std::vector<std::optional<Rational>> joint(table.begin(), table.end());
  joint[0b110] = *joint[0b110] + 1;
  joint[0b111] = *joint[0b111] + 1;
  const auto j = validate_gamma_perturbation(f, table_objective(3, joint), R(2));
  CHECK_FALSE(j.marginals.ok);
  CHECK_FALSE(j.shape.ok);

  CHECK_THROWS_AS(validate_gamma_perturbation(f, additive_objective({R(1)}), R(2)), InvalidArgument);
}

TEST_CASE("greedy failure certificates") {
  const Instance path = matching_path_instance(R(1, 10));
  const auto g = greedy(path.system, path.objective);
  CHECK(seq_of(greedy_failure_certificate(path.system, path.objective, g, ElementSet::of({0, 2}))).gamma == R(20, 11));

  const Instance knap = knapsack_instance(3, R(1, 10));
  const auto k = greedy(knap.system, knap.objective);
  const auto opt = exact_optimum(knap.system, knap.objective);
  const auto& ks = seq_of(greedy_failure_certificate(knap.system, knap.objective, k, opt.set));
  CHECK(ks.gamma == R(30, 11));
  CHECK(ks.boosted == ElementSet::of({3}));
  CHECK(ks.gamma > p_system_parameter(knap.system));

  // k = 2 certificate and its eps -> 0 limit 3/2.
  for (const Rational& eps : {R(1, 100), R(1, 1000000)}) {
    const Instance card = cardinality_instance(2, eps);
    const auto c = greedy(card.system, card.objective);
    const auto& cs = seq_of(greedy_failure_certificate(card.system, card.objective, c, ElementSet::of({1, 2})));
    CHECK(cs.gamma == 1 + (R(1, 4) - eps) / (R(1, 2) + eps));
    CHECK(cs.gamma <= R(3, 2));
    CHECK(cs.gamma >= R(3, 2) - 3 * eps);
  }

  const auto right = greedy(uniform_matroid(2, 1), additive_objective({R(1), R(2)}));
  CHECK_THROWS_AS(greedy_failure_certificate(uniform_matroid(2, 1), additive_objective({R(1), R(2)}), right,
                                             ElementSet::of({1})),
                  PreconditionError);

  // Zero delta sum on S\S*: no certificate from this family.
  const auto sys = uniform_matroid(2, 1);
  const Objective zero = additive_objective({R(0), R(0)});
  SolveTrace t = greedy(sys, zero);
  CHECK(std::holds_alternative<NoCertificate>(greedy_failure_certificate(sys, zero, t, ElementSet::of({1}))));
}

TEST_CASE("local search failure certificates") {
  const Instance lb = ab_lower_bound_instance(8, 12, 2, R(3, 2));
  SolveTrace a;
  a.final_set = ElementSet::full(8);
  a.final_value = 8;
  const ElementSet b = ElementSet::full(20) - ElementSet::full(8);
  CHECK(seq_of(local_search_failure_certificate(lb.system, lb.objective, a, b, 2)).gamma == R(9, 4));

  const Instance fig = figure_counter_instance(R(1, 100));
  // The ordering certificate for {a1, a2} against the optimum is 4/(1+eps).
  CHECK(seq_of(ordering_certificate(fig.objective, ElementSet::of({0, 1}), ElementSet::of({2, 3, 4, 5}))).gamma ==
        R(400, 101));
  // {a1, a2} has an improving (2,1)-swap, so the local search variant refuses.
  SolveTrace fa;
  fa.final_set = ElementSet::of({0, 1});
  CHECK_THROWS_AS(local_search_failure_certificate(fig.system, fig.objective, fa, ElementSet::of({2, 3, 4, 5}), 2),
                  PreconditionError);

  const Instance mf = matroid_filmus_instance(R(1, 100));
  SolveTrace m;
  m.final_set = ElementSet::of({0, 2});
  const auto& ms = seq_of(local_search_failure_certificate(mf.system, mf.objective, m, ElementSet::of({1, 3}), 1));
  CHECK(ms.gamma == 2 / (1 + R(2, 100)));
  CHECK(ms.gamma < 2);
  CHECK(validate_gamma_perturbation(mf.objective, build_sequence_perturbation(mf.objective, ms), ms.gamma).ok());

  CHECK_THROWS_AS(ordering_certificate(fig.objective, ElementSet::of({2, 3, 4, 5}), ElementSet::of({0, 1})),
                  PreconditionError);
}

TEST_CASE("block perturbation certificates") {
  // Two players, one item each way; greedy gives item 0 to the wrong player.
  // Element id = item * 2 + player.
  const auto sys = partition_matroid(4, {ElementSet::of({0, 1}), ElementSet::of({2, 3})}, {1, 1});
  // Player 0 (elements 0, 2): values 3 for item 0, 2 for item 1, together 3.
  const Objective f0 = table_objective(2, {R(0), R(3), R(2), R(3)});
  // Player 1 (elements 1, 3): 2 for item 0, 0 for item 1.
  const Objective f1 = table_objective(2, {R(0), R(2), R(0), R(2)});
  const std::vector<ElementSet> blocks{ElementSet::of({0, 2}), ElementSet::of({1, 3})};
  const Objective f = block_sum_objective(4, blocks, {f0, f1});
  const SolveTrace g = greedy(sys, f);
  const OptimumResult opt = exact_optimum(sys, f);
  REQUIRE(g.final_set != opt.set);
  const auto res = block_perturbation_certificate(sys, blocks, {f0, f1}, g, opt.set);
  REQUIRE(std::holds_alternative<BlockCertificate>(res));
  const auto& bc = std::get<BlockCertificate>(res);
  CHECK(bc.ok());
  CHECK(bc.gamma <= 2);
  CHECK(bc.gamma == seq_of(greedy_failure_certificate(sys, f, g, opt.set)).gamma);

  // One block with an additive component reduces to the plain certificate.
  const Instance path_like = matroid_filmus_instance(R(1, 100));
  const auto usys = uniform_matroid(3, 1);
  const Objective add = additive_objective({R(2), R(3), R(1)});
  SolveTrace fake = greedy(usys, add);
  fake.final_set = ElementSet::of({0});
  fake.picks = {0};
  fake.deltas = {R(2)};
  fake.final_value = 2;
  const auto one = block_perturbation_certificate(usys, {ElementSet::full(3)}, {add}, fake, ElementSet::of({1}));
  REQUIRE(std::holds_alternative<BlockCertificate>(one));
  CHECK(std::get<BlockCertificate>(one).gamma == R(3, 2));

  // Greedy optimal: refused.
  const SolveTrace good = greedy(usys, add);
  CHECK_THROWS_AS(block_perturbation_certificate(usys, {ElementSet::full(3)}, {add}, good, ElementSet::of({1})),
                  PreconditionError);
  // Not a matroid: refused.
  const Instance mp = matching_path_instance(R(1, 10));
  const SolveTrace mg = greedy(mp.system, mp.objective);
  CHECK_THROWS_AS(block_perturbation_certificate(mp.system, {ElementSet::full(3)}, {mp.objective}, mg,
                                                 ElementSet::of({0, 2})),
                  PreconditionError);
  (void)path_like;
}

TEST_CASE("submodular upper bound examples") {
  const Instance card2 = cardinality_instance(2, R(1, 100));
  const auto u2 = submodular_stability_upper_bound(card2.system, card2.objective);
  CHECK(u2.kind == ReportKind::submodular_upper_bound);
  REQUIRE(u2.gamma_star.has_value());
  CHECK(*u2.gamma_star <= R(3, 2));
  CHECK(*u2.gamma_star >= R(3, 2) - R(3, 100));

  const Instance card3 = cardinality_instance(3, R(1, 100));
  const auto u3 = submodular_stability_upper_bound(card3.system, card3.objective);
  REQUIRE(u3.gamma_star.has_value());
  CHECK(*u3.gamma_star <= R(5, 3));
  CHECK(*u3.gamma_star >= R(5, 3) - R(5, 100));
  REQUIRE(u3.certificate.has_value());
  const auto& cert = std::get<SequencePerturbation>(*u3.certificate);
  const Objective ft = build_sequence_perturbation(card3.objective, cert);
  CHECK(value(ft, u3.competing_set) >= value(ft, u3.optimum));
}

TEST_CASE("property: additive threshold matches the naive scan and the certificate bound") {
  support::Gen g(31);
  int compared = 0;
  for (int round = 0; round < 60; ++round) {
    const int n = g.between(2, 8);
    const IndependenceSystem sys = support::random_system(g, n);
    const Objective f = support::random_additive(g, sys.ground_size());
    const auto opt = exact_optimum(sys, f);
    if (!opt.unique) continue;
    const auto w = *additive_weights(f);
    const auto st = additive_stability_threshold(sys, w);
    CHECK(st.gamma_star == naive_threshold(sys, w, opt.set));
    CHECK(additive_stability_threshold(sys, w, Exec::serial).gamma_star == st.gamma_star);
    CHECK(submodular_stability_upper_bound(sys, f).gamma_star == st.gamma_star);
    CHECK(submodular_stability_upper_bound(sys, f, Exec::serial).gamma_star == st.gamma_star);
    ++compared;
  }
  CHECK(compared > 20);
}

TEST_CASE("property: every sequence perturbation validates") {
  support::Gen g(4242);
  for (int round = 0; round < 150; ++round) {
    const int n = g.between(1, 7);
    const Objective f = support::random_submodular(g, n);
    const auto ordering = g.permutation(g.subset(n, 2, 3));
    const Rational gamma = 1 + R(g.between(0, 10), g.between(1, 4));
    const Objective ft = build_sequence_perturbation(f, ordering, gamma);
    CAPTURE(round);
    CHECK(validate_gamma_perturbation(f, ft, gamma, Exec::parallel).ok());
    if (n <= 5) CHECK(validate_gamma_perturbation(f, ft, gamma, Exec::serial).ok());
    // f~ follows the defining formula.
    const SequencePerturbation sp = sequence_perturbation(f, ordering, gamma);
    const ElementSet s = g.subset(n);
    Rational boost = 0;
    for (std::size_t i = 0; i < ordering.size(); ++i)
      if (s.contains(ordering[i])) boost += sp.deltas[i];
    CHECK(value(ft, s) == value(f, s) + (gamma - 1) * boost);
  }
}

TEST_CASE("property: greedy failures certify within p+1 and validate") {
  support::Gen g(555);
  int failures = 0;
  for (int round = 0; round < 300; ++round) {
    const int n = g.between(2, 8);
    const IndependenceSystem sys = support::random_system(g, n);
    const Objective f = support::random_submodular(g, sys.ground_size());
    const int p = *p_extendibility(sys);
    const auto opt = exact_optimum(sys, f);
    const SolveTrace t = greedy(sys, f);
    if (t.final_set == opt.set) continue;
    const auto cert = greedy_failure_certificate(sys, f, t, opt.set);
    if (t.final_value == opt.value) continue;
    const auto& sp = seq_of(cert);
    ++failures;
    const bool additive = additive_weights(f).has_value();
    CHECK(sp.gamma <= (additive ? p : p + 1));
    const Objective ft = build_sequence_perturbation(f, sp);
    CHECK(validate_gamma_perturbation(f, ft, sp.gamma).ok());
    CHECK(value(ft, t.final_set) >= value(ft, opt.set));
  }
  CHECK(failures > 10);
}
