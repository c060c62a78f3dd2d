#include "substab/stability.hpp"

#include <bit>
#include <limits>

#include "substab/analysis.hpp"
#include "substab/errors.hpp"

namespace substab {
namespace {

using Bits = ElementSet::Bits;
constexpr unsigned long long kNone = std::numeric_limits<unsigned long long>::max();

// Smallest ratio with ties going to the smallest mask.
struct MinRatio {
  bool any = false;
  Rational value;
  Bits mask = 0;
  void offer(const Rational& v, Bits m) {
    if (!any || v < value || (v == value && m < mask)) {
      any = true;
      value = v;
      mask = m;
    }
  }
};

OptimumResult unique_optimum(const IndependenceSystem& sys, const Objective& obj,
                             const IndependenceTable& table, const std::vector<Rational>& values,
                             Exec exec) {
  OptimumResult opt = exact_optimum(sys, obj, exec);
  if (opt.unique) return opt;
  // A tying set that adds nothing outside S* means even gamma = 1 fails.
  const Bits total = Bits{1} << sys.ground_size();
  for (Bits m = 0; m < total; ++m) {
    if (!table.test(m) || m == opt.set.bits() || values[m] != opt.value) continue;
    if (values[m & ~opt.set.bits()] == 0)
      throw StabilityError(StabilityError::Code::zero_weight_tie,
                           "competitor " + ElementSet(m).to_string() + " ties optimum " +
                               opt.set.to_string() + " with zero weight on both differences; "
                               "not even 1-stable");
  }
  throw StabilityError(StabilityError::Code::non_unique_optimum,
                       "optimum value " + to_string(opt.value) + " is reached by " +
                           std::to_string(opt.tie_count) + " independent sets");
}

Rational sum_boosted(const std::vector<ElementId>& ordering, const std::vector<Rational>& deltas,
                     ElementSet boosted) {
  Rational sum = 0;
  for (std::size_t i = 0; i < ordering.size(); ++i)
    if (boosted.contains(ordering[i])) sum += deltas[i];
  return sum;
}

void check_gamma(const Rational& gamma) {
  if (gamma < 1) throw InvalidArgument("gamma must be >= 1, got " + to_string(gamma));
}

}  // namespace

StabilityReport additive_stability_threshold(const IndependenceSystem& sys,
                                             const std::vector<Rational>& weights, Exec exec) {
  if (static_cast<int>(weights.size()) != sys.ground_size())
    throw InvalidArgument("additive_stability_threshold: one weight per element");
  for (const auto& w : weights)
    if (w < 0) throw InvalidArgument("additive weights must be nonnegative");
  const Objective obj = additive_objective(weights);
  const IndependenceTable table(sys, exec);
  const std::vector<Rational> values = tabulate(obj, exec);
  const OptimumResult opt = unique_optimum(sys, obj, table, values, exec);
  const Bits star = opt.set.bits();
  const long long total = 1LL << sys.ground_size();

  MinRatio best;
  auto consider = [&](MinRatio& acc, Bits m) {
    if (!table.test(m) || m == star) return;
    const Rational& den = values[m & ~star];
    if (den > 0) acc.offer(values[star & ~m] / den, m);
  };
  if (exec == Exec::serial) {
    for (long long m = 0; m < total; ++m) consider(best, static_cast<Bits>(m));
  } else {
#pragma omp parallel
    {
      MinRatio local;
#pragma omp for schedule(static)
      for (long long m = 0; m < total; ++m) consider(local, static_cast<Bits>(m));
#pragma omp critical(substab_threshold)
      if (local.any) best.offer(local.value, local.mask);
    }
  }

  StabilityReport report;
  report.kind = ReportKind::additive_exact;
  report.optimum = opt.set;
  if (!best.any) return report;
  report.gamma_star = best.value;
  report.competing_set = ElementSet(best.mask);
  AdditivePerturbation pert;
  pert.gamma = best.value;
  pert.multipliers.assign(weights.size(), Rational(1));
  for (ElementId e : report.competing_set - opt.set) pert.multipliers[e] = best.value;
  report.certificate = pert;
  return report;
}

SequencePerturbation sequence_perturbation(const Objective& obj,
                                           const std::vector<ElementId>& ordering,
                                           const Rational& gamma) {
  check_gamma(gamma);
  SequencePerturbation pert;
  pert.gamma = gamma;
  ElementSet prefix;
  Rational current = obj.value(prefix);
  for (ElementId e : ordering) {
    if (e < 0 || e >= obj.ground_size())
      throw InvalidArgument("ordering element " + std::to_string(e) + " outside ground set");
    if (prefix.contains(e))
      throw InvalidArgument("ordering repeats element " + std::to_string(e));
    prefix = prefix.with(e);
    Rational next = obj.value(prefix);
    pert.ordering.push_back(e);
    pert.deltas.push_back(next - current);
    current = std::move(next);
  }
  pert.boosted = prefix;
  return pert;
}

Objective build_sequence_perturbation(const Objective& obj, const SequencePerturbation& pert) {
  check_gamma(pert.gamma);
  if (pert.ordering.size() != pert.deltas.size())
    throw InvalidArgument("sequence perturbation needs one delta per ordering position");
  const std::vector<Rational> base = tabulate(obj);
  const Rational scale = pert.gamma - 1;
  std::vector<std::optional<Rational>> values(base.size());
  for (Bits m = 0; m < base.size(); ++m) {
    Rational v = base[m];
    for (std::size_t i = 0; i < pert.ordering.size(); ++i) {
      const ElementId e = pert.ordering[i];
      if (pert.boosted.contains(e) && ElementSet(m).contains(e)) v += scale * pert.deltas[i];
    }
    values[m] = std::move(v);
  }
  return table_objective(obj.ground_size(), std::move(values));
}

Objective build_sequence_perturbation(const Objective& obj,
                                      const std::vector<ElementId>& ordering,
                                      const Rational& gamma) {
  return build_sequence_perturbation(obj, sequence_perturbation(obj, ordering, gamma));
}

PerturbationValidation validate_gamma_perturbation(const Objective& f, const Objective& f_tilde,
                                                   const Rational& gamma, Exec exec) {
  if (f.ground_size() != f_tilde.ground_size())
    throw InvalidArgument("perturbation must share the ground set");
  check_gamma(gamma);
  const int n = f.ground_size();
  const std::vector<Rational> v = tabulate(f, exec);
  const std::vector<Rational> vt = tabulate(f_tilde, exec);

  PerturbationValidation out;
  const ObjectiveReport shape = validate_table(n, vt, exec);
  if (!shape.monotone || !shape.submodular) {
    out.shape.ok = false;
    out.shape.witness = shape;
  }

  auto sandwich_bad = [&](Bits s) { return vt[s] < v[s] || vt[s] > gamma * v[s]; };
  auto marginal_bad = [&](Bits s, ElementId j) {
    const Bits sj = s | (Bits{1} << j);
    const Rational lift = (vt[sj] - vt[s]) - (v[sj] - v[s]);
    return lift < 0 || lift > (gamma - 1) * v[Bits{1} << j];
  };
  auto first_marginal_bad = [&](Bits s) -> std::optional<ElementId> {
    for (ElementId j = 0; j < n; ++j)
      if (!((s >> j) & 1U) && marginal_bad(s, j)) return j;
    return std::nullopt;
  };

  const long long total = 1LL << n;
  unsigned long long first_sandwich = kNone;
  unsigned long long first_marginal = kNone;
#pragma omp parallel for schedule(static) reduction(min : first_sandwich, first_marginal) \
    if (exec == Exec::parallel)
  for (long long m = 0; m < total; ++m) {
    const Bits s = static_cast<Bits>(m);
    if (s < first_sandwich && sandwich_bad(s)) first_sandwich = s;
    if (s < first_marginal && first_marginal_bad(s)) first_marginal = s;
  }
  if (first_sandwich != kNone) {
    out.sandwich.ok = false;
    out.sandwich.witness = ElementSet(first_sandwich);
  }
  if (first_marginal != kNone) {
    out.marginals.ok = false;
    out.marginals.witness = MarginalWitness{ElementSet(first_marginal),
                                            *first_marginal_bad(first_marginal)};
  }
  return out;
}

CertificateResult ordering_certificate(const Objective& obj, ElementSet a, ElementSet b) {
  if (a == b) throw PreconditionError("competitor equals the optimum; no certificate needed");
  const Rational fa = obj.value(a);
  const Rational fb = obj.value(b);
  if (fa > fb)
    throw PreconditionError("competitor " + a.to_string() + " beats " + b.to_string() +
                            "; the second set is not optimal");
  GreedyOrdering ordering = greedy_ordering(obj, a);
  const ElementSet boosted = a - b;
  const Rational sum = sum_boosted(ordering.order, ordering.deltas, boosted);
  if (sum == 0)
    return NoCertificate{"boosted elements " + boosted.to_string() +
                         " contribute zero marginal value; certificate unavailable from this "
                         "family"};
  SequencePerturbation pert{std::move(ordering.order), std::move(ordering.deltas), boosted,
                            1 + (fb - fa) / sum};
  return pert;
}

CertificateResult greedy_failure_certificate(const IndependenceSystem& sys, const Objective& obj,
                                             const SolveTrace& trace, ElementSet s_star) {
  if (sys.ground_size() != obj.ground_size())
    throw InvalidArgument("system and objective ground sizes differ");
  const ElementSet s = trace.final_set;
  if (s == s_star) throw PreconditionError("greedy returned the optimum; no certificate needed");
  const ElementSet boosted = s - s_star;
  const Rational sum = sum_boosted(trace.picks, trace.deltas, boosted);
  if (sum == 0)
    return NoCertificate{"greedy deltas of " + boosted.to_string() + " sum to zero"};
  const Rational gap = obj.value(s_star) - obj.value(s);
  if (gap < 0)
    throw PreconditionError("greedy output beats " + s_star.to_string() +
                            "; the second set is not optimal");
  return SequencePerturbation{trace.picks, trace.deltas, boosted, 1 + gap / sum};
}

CertificateResult local_search_failure_certificate(const IndependenceSystem& sys,
                                                   const Objective& obj,
                                                   const SolveTrace& local_opt_trace,
                                                   ElementSet s_star, int p) {
  const ElementSet a = local_opt_trace.final_set;
  if (a == s_star) throw PreconditionError("local search returned the optimum");
  if (const auto swap = best_improving_swap(sys, obj, a, p, 1))
    throw PreconditionError("set " + a.to_string() + " is not (" + std::to_string(p) +
                            ",1)-swap-stable: swapping out " + swap->removed.to_string() +
                            " for " + swap->added.to_string() + " improves it");
  return ordering_certificate(obj, a, s_star);
}

bool BlockCertificate::ok() const {
  for (const auto& v : validations)
    if (!v.ok()) return false;
  return gamma <= 2;
}

BlockCertificateResult block_perturbation_certificate(const IndependenceSystem& sys,
                                                      const std::vector<ElementSet>& blocks,
                                                      const std::vector<Objective>& f_list,
                                                      const SolveTrace& trace,
                                                      ElementSet s_star) {
  const int n = sys.ground_size();
  const Objective total = block_sum_objective(n, blocks, f_list);
  if (trace.final_set == s_star)
    throw PreconditionError("greedy returned the optimum; no certificate needed");
  if (p_extendibility(sys, 1) != 1)
    throw PreconditionError("block certificates need a matroid (1-extendible) system");

  const ElementSet s = trace.final_set;
  const ElementSet boosted = s - s_star;
  std::vector<SequencePerturbation> per_block(blocks.size());
  Rational sum = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    // Greedy picks inside block i, renumbered locally; their marginals on the
    // block's prefix are exactly the in-block terms of the greedy deltas.
    std::vector<ElementId> local_order;
    ElementSet local_boost;
    for (ElementId e : trace.picks) {
      if (!blocks[i].contains(e)) continue;
      const auto local = static_cast<ElementId>(
          std::popcount(compress(ElementSet::full(e), blocks[i])));
      local_order.push_back(local);
      if (boosted.contains(e)) local_boost = local_boost.with(local);
    }
    per_block[i] = sequence_perturbation(f_list[i], local_order, Rational(1));
    per_block[i].boosted = local_boost;
    sum += sum_boosted(per_block[i].ordering, per_block[i].deltas, local_boost);
  }
  if (sum == 0) return NoCertificate{"greedy marginals of " + boosted.to_string() + " sum to zero"};

  BlockCertificate cert;
  cert.gamma = 1 + (total.value(s_star) - total.value(s)) / sum;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    per_block[i].gamma = cert.gamma;
    cert.perturbed.push_back(build_sequence_perturbation(f_list[i], per_block[i]));
    cert.validations.push_back(
        validate_gamma_perturbation(f_list[i], cert.perturbed.back(), cert.gamma));
  }
  return cert;
}

StabilityReport submodular_stability_upper_bound(const IndependenceSystem& sys,
                                                 const Objective& obj, Exec exec) {
  if (sys.ground_size() != obj.ground_size())
    throw InvalidArgument("system and objective ground sizes differ");
  const IndependenceTable table(sys, exec);
  const std::vector<Rational> values = tabulate(obj, exec);
  const OptimumResult opt = unique_optimum(sys, obj, table, values, exec);
  const Bits star = opt.set.bits();
  const long long total = 1LL << sys.ground_size();

  // Along the greedy ordering of D = T\S* the deltas telescope to f(D).
  MinRatio best;
  auto consider = [&](MinRatio& acc, Bits m) {
    if (!table.test(m) || m == star) return;
    const Rational& fd = values[m & ~star];
    if (fd > 0) acc.offer(1 + (opt.value - values[m]) / fd, m);
  };
  if (exec == Exec::serial) {
    for (long long m = 0; m < total; ++m) consider(best, static_cast<Bits>(m));
  } else {
#pragma omp parallel
    {
      MinRatio local;
#pragma omp for schedule(static)
      for (long long m = 0; m < total; ++m) consider(local, static_cast<Bits>(m));
#pragma omp critical(substab_upper_bound)
      if (local.any) best.offer(local.value, local.mask);
    }
  }

  StabilityReport report;
  report.kind = ReportKind::submodular_upper_bound;
  report.optimum = opt.set;
  if (!best.any) return report;
  report.gamma_star = best.value;
  report.competing_set = ElementSet(best.mask);
  const ElementSet d = report.competing_set - opt.set;
  GreedyOrdering ordering = greedy_ordering(obj, d);
  report.certificate =
      SequencePerturbation{std::move(ordering.order), std::move(ordering.deltas), d, best.value};
  return report;
}

}  // namespace substab
