#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "substab/element_set.hpp"
#include "substab/exec.hpp"
#include "substab/objectives.hpp"
#include "substab/rational.hpp"
#include "substab/solvers.hpp"
#include "substab/systems.hpp"

namespace substab {

/// Per-element weight multipliers, each in [1, gamma].
struct AdditivePerturbation {
  std::vector<Rational> multipliers;
  Rational gamma;
};

/// f~(S) = f(S) + (gamma - 1) * sum of deltas[i] over positions i with
/// ordering[i] in S ∩ boosted. deltas[i] is the marginal of ordering[i] on
/// the prefix ordering[0..i-1].
struct SequencePerturbation {
  std::vector<ElementId> ordering;
  std::vector<Rational> deltas;
  ElementSet boosted;
  Rational gamma;
};

enum class ReportKind { additive_exact, submodular_upper_bound };

struct StabilityReport {
  ReportKind kind = ReportKind::additive_exact;
  /// Empty means infinity: no competitor can ever match the optimum.
  std::optional<Rational> gamma_star;
  ElementSet optimum;
  ElementSet competing_set;
  std::optional<std::variant<AdditivePerturbation, SequencePerturbation>> certificate;
};

/// gamma* = min over independent S != S* with w(S\S*) > 0 of
/// w(S*\S) / w(S\S*). Throws StabilityError when the optimum is not unique
/// or some S != S* ties at zero weight on both differences.
StabilityReport additive_stability_threshold(const IndependenceSystem& sys,
                                             const std::vector<Rational>& weights,
                                             Exec exec = Exec::parallel);

/// Marginals of `ordering` along its own prefixes; all elements boosted.
SequencePerturbation sequence_perturbation(const Objective& obj,
                                           const std::vector<ElementId>& ordering,
                                           const Rational& gamma);

/// Materializes f~ of a sequence perturbation as a table objective.
Objective build_sequence_perturbation(const Objective& obj, const SequencePerturbation& pert);
Objective build_sequence_perturbation(const Objective& obj,
                                      const std::vector<ElementId>& ordering,
                                      const Rational& gamma);

template <class T>
struct PropertyCheck {
  bool ok = true;
  std::optional<T> witness;
};

struct MarginalWitness {
  ElementSet set;
  ElementId element;
};

struct PerturbationValidation {
  /// f~ monotone and submodular.
  PropertyCheck<ObjectiveReport> shape;
  /// f <= f~ <= gamma f.
  PropertyCheck<ElementSet> sandwich;
  /// 0 <= f~_S(j) - f_S(j) <= (gamma - 1) f({j}).
  PropertyCheck<MarginalWitness> marginals;

  bool ok() const { return shape.ok && sandwich.ok && marginals.ok; }
};

/// Exhaustive check that f_tilde is a gamma-perturbation of f.
PerturbationValidation validate_gamma_perturbation(const Objective& f, const Objective& f_tilde,
                                                   const Rational& gamma,
                                                   Exec exec = Exec::parallel);

/// Why a certificate family produced nothing.
struct NoCertificate {
  std::string reason;
};

using CertificateResult = std::variant<SequencePerturbation, NoCertificate>;

/// Boosts the greedy deltas of S\S* along the greedy picks; gamma is the
/// smallest value with f~(S) >= f~(S*). Throws PreconditionError when greedy
/// already returned s_star.
CertificateResult greedy_failure_certificate(const IndependenceSystem& sys, const Objective& obj,
                                             const SolveTrace& trace, ElementSet s_star);

/// Boosts the marginals of A\B along a greedy ordering of A, where A is the
/// competitor and B the optimum. gamma = 1 + (f(B) - f(A)) / sum of boosted
/// deltas. Does not check that A is a local optimum.
CertificateResult ordering_certificate(const Objective& obj, ElementSet a, ElementSet b);

/// ordering_certificate for a (p,1)-swap-stable A. Throws PreconditionError
/// when A has an improving (p,1)-swap or equals s_star.
CertificateResult local_search_failure_certificate(const IndependenceSystem& sys,
                                                   const Objective& obj,
                                                   const SolveTrace& local_opt_trace,
                                                   ElementSet s_star, int p);

struct BlockCertificate {
  Rational gamma;
  /// f~_i on block i, block-local indices.
  std::vector<Objective> perturbed;
  std::vector<PerturbationValidation> validations;
  bool ok() const;
};

using BlockCertificateResult = std::variant<BlockCertificate, NoCertificate>;

/// Per-block perturbations f~_i = f_i + (gamma - 1) * (boost of block i)
/// where each block's boost sums the greedy marginals of its elements in
/// S\S*, measured within the block. Requires a matroid (1-extendible).
BlockCertificateResult block_perturbation_certificate(const IndependenceSystem& sys,
                                                      const std::vector<ElementSet>& blocks,
                                                      const std::vector<Objective>& f_list,
                                                      const SolveTrace& trace,
                                                      ElementSet s_star);

/// Minimum certificate gamma over every independent T != S*, using the
/// greedy ordering of T\S*. The instance is not gamma-stable for any gamma at
/// or above the reported bound.
StabilityReport submodular_stability_upper_bound(const IndependenceSystem& sys,
                                                 const Objective& obj,
                                                 Exec exec = Exec::parallel);

}  // namespace substab
