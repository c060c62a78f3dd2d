#include "substab/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

#include "substab/analysis.hpp"
#include "substab/errors.hpp"
#include "substab/generators.hpp"
#include "substab/solvers.hpp"
#include "substab/stability.hpp"

namespace substab {
namespace {

using Bits = ElementSet::Bits;

Rational R(long num, long den = 1) { return make_rational(num, den); }

std::string str(const Rational& r) { return to_string(r); }
std::string str(ElementSet s) { return s.to_string(); }
std::string str(bool b) { return b ? "true" : "false"; }
std::string str(std::size_t v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }
std::string str(const std::optional<Rational>& r) { return r ? to_string(*r) : "infinity"; }
std::string str(const std::optional<int>& v) { return v ? std::to_string(*v) : "none"; }

class Checks {
 public:
  void equal(std::string claim, std::string note, const Rational& expected, const Rational& observed) {
    add(std::move(claim), std::move(note), str(expected), str(observed), expected == observed);
  }
  template <class T>
  void equal(std::string claim, std::string note, const T& expected, const T& observed) {
    add(std::move(claim), std::move(note), str(expected), str(observed), expected == observed);
  }
  void holds(std::string claim, std::string note, std::string expected, std::string observed,
             bool ok) {
    add(std::move(claim), std::move(note), std::move(expected), std::move(observed), ok);
  }
  std::vector<Expectation> take() { return std::move(items_); }

 private:
  void add(std::string claim, std::string note, std::string expected, std::string observed,
           bool ok) {
    items_.push_back({std::move(claim), std::move(note), std::move(expected), std::move(observed), ok});
  }
  std::vector<Expectation> items_;
};

// Parameter access ------------------------------------------------------

Rational rat_param(const ScenarioParams& p, const std::string& key) {
  return parse_rational(p.at(key));
}

int int_param(const ScenarioParams& p, const std::string& key) {
  const std::string& raw = p.at(key);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != raw.size() || raw.empty())
    throw InvalidArgument("parameter '" + key + "' must be an integer, got '" + raw + "'");
  return v;
}

std::uint64_t seed_param(const ScenarioParams& p) {
  const std::string& raw = p.at("seed");
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    if (used == raw.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("parameter 'seed' must be a nonnegative integer, got '" + raw + "'");
}

void require_positive(const Rational& v, const char* what) {
  if (v <= 0) throw InvalidArgument(std::string(what) + " must be positive");
}

// Sweep machinery -------------------------------------------------------

struct Outcome {
  std::string group;
  std::uint64_t seed = 0;
  bool skipped = false;
  bool failed = false;
  std::size_t evaluated = 0;  // sets or runs checked inside the instance
  std::optional<Rational> ratio;
  std::optional<Rational> gamma;
  std::vector<std::string> violations;
  std::string error;
};

// Runs fn(i) for i in [0, count) across threads; results keep index order.
std::vector<Outcome> fan_out(std::size_t count, const std::function<Outcome(std::size_t)>& fn) {
  std::vector<Outcome> out(count);
  const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  }
  return out;
}

void keep_min(std::optional<Rational>& acc, const Rational& v) {
  if (!acc || v < *acc) acc = v;
}
void keep_max(std::optional<Rational>& acc, const Rational& v) {
  if (!acc || v > *acc) acc = v;
}

// Folds outcomes into rows (one per group, in the order given) and adds the
// standard sweep expectations.
void summarize(ScenarioResult& result, Checks& checks, const std::vector<Outcome>& outcomes,
               std::vector<std::pair<std::string, SweepRow>> groups, const std::string& note,
               bool require_failures) {
  std::size_t violations = 0;
  std::size_t errors = 0;
  std::size_t evaluated = 0;
  std::size_t failures = 0;
  Json examples = Json::array();
  for (const Outcome& o : outcomes) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == o.group; });
    if (!o.error.empty()) {
      ++errors;
      if (examples.size() < 10) examples.push_back({{"seed", o.seed}, {"error", o.error}});
      continue;
    }
    if (it == groups.end()) continue;
    SweepRow& row = it->second;
    if (o.skipped) {
      ++row.skipped;
      continue;
    }
    ++row.instances;
    ++evaluated;
    row.failures += o.failed ? 1 : 0;
    failures += o.failed ? 1 : 0;
    row.violations += o.violations.size();
    violations += o.violations.size();
    if (o.ratio) keep_min(row.worst_ratio, *o.ratio);
    if (o.gamma) keep_max(row.max_gamma, *o.gamma);
    for (const auto& v : o.violations)
      if (examples.size() < 10) examples.push_back({{"seed", o.seed}, {"violation", v}});
  }
  for (auto& [key, row] : groups) result.rows.push_back(row);
  result.details["instances"] = outcomes.size();
  result.details["evaluated"] = evaluated;
  result.details["problems"] = examples;

  checks.equal("violations", note, std::size_t{0}, violations);
  checks.equal("errors", "every instance must run to completion", std::size_t{0}, errors);
  checks.holds("instances evaluated", "skips come only from tied optima", "> 0", str(evaluated),
               evaluated > 0);
  if (require_failures)
    checks.holds("algorithm failures observed", "the sweep must exercise the certificate path",
                 "> 0", str(failures), failures > 0);
}

PerturbationValidation validate_certificate(const Objective& obj, const SequencePerturbation& cert) {
  return validate_gamma_perturbation(obj, build_sequence_perturbation(obj, cert), cert.gamma);
}

std::string describe(const PerturbationValidation& v) {
  return to_json(v).dump();
}

std::string rstr(const Rational& r) { return to_string(r); }

// Named instances --------------------------------------------------------

Instance knapsack_random(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> sizes(n);
  for (auto& s : sizes) s = R(1 + static_cast<long>(rng() % 8), 4);
  const Rational budget = R(4 + static_cast<long>(rng() % 13), 4);
  std::vector<Rational> w(n, Rational(1));
  return make_instance("knapsack_random/" + std::to_string(seed), knapsack_system(sizes, budget),
                       additive_objective(w));
}

// Single-instance scenarios ------------------------------------------------

void add_trace(ScenarioResult& r, const char* key, const SolveTrace& t) { r.details[key] = to_json(t); }

ScenarioResult matching_path(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const Rational eps = rat_param(params, "eps");
  require_positive(eps, "eps");
  const Instance inst = matching_path_instance(eps);
  const SolveTrace g = greedy(inst.system, inst.objective);
  const OptimumResult opt = exact_optimum(inst.system, inst.objective);
  const StabilityReport st = additive_stability_threshold(inst.system, *additive_weights(inst.objective));
  const auto pe = p_extendibility(inst.system);
  c.equal("greedy set", "the heavier middle edge is taken first and blocks both others",
          ElementSet::of({1}), g.final_set);
  c.equal("greedy value", "weight of the middle edge", 1 + eps, g.final_value);
  c.equal("optimum set", "the two outer edges", ElementSet::of({0, 2}), opt.set);
  c.equal("optimum value", "two unit edges", R(2), opt.value);
  c.equal("optimum unique", "no other matching weighs 2", true, opt.unique);
  c.equal("gamma*", "boosting the middle edge by 2/(1+eps) ties the optimum",
          std::optional<Rational>(2 / (1 + eps)), st.gamma_star);
  c.equal("competing set", "the greedy matching", ElementSet::of({1}), st.competing_set);
  c.equal("p_extendibility", "matchings are 2-extendible", std::optional<int>(2), pe);
  c.holds("gamma* < p", "greedy fails although the instance is nearly p-stable", "< 2",
          str(st.gamma_star), st.gamma_star && *st.gamma_star < 2);
  const auto cert = greedy_failure_certificate(inst.system, inst.objective, g, opt.set);
  const auto* seq = std::get_if<SequencePerturbation>(&cert);
  c.equal("certificate gamma", "additive certificate matches gamma*",
          std::optional<Rational>(2 / (1 + eps)),
          seq ? std::optional<Rational>(seq->gamma) : std::nullopt);
  add_trace(r, "greedy", g);
  r.details["optimum"] = to_json(opt);
  r.details["stability"] = to_json(st);
  r.rows.push_back({"greedy", "matching (p=2)", "additive", 1, 1, 0, 0, g.final_value / opt.value,
                    st.gamma_star, "1/2", "2", "recovery needs gamma* > 2"});
  r.expectations = c.take();
  return r;
}

ScenarioResult knapsack(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int m = int_param(params, "m");
  const Rational eps = rat_param(params, "eps");
  require_positive(eps, "eps");
  if (m < 2) throw InvalidArgument("knapsack scenario needs m >= 2");
  const Instance inst = knapsack_instance(m, eps);
  const SolveTrace g = greedy(inst.system, inst.objective);
  const OptimumResult opt = exact_optimum(inst.system, inst.objective);
  const StabilityReport st = additive_stability_threshold(inst.system, *additive_weights(inst.objective));
  const Rational psys = p_system_parameter(inst.system);
  const auto pe = p_extendibility(inst.system);
  ElementSet a_part = ElementSet::full(m);
  ElementSet c_part = ElementSet::full(2 * m + 1) - ElementSet::full(m + 1);
  c.equal("greedy set", "all of A, then e* fills the budget", a_part.with(m), g.final_set);
  c.equal("greedy value", "2m + 1 + eps", R(2 * m + 1) + eps, g.final_value);
  c.equal("optimum set", "A together with all of C", a_part | c_part, opt.set);
  c.equal("optimum value", "3m", R(3 * m), opt.value);
  const Rational claimed = R(m) / (1 + eps);
  c.equal("gamma*", "claimed: only e* can be boosted, so gamma (1+eps) >= m",
          std::optional<Rational>(claimed), st.gamma_star);
  c.holds("gamma* > m-1", "claimed high stability", "> " + std::to_string(m - 1),
          str(st.gamma_star), !st.gamma_star || *st.gamma_star > m - 1);
  c.holds("p_system < 2", "every feasible set extends to at least m+1 of at most 2m elements", "< 2",
          rstr(psys), psys < 2);
  c.equal("p_extendibility", "after taking A, e* blocks every C element",
          std::optional<int>(m), pe);
  if (inst.system.ground_size() <= hereditary_cap())
    c.equal("hereditary parameter", "contracting A leaves a system with ratio m", R(m),
            hereditary_parameter(inst.system));
  const auto cert = greedy_failure_certificate(inst.system, inst.objective, g, opt.set);
  const auto* seq = std::get_if<SequencePerturbation>(&cert);
  c.equal("greedy certificate gamma", "boost e* until A + e* ties the optimum",
          std::optional<Rational>(claimed), seq ? std::optional<Rational>(seq->gamma) : std::nullopt);
  add_trace(r, "greedy", g);
  r.details["optimum"] = to_json(opt);
  r.details["stability"] = to_json(st);
  r.details["p_system"] = rstr(psys);
  r.rows.push_back({"greedy", "p-system (knapsack)", "additive", 1, 1, 0, 0, g.final_value / opt.value,
                    st.gamma_star, "none", "none", "p-system: no stability threshold guarantees recovery"});
  r.expectations = c.take();
  return r;
}

ScenarioResult atsp_triangle(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const Rational eps = rat_param(params, "eps");
  require_positive(eps, "eps");
  const Instance inst = atsp_triangle_instance(eps);
  const SolveTrace g = greedy(inst.system, inst.objective);
  const OptimumResult opt = exact_optimum(inst.system, inst.objective);
  const StabilityReport st = additive_stability_threshold(inst.system, *additive_weights(inst.objective));
  const auto pe = p_extendibility(inst.system);
  c.equal("greedy value", "the reverse arc first; only zero arcs fit afterwards", 1 + eps, g.final_value);
  ElementSet cycle = ElementSet::of({atsp_arc(3, 0, 1), atsp_arc(3, 1, 2), atsp_arc(3, 2, 0)});
  c.equal("optimum set", "the unit Hamiltonian cycle", cycle, opt.set);
  c.equal("optimum value", "three unit arcs", R(3), opt.value);
  c.equal("gamma*", "boosting the reverse arc by 3/(1+eps) ties the optimum",
          std::optional<Rational>(3 / (1 + eps)), st.gamma_star);
  c.holds("gamma* < 3", "greedy recovery is only promised for 3-stable instances", "< 3",
          str(st.gamma_star), st.gamma_star && *st.gamma_star < 3);
  c.equal("p_extendibility", "ATSP systems are 3-extendible", std::optional<int>(3), pe);
  const auto cert = greedy_failure_certificate(inst.system, inst.objective, g, opt.set);
  const auto* seq = std::get_if<SequencePerturbation>(&cert);
  c.holds("certificate gamma <= 3", "greedy failure certificate within p", "<= 3",
          seq ? rstr(seq->gamma) : "none", seq && seq->gamma <= 3);
  add_trace(r, "greedy", g);
  r.details["optimum"] = to_json(opt);
  r.details["stability"] = to_json(st);
  r.rows.push_back({"greedy", "ATSP (p=3)", "additive", 1, 1, 0, 0, g.final_value / opt.value,
                    st.gamma_star, "1/3", "3", ""});
  r.expectations = c.take();
  return r;
}

ScenarioResult ls_2system(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int n = int_param(params, "n");
  const Rational high = rat_param(params, "high");
  const Rational low = rat_param(params, "low");
  require_positive(low, "low");
  if (n < 2 || n % 2 != 0) throw InvalidArgument("ls-2system needs even n >= 2");
  if (high <= low) throw InvalidArgument("ls-2system needs high > low");
  const Instance inst = two_system_instance(n, high, low);
  const ElementSet a = ElementSet::full(n);
  LocalSearchConfig cfg;
  cfg.remove_cap = 2;
  cfg.add_cap = 1;
  cfg.start = StartKind::explicit_set;
  cfg.initial_set = a;
  const SolveTrace ls = local_search(inst.system, inst.objective, cfg);
  const OptimumResult opt = exact_optimum(inst.system, inst.objective);
  const StabilityReport st = additive_stability_threshold(inst.system, *additive_weights(inst.objective));
  const Rational psys = p_system_parameter(inst.system);
  c.equal("local search set", "adding e* needs n/2 removals", a, ls.final_set);
  c.holds("A weight < 1e-4", "A carries almost no weight", "< 1/10000", rstr(ls.final_value),
          ls.final_value < R(1, 10000));
  c.holds("optimum contains e*", "e* alone outweighs A", "true", str(opt.set.contains(n)),
          opt.set.contains(n));
  c.holds("optimum value > 1", "e* plus the heaviest half of A", "> 1", rstr(opt.value), opt.value > 1);
  c.holds("gamma* > 1e5", "swapping tiers inside A needs a huge boost", "> 100000",
          str(st.gamma_star), !st.gamma_star || *st.gamma_star > 100000);
  c.holds("p_system <= 2", "a 2-system: every base of any Y is within a factor 2 of the largest", "<= 2",
          rstr(psys), psys <= 2);
  add_trace(r, "local_search", ls);
  r.details["optimum"] = to_json(opt);
  r.details["stability"] = to_json(st);
  r.rows.push_back({"local search (2,1)", "2-system", "additive", 1, 1, 0, 0, ls.final_value / opt.value,
                    st.gamma_star, "none", "none",
                    "unbounded: stuck at a near-zero set although gamma* > 1e5"});
  r.expectations = c.take();
  return r;
}

ScenarioResult ls_pextendible_lb(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int p = int_param(params, "p");
  const int n = int_param(params, "n");
  const Rational eps = rat_param(params, "eps");
  const Rational b_size_r = (p - eps) * n;
  if (p < 1 || n < 1 || eps <= 0 || eps >= p || b_size_r.get_den() != 1)
    throw InvalidArgument("ls-pextendible-lb needs (p - eps) n to be a positive integer");
  const int b_size = static_cast<int>(b_size_r.get_num().get_si());
  const Instance inst = ab_lower_bound_instance(n, b_size, p, p - eps);
  const ElementSet a = ElementSet::full(n);
  LocalSearchConfig cfg;
  cfg.remove_cap = p;
  cfg.add_cap = 1;
  cfg.start = StartKind::explicit_set;
  cfg.initial_set = a;
  const SolveTrace ls = local_search(inst.system, inst.objective, cfg);
  const OptimumResult opt = exact_optimum(inst.system, inst.objective);
  const Rational square = (p - eps) * (p - eps);
  c.equal("local search set", "each B element costs p removals from A", a, ls.final_set);
  c.equal("local search value", "|A|", R(n), ls.final_value);
  c.equal("optimum set", "all of B", inst.system.ground() - a, opt.set);
  c.equal("optimum value", "(p - eps)^2 |A|", square * n, opt.value);
  c.equal("optimum unique", "B is the only maximum", true, opt.unique);
  c.equal("ratio", "(p - eps)^2", square, opt.value / ls.final_value);
  const auto cert = local_search_failure_certificate(inst.system, inst.objective, ls, opt.set, p);
  const auto* seq = std::get_if<SequencePerturbation>(&cert);
  c.equal("certificate gamma", "boost all of A up to w(B)", std::optional<Rational>(square),
          seq ? std::optional<Rational>(seq->gamma) : std::nullopt);
  // The extendibility scan is exponential in |B|; a smaller member of the
  // same family (same p, same |B|/|A|) stands in for the structural claim.
  const int small_a = 2 * static_cast<int>(Rational(p - eps).get_den().get_si());
  const Rational small_b = (p - eps) * small_a;
  const Instance small =
      ab_lower_bound_instance(small_a, static_cast<int>(small_b.get_num().get_si()), p, p - eps);
  if (small.system.ground_size() <= 14) {
    const auto pe = p_extendibility(small.system);
    c.holds("p_extendibility <= p", "the A/B family is p-extendible (checked on a smaller member)",
            "<= " + std::to_string(p), str(pe), pe.value_or(p + 1) <= p);
  }
  add_trace(r, "local_search", ls);
  r.details["optimum"] = to_json(opt);
  r.rows.push_back({"local search (p,1)", "p-extendible (p=" + std::to_string(p) + ")", "additive", 1, 1,
                    0, 0, ls.final_value / opt.value,
                    seq ? std::optional<Rational>(seq->gamma) : std::nullopt,
                    "1/" + std::to_string(p * p), std::to_string(p * p), "lower-bound family"});
  r.expectations = c.take();
  return r;
}

ScenarioResult figure_counter(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const Rational eps = rat_param(params, "eps");
  require_positive(eps, "eps");
  const Instance inst = figure_counter_instance(eps);
  const ElementSet a = ElementSet::of({0, 1});
  const ElementSet b = ElementSet::of({2, 3, 4, 5});
  LocalSearchConfig cfg;
  cfg.remove_cap = 2;
  cfg.add_cap = 1;
  cfg.start = StartKind::explicit_set;
  cfg.initial_set = a;
  const SolveTrace ls = local_search(inst.system, inst.objective, cfg);
  const OptimumResult opt = exact_optimum(inst.system, inst.objective);
  const auto optima = all_local_optima(inst.system, inst.objective, 2, 1);
  const bool a_local = std::any_of(optima.begin(), optima.end(), [&](const LocalOptimum& o) { return o.set == a; });
  const auto swap = best_improving_swap(inst.system, inst.objective, a, 2, 1);
  c.equal("local search set", "claimed: A admits no improving (2,1)-swap", a, ls.final_set);
  c.equal("local search value", "claimed: 2 + 2 eps", 2 + 2 * eps, ls.final_value);
  c.equal("A is a (2,1)-local optimum", "claimed", true, a_local);
  c.equal("optimum set", "B1 and B2", b, opt.set);
  c.equal("optimum value", "four elements of weight 2", R(8), opt.value);
  const auto cert = ordering_certificate(inst.objective, a, opt.set);
  const auto* seq = std::get_if<SequencePerturbation>(&cert);
  c.equal("certificate gamma", "boost all of A until it ties 8", std::optional<Rational>(4 / (1 + eps)),
          seq ? std::optional<Rational>(seq->gamma) : std::nullopt);
  c.holds("certificate gamma < p^2", "tightness of the p^2 recovery bound", "< 4",
          seq ? rstr(seq->gamma) : "none", seq && seq->gamma < 4);
  c.equal("p_extendibility", "stated to be 2-extendible", std::optional<int>(2),
          p_extendibility(inst.system));
  add_trace(r, "local_search", ls);
  r.details["optimum"] = to_json(opt);
  if (swap)
    r.details["improving_swap_from_A"] = {{"removed", to_json(swap->removed)},
                                          {"added", to_json(swap->added)},
                                          {"value", to_json(swap->value)}};
  r.rows.push_back({"local search (2,1)", "p-extendible (p=2)", "additive", 1, 1, 0, 0,
                    ls.final_value / opt.value, seq ? std::optional<Rational>(seq->gamma) : std::nullopt,
                    "1/4", "4", "tightness example"});
  r.expectations = c.take();
  return r;
}

ScenarioResult matroid_filmus(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const Rational eps = rat_param(params, "eps");
  require_positive(eps, "eps");
  const Instance inst = matroid_filmus_instance(eps);
  const SolveTrace g = greedy(inst.system, inst.objective);
  LocalSearchConfig cfg;
  cfg.remove_cap = 1;
  cfg.add_cap = 1;
  cfg.start = StartKind::greedy_seeded;
  const SolveTrace ls = local_search(inst.system, inst.objective, cfg);
  const OptimumResult opt = exact_optimum(inst.system, inst.objective);
  const Rational expected_gamma = 2 / (1 + 2 * eps);
  c.equal("objective valid", "coverage is monotone submodular", true,
          validate_objective(inst.objective).ok());
  c.equal("p_extendibility", "a partition matroid", std::optional<int>(1), p_extendibility(inst.system));
  c.equal("greedy set", "A1 then A2", ElementSet::of({0, 2}), g.final_set);
  c.equal("greedy value", "1 + 2 eps", 1 + 2 * eps, g.final_value);
  c.equal("local search set", "no (1,1)-swap improves {A1, A2}", ElementSet::of({0, 2}), ls.final_set);
  c.equal("optimum set", "B1 and B2", ElementSet::of({1, 3}), opt.set);
  c.equal("optimum value", "x and y", R(2), opt.value);
  const auto gc = greedy_failure_certificate(inst.system, inst.objective, g, opt.set);
  const auto lc = local_search_failure_certificate(inst.system, inst.objective, ls, opt.set, 1);
  const auto* gs = std::get_if<SequencePerturbation>(&gc);
  const auto* lsq = std::get_if<SequencePerturbation>(&lc);
  c.equal("greedy certificate gamma", "1 + (2 - (1 + 2 eps)) / (1 + 2 eps)",
          std::optional<Rational>(expected_gamma), gs ? std::optional<Rational>(gs->gamma) : std::nullopt);
  c.equal("local search certificate gamma", "same boost of {A1, A2}", std::optional<Rational>(expected_gamma),
          lsq ? std::optional<Rational>(lsq->gamma) : std::nullopt);
  c.holds("certificate gamma < p+1", "fails below the submodular recovery bound 2", "< 2",
          gs ? rstr(gs->gamma) : "none", gs && gs->gamma < 2);
  if (gs)
    c.equal("certificate validates", "sequence perturbations are valid", true,
            validate_certificate(inst.objective, *gs).ok());
  const StabilityReport ub = submodular_stability_upper_bound(inst.system, inst.objective);
  c.holds("upper bound <= certificate", "the bound minimizes over all competitors",
          "<= " + rstr(expected_gamma), str(ub.gamma_star), ub.gamma_star && *ub.gamma_star <= expected_gamma);
  add_trace(r, "greedy", g);
  add_trace(r, "local_search", ls);
  r.details["optimum"] = to_json(opt);
  r.details["upper_bound"] = to_json(ub);
  r.rows.push_back({"greedy / local search (1,1)", "matroid", "submodular", 1, 1, 0, 0, g.final_value / opt.value,
                    gs ? std::optional<Rational>(gs->gamma) : std::nullopt, "1/2", "2", ""});
  r.expectations = c.take();
  return r;
}

ScenarioResult cardinality(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int k = int_param(params, "k");
  const Rational eps = rat_param(params, "eps");
  require_positive(eps, "eps");
  if (k < 2) throw InvalidArgument("cardinality scenario needs k >= 2");
  const Instance inst = cardinality_instance(k, eps);
  const SolveTrace g = greedy(inst.system, inst.objective);
  const OptimumResult opt = exact_optimum(inst.system, inst.objective);
  const Rational inv = R(1, k);
  const Rational greedy_value = inv + (k - 1) * inv * (1 - inv) + eps;
  const Rational target = 2 - inv;
  c.equal("objective valid", "the repaired table is monotone submodular", true,
          validate_objective(inst.objective).ok());
  c.equal("first pick", "e has the largest singleton value", 0, g.picks.empty() ? -1 : g.picks.front());
  c.equal("greedy value", "1/k + (k-1)(1/k)(1-1/k) + eps", greedy_value, g.final_value);
  c.equal("optimum set", "all x_i", inst.system.ground().without(0), opt.set);
  c.equal("optimum value", "f(O) = 1", R(1), opt.value);
  const auto cert = greedy_failure_certificate(inst.system, inst.objective, g, opt.set);
  const auto* seq = std::get_if<SequencePerturbation>(&cert);
  const Rational expected = 1 + (1 - greedy_value) / (inv + eps);
  c.equal("certificate gamma", "only e can be boosted", std::optional<Rational>(expected),
          seq ? std::optional<Rational>(seq->gamma) : std::nullopt);
  const Rational lo = target - (2 * k - 1) * eps;
  c.holds("certificate within eps of 2 - 1/k", "gamma is convex in eps with slope -(2k-1) at 0",
          "[" + rstr(lo) + ", " + rstr(target) + "]", seq ? rstr(seq->gamma) : "none",
          seq && seq->gamma >= lo && seq->gamma <= target);
  if (seq)
    c.equal("certificate validates", "sequence perturbations are valid", true,
            validate_certificate(inst.objective, *seq).ok());
  const StabilityReport ub = submodular_stability_upper_bound(inst.system, inst.objective);
  c.holds("upper bound near 2 - 1/k", "minimum over all competitors", "[" + rstr(lo) + ", " + rstr(target) + "]",
          str(ub.gamma_star), ub.gamma_star && *ub.gamma_star >= lo && *ub.gamma_star <= target);
  add_trace(r, "greedy", g);
  r.details["optimum"] = to_json(opt);
  r.details["upper_bound"] = to_json(ub);
  r.rows.push_back({"greedy", "uniform matroid (k=" + std::to_string(k) + ")", "submodular", 1, 1, 0, 0,
                    g.final_value / opt.value, seq ? std::optional<Rational>(seq->gamma) : std::nullopt,
                    "", rstr(target), "stability needed exceeds the approximation factor"});
  r.expectations = c.take();
  return r;
}

// Sweeps ---------------------------------------------------------------------

int ground_for(std::size_t i, int lo, int hi) { return lo + static_cast<int>((i / 3) % (hi - lo + 1)); }

ScenarioResult greedy_additive_recovery(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int count = int_param(params, "instances");
  const std::uint64_t base = seed_param(params);
  const int max_n = int_param(params, "max_ground");
  auto outcomes = fan_out(count, [&](std::size_t i) {
    Outcome o;
    const int p = 1 + static_cast<int>(i % 3);
    o.seed = base + i;
    o.group = std::to_string(p);
    const Instance inst = generate({PartitionIntersectionFamily{p, ground_for(i, 6, max_n), 2 + static_cast<int>(i % 4), 2},
                                    AdditiveFamily{}, o.seed});
    const auto pe = p_extendibility(inst.system);
    if (!pe || *pe > p) o.violations.push_back("p_extendibility " + str(pe) + " exceeds " + std::to_string(p));
    const int bound = pe.value_or(p);
    const OptimumResult opt = exact_optimum(inst.system, inst.objective);
    if (!opt.unique) {
      o.skipped = true;
      return o;
    }
    const StabilityReport st = additive_stability_threshold(inst.system, *additive_weights(inst.objective));
    const SolveTrace g = greedy(inst.system, inst.objective);
    o.failed = g.final_set != opt.set;
    o.ratio = opt.value == 0 ? Rational(1) : Rational(g.final_value / opt.value);
    const bool stable = !st.gamma_star || *st.gamma_star > bound;
    if (stable && o.failed)
      o.violations.push_back("gamma* " + str(st.gamma_star) + " > p but greedy missed the optimum");
    if (o.failed) {
      const auto cert = greedy_failure_certificate(inst.system, inst.objective, g, opt.set);
      if (const auto* seq = std::get_if<SequencePerturbation>(&cert)) {
        o.gamma = seq->gamma;
        if (seq->gamma > bound) o.violations.push_back("certificate gamma " + rstr(seq->gamma) + " > p");
      } else {
        o.violations.push_back("no certificate: " + std::get<NoCertificate>(cert).reason);
      }
    }
    return o;
  });
  std::vector<std::pair<std::string, SweepRow>> groups;
  for (int p = 1; p <= 3; ++p)
    groups.push_back({std::to_string(p),
                      {"greedy", "intersection of " + std::to_string(p) + " partition matroids", "additive", 0, 0,
                       0, 0, std::nullopt, std::nullopt, "1/" + std::to_string(p), std::to_string(p), ""}});
  summarize(r, c, outcomes, groups, "greedy recovers p-stable optima; failures certify gamma <= p", true);
  r.expectations = c.take();
  return r;
}

ScenarioResult greedy_submodular_recovery(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int count = int_param(params, "instances");
  const std::uint64_t base = seed_param(params);
  const int max_n = int_param(params, "max_ground");
  auto outcomes = fan_out(count, [&](std::size_t i) {
    Outcome o;
    const int p = 1 + static_cast<int>(i % 2);
    o.seed = base + i;
    const bool coverage = (i / 2) % 2 == 0;
    o.group = std::to_string(p) + (coverage ? "c" : "b");
    ObjectiveFamily obj_family = coverage ? ObjectiveFamily(CoverageFamily{})
                                          : ObjectiveFamily(BlockSumFamily{2, CoverageFamily{6}});
    const Instance inst = generate(
        {PartitionIntersectionFamily{p, ground_for(i, 6, max_n), 2 + static_cast<int>(i % 3), 2}, obj_family, o.seed});
    const auto pe = p_extendibility(inst.system);
    const int bound = pe.value_or(p) + 1;
    const OptimumResult opt = exact_optimum(inst.system, inst.objective);
    const SolveTrace g = greedy(inst.system, inst.objective);
    o.failed = g.final_set != opt.set;
    o.ratio = opt.value == 0 ? Rational(1) : Rational(g.final_value / opt.value);
    if (o.failed) {
      const auto cert = greedy_failure_certificate(inst.system, inst.objective, g, opt.set);
      if (const auto* seq = std::get_if<SequencePerturbation>(&cert)) {
        o.gamma = seq->gamma;
        if (seq->gamma > bound) o.violations.push_back("certificate gamma " + rstr(seq->gamma) + " > p+1");
        const auto v = validate_certificate(inst.objective, *seq);
        if (!v.ok()) o.violations.push_back("certificate invalid: " + describe(v));
      } else if (g.final_value != opt.value) {
        o.violations.push_back("no certificate: " + std::get<NoCertificate>(cert).reason);
      }
    }
    return o;
  });
  std::vector<std::pair<std::string, SweepRow>> groups;
  for (int p = 1; p <= 2; ++p)
    for (const char* kind : {"c", "b"})
      groups.push_back({std::to_string(p) + kind,
                        {"greedy", "intersection of " + std::to_string(p) + " partition matroids",
                         std::string(kind) == "c" ? "coverage" : "block sum", 0, 0, 0, 0, std::nullopt,
                         std::nullopt, "1/" + std::to_string(p + 1), std::to_string(p + 1), ""}});
  summarize(r, c, outcomes, groups, "greedy failures certify gamma <= p+1 with a valid perturbation", true);
  r.expectations = c.take();
  return r;
}

ScenarioResult alpha_oracle(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int count = int_param(params, "instances");
  const std::uint64_t base = seed_param(params);
  const std::vector<Rational> alphas{R(1, 2), R(2, 3)};
  const std::size_t total = static_cast<std::size_t>(count) * alphas.size();
  auto outcomes = fan_out(total, [&](std::size_t i) {
    Outcome o;
    const Rational& alpha = alphas[i % alphas.size()];
    const std::size_t j = i / alphas.size();
    const int p = 1 + static_cast<int>(j % 2);
    const bool coverage = (j / 2) % 2 == 0;
    o.seed = base + j;
    o.group = rstr(alpha) + "/" + std::to_string(p);
    ObjectiveFamily obj_family = coverage ? ObjectiveFamily(CoverageFamily{}) : ObjectiveFamily(AdditiveFamily{});
    const Instance inst =
        generate({PartitionIntersectionFamily{p, ground_for(j, 6, 10), 2 + static_cast<int>(j % 3), 2}, obj_family, o.seed});
    const auto pe = p_extendibility(inst.system);
    const Rational bound = (pe.value_or(p) + alpha) / alpha;
    const OptimumResult opt = exact_optimum(inst.system, inst.objective);
    const SolveTrace g = greedy_alpha(inst.system, inst.objective, alpha, o.seed * 7 + i);
    o.failed = g.final_set != opt.set;
    o.ratio = opt.value == 0 ? Rational(1) : Rational(g.final_value / opt.value);
    if (o.failed) {
      const auto cert = greedy_failure_certificate(inst.system, inst.objective, g, opt.set);
      if (const auto* seq = std::get_if<SequencePerturbation>(&cert)) {
        o.gamma = seq->gamma;
        if (seq->gamma > bound)
          o.violations.push_back("certificate gamma " + rstr(seq->gamma) + " > " + rstr(bound));
        const auto v = validate_certificate(inst.objective, *seq);
        if (!v.ok()) o.violations.push_back("certificate invalid: " + describe(v));
      } else if (g.final_value != opt.value) {
        o.violations.push_back("no certificate: " + std::get<NoCertificate>(cert).reason);
      }
    }
    return o;
  });
  std::vector<std::pair<std::string, SweepRow>> groups;
  for (const Rational& alpha : alphas)
    for (int p = 1; p <= 2; ++p)
      groups.push_back({rstr(alpha) + "/" + std::to_string(p),
                        {"greedy alpha=" + rstr(alpha), "intersection of " + std::to_string(p) + " partition matroids",
                         "additive + coverage", 0, 0, 0, 0, std::nullopt, std::nullopt, "",
                         rstr((p + alpha) / alpha), ""}});
  summarize(r, c, outcomes, groups, "alpha-greedy failures certify gamma <= (p + alpha) / alpha", true);
  r.expectations = c.take();
  return r;
}

ScenarioResult welfare(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int count = int_param(params, "instances");
  const std::uint64_t base = seed_param(params);
  auto outcomes = fan_out(count, [&](std::size_t i) {
    Outcome o;
    o.seed = base + i;
    o.group = "welfare";
    const int players = 2 + static_cast<int>(i % 2);
    const int items = players == 2 ? 3 + static_cast<int>((i / 2) % 3) : 3 + static_cast<int>((i / 2) % 2);
    const Instance inst = generate({WelfareFamily{items, players}, BlockSumFamily{players, CoverageFamily{5}}, o.seed});
    const OptimumResult opt = exact_optimum(inst.system, inst.objective);
    const SolveTrace g = greedy(inst.system, inst.objective);
    o.failed = g.final_set != opt.set;
    o.ratio = opt.value == 0 ? Rational(1) : Rational(g.final_value / opt.value);
    if (!o.failed) return o;
    const auto& bs = std::get<BlockSumObjective>(inst.objective.kind());
    const auto cert = block_perturbation_certificate(inst.system, bs.blocks, bs.components, g, opt.set);
    if (const auto* bc = std::get_if<BlockCertificate>(&cert)) {
      o.gamma = bc->gamma;
      if (!bc->ok()) o.violations.push_back("block certificate gamma " + rstr(bc->gamma) + " or validation failed");
      const auto plain = greedy_failure_certificate(inst.system, inst.objective, g, opt.set);
      const auto* seq = std::get_if<SequencePerturbation>(&plain);
      if (!seq || seq->gamma != bc->gamma)
        o.violations.push_back("block certificate disagrees with the plain greedy certificate");
    } else if (g.final_value != opt.value) {
      o.violations.push_back("no certificate: " + std::get<NoCertificate>(cert).reason);
    }
    return o;
  });
  summarize(r, c, outcomes,
            {{"welfare", {"greedy", "welfare (partition matroid by item)", "block sum of coverage", 0, 0, 0, 0,
                          std::nullopt, std::nullopt, "1/2", "2", "per-player perturbations"}}},
            "per-block perturbations certify gamma <= 2 and validate", true);
  r.expectations = c.take();
  return r;
}

// Checks every (p,1)-local optimum of one instance against `bound` and, when
// `certify`, the certificate bound.
void check_local_optima(Outcome& o, const Instance& inst, int p, const Rational& ratio_floor,
                        const std::optional<Rational>& gamma_bound) {
  const OptimumResult opt = exact_optimum(inst.system, inst.objective);
  const auto optima = all_local_optima(inst.system, inst.objective, p, 1);
  o.evaluated = optima.size();
  for (const LocalOptimum& lo : optima) {
    const Rational ratio = opt.value == 0 ? Rational(1) : Rational(lo.value / opt.value);
    keep_min(o.ratio, ratio);
    if (ratio < ratio_floor)
      o.violations.push_back("local optimum " + lo.set.to_string() + " has ratio " + rstr(ratio));
    if (!gamma_bound || lo.set == opt.set) continue;
    o.failed = true;
    SolveTrace t;
    t.final_set = lo.set;
    t.final_value = lo.value;
    const auto cert = local_search_failure_certificate(inst.system, inst.objective, t, opt.set, p);
    if (const auto* seq = std::get_if<SequencePerturbation>(&cert)) {
      keep_max(o.gamma, seq->gamma);
      if (seq->gamma > *gamma_bound)
        o.violations.push_back("local optimum " + lo.set.to_string() + " certifies gamma " + rstr(seq->gamma));
      const auto v = validate_certificate(inst.objective, *seq);
      if (!v.ok()) o.violations.push_back("certificate invalid: " + describe(v));
    } else if (lo.value != opt.value) {
      o.violations.push_back("no certificate for " + lo.set.to_string() + ": " +
                             std::get<NoCertificate>(cert).reason);
    }
  }
}

SystemFamily two_extendible_family(std::size_t i, int max_n) {
  if (i % 2 == 0) return MatchingGraphFamily{5 + static_cast<int>((i / 2) % 2), R(1, 2), max_n};
  return PartitionIntersectionFamily{2, ground_for(i, 6, max_n), 2 + static_cast<int>(i % 3), 2};
}

ScenarioResult ls_upper_bound(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int count = int_param(params, "instances");
  const std::uint64_t base = seed_param(params);
  const int max_n = int_param(params, "max_ground");
  const std::size_t total = static_cast<std::size_t>(count) * 2;
  auto outcomes = fan_out(total, [&](std::size_t i) {
    Outcome o;
    const std::size_t j = i / 2;
    const bool additive = i % 2 == 0;
    o.seed = base + j;
    o.group = additive ? "additive" : "coverage";
    ObjectiveFamily obj_family = additive ? ObjectiveFamily(AdditiveFamily{}) : ObjectiveFamily(CoverageFamily{});
    const Instance inst = generate({two_extendible_family(j, max_n), obj_family, o.seed});
    const auto pe = p_extendibility(inst.system);
    if (!pe || *pe > 2) o.violations.push_back("system is not 2-extendible: " + str(pe));
    check_local_optima(o, inst, 2, additive ? R(1, 4) : R(1, 5), std::nullopt);
    o.failed = o.ratio && *o.ratio < 1;
    return o;
  });
  summarize(r, c, outcomes,
            {{"additive", {"local search (2,1)", "2-extendible", "additive", 0, 0, 0, 0, std::nullopt,
                           std::nullopt, "1/4", "", "all local optima"}},
             {"coverage", {"local search (2,1)", "2-extendible", "coverage", 0, 0, 0, 0, std::nullopt,
                           std::nullopt, "1/5", "", "all local optima"}}},
            "every (2,1)-local optimum is within 1/p^2 (additive) or 1/(p^2+1) (submodular)", true);
  r.expectations = c.take();
  return r;
}

ScenarioResult ls_recovery(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int count = int_param(params, "instances");
  const std::uint64_t base = seed_param(params);
  const int max_n = int_param(params, "max_ground");
  const std::size_t total = static_cast<std::size_t>(count) * 2;
  auto outcomes = fan_out(total, [&](std::size_t i) {
    Outcome o;
    const std::size_t j = i / 2;
    const bool additive = i % 2 == 0;
    o.seed = base + j;
    SystemFamily family;
    switch (j % 3) {
      case 0: family = MatchingGraphFamily{5, R(1, 2), max_n}; break;
      case 1: family = PartitionIntersectionFamily{1 + static_cast<int>((j / 3) % 2), ground_for(j, 5, max_n), 3, 2}; break;
      default: family = ExplicitRandomFamily{ground_for(j, 5, max_n), 4, R(1, 2)}; break;
    }
    ObjectiveFamily obj_family = additive ? ObjectiveFamily(AdditiveFamily{}) : ObjectiveFamily(CoverageFamily{});
    const Instance inst = generate({family, obj_family, o.seed});
    const auto pe = p_extendibility(inst.system);
    if (!pe) {
      o.skipped = true;
      return o;
    }
    const int p = *pe;
    o.group = (additive ? "a" : "c") + std::to_string(std::min(p, 3));
    const Rational bound = additive ? R(p * p) : R(p * p + 1);
    check_local_optima(o, inst, p, R(0), bound);
    return o;
  });
  std::vector<std::pair<std::string, SweepRow>> groups;
  for (const char* kind : {"a", "c"})
    for (int p = 1; p <= 3; ++p) {
      const bool additive = std::string(kind) == "a";
      const std::string label = p == 3 ? "p-extendible (p>=3)" : "p-extendible (p=" + std::to_string(p) + ")";
      groups.push_back({kind + std::to_string(p),
                        {"local search (p,1)", label, additive ? "additive" : "coverage", 0, 0, 0, 0, std::nullopt,
                         std::nullopt, additive ? "1/p^2" : "1/(p^2+1)", additive ? "p^2" : "p^2+1", ""}});
    }
  summarize(r, c, outcomes, groups,
            "every local optimum other than the optimum certifies gamma <= p^2 (additive) or p^2+1", true);
  r.expectations = c.take();
  return r;
}

ScenarioResult ls_matroid_intersection(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int count = int_param(params, "instances");
  const std::uint64_t base = seed_param(params);
  const int max_n = int_param(params, "max_ground");
  const std::size_t total = static_cast<std::size_t>(count) * 2;
  auto outcomes = fan_out(total, [&](std::size_t i) {
    Outcome o;
    const std::size_t j = i / 2;
    const bool additive = i % 2 == 0;
    const int p = 1 + static_cast<int>(j % 3);
    o.seed = base + j;
    o.group = (additive ? "a" : "c") + std::to_string(p);
    ObjectiveFamily obj_family = additive ? ObjectiveFamily(AdditiveFamily{}) : ObjectiveFamily(CoverageFamily{});
    const Instance inst = generate(
        {PartitionIntersectionFamily{p, ground_for(j, 5, max_n), 2 + static_cast<int>(j % 3), 2}, obj_family, o.seed});
    check_local_optima(o, inst, p, R(0), R(p + 1));
    return o;
  });
  std::vector<std::pair<std::string, SweepRow>> groups;
  for (const char* kind : {"a", "c"})
    for (int p = 1; p <= 3; ++p)
      groups.push_back({kind + std::to_string(p),
                        {"local search (p,1)", "intersection of " + std::to_string(p) + " partition matroids",
                         std::string(kind) == "a" ? "additive" : "coverage", 0, 0, 0, 0, std::nullopt, std::nullopt,
                         "", std::to_string(p + 1), ""}});
  summarize(r, c, outcomes, groups, "local optima of p-matroid intersections certify gamma <= p+1", true);
  r.expectations = c.take();
  return r;
}

ScenarioResult hereditary_equivalence(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int count = int_param(params, "instances");
  const std::uint64_t base = seed_param(params);
  const int max_n = std::min(int_param(params, "max_ground"), hereditary_cap());
  auto outcomes = fan_out(count, [&](std::size_t i) {
    Outcome o;
    o.seed = base + i;
    o.group = "all";
    const int n = 5 + static_cast<int>((i / 5) % (max_n - 4));
    IndependenceSystem sys = uniform_matroid(1, 1);
    switch (i % 5) {
      case 0: sys = generate({ExplicitRandomFamily{n, 3 + static_cast<int>(i % 4), R(1, 2)}, AdditiveFamily{}, o.seed}).system; break;
      case 1: sys = generate({PartitionIntersectionFamily{1 + static_cast<int>((i / 5) % 3), n, 3, 2}, AdditiveFamily{}, o.seed}).system; break;
      case 2: sys = generate({MatchingGraphFamily{5, R(1, 2), max_n}, AdditiveFamily{}, o.seed}).system; break;
      case 3: sys = knapsack_random(o.seed, n).system; break;
      default: sys = generate({UniformFamily{n, 1 + static_cast<int>(i % 4)}, AdditiveFamily{}, o.seed}).system; break;
    }
    const Rational h = hereditary_parameter(sys);
    const auto pe = p_extendibility(sys);
    const mpz_class floor_h = h.get_num() / h.get_den();
    if (!pe || floor_h != *pe)
      o.violations.push_back(std::string(sys.kind_name()) + ": floor(" + rstr(h) + ") != " + str(pe));
    if (p_system_parameter(sys) > h) o.violations.push_back("p_system exceeds hereditary parameter");
    return o;
  });
  summarize(r, c, outcomes,
            {{"all", {"analysis", "generated systems (n <= " + std::to_string(max_n) + ")", "-", 0, 0, 0, 0,
                      std::nullopt, std::nullopt, "", "", "floor(hereditary) == extendibility"}}},
            "floor of the hereditary parameter equals the extendibility", false);
  r.expectations = c.take();
  return r;
}

ScenarioResult prop_perturb(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int count = int_param(params, "instances");
  const std::uint64_t base = seed_param(params);
  auto outcomes = fan_out(count, [&](std::size_t i) {
    Outcome o;
    o.seed = base + i;
    o.group = "all";
    std::mt19937_64 rng(o.seed);
    const int n = 3 + static_cast<int>(rng() % 6);
    ObjectiveFamily family;
    switch (i % 3) {
      case 0: family = CoverageFamily{}; break;
      case 1: family = BlockSumFamily{2, CoverageFamily{5}}; break;
      default: family = AdditiveFamily{}; break;
    }
    const Instance inst = generate({UniformFamily{n, n}, family, o.seed});
    std::vector<ElementId> ordering;
    for (ElementId e = 0; e < n; ++e)
      if (rng() % 3 != 0) ordering.push_back(e);
    for (std::size_t k = ordering.size(); k > 1; --k) std::swap(ordering[k - 1], ordering[rng() % k]);
    const Rational gamma = 1 + R(static_cast<long>(rng() % 13), 1 + static_cast<long>(rng() % 4));
    o.gamma = gamma;
    const Objective tilde = build_sequence_perturbation(inst.objective, ordering, gamma);
    const auto v = validate_gamma_perturbation(inst.objective, tilde, gamma);
    if (!v.ok()) o.violations.push_back("invalid perturbation: " + describe(v));
    return o;
  });
  summarize(r, c, outcomes,
            {{"all", {"sequence perturbation", "-", "coverage / block sum / additive", 0, 0, 0, 0, std::nullopt,
                      std::nullopt, "", "", "all three perturbation properties"}}},
            "every sequence perturbation is a valid gamma-perturbation", false);
  r.expectations = c.take();
  return r;
}

ScenarioResult additive_specialization(const ScenarioParams& params) {
  ScenarioResult r;
  Checks c;
  const int count = int_param(params, "instances");
  const std::uint64_t base = seed_param(params);
  // Tied optima are skipped, so draw extra seeds and keep the first `count`.
  const std::size_t draws = static_cast<std::size_t>(count) * 2;
  auto outcomes = fan_out(draws, [&](std::size_t i) {
    Outcome o;
    o.seed = base + i;
    o.group = "all";
    SystemFamily family;
    switch (i % 3) {
      case 0: family = PartitionIntersectionFamily{1 + static_cast<int>(i % 2), ground_for(i, 5, 10), 3, 2}; break;
      case 1: family = MatchingGraphFamily{5, R(1, 2), 10}; break;
      default: family = ExplicitRandomFamily{ground_for(i, 5, 10), 4, R(1, 2)}; break;
    }
    const Instance inst = generate({family, AdditiveFamily{}, o.seed});
    if (!exact_optimum(inst.system, inst.objective).unique) {
      o.skipped = true;
      return o;
    }
    const auto exact = additive_stability_threshold(inst.system, *additive_weights(inst.objective));
    const auto bound = submodular_stability_upper_bound(inst.system, inst.objective);
    o.gamma = exact.gamma_star.value_or(Rational(0));
    if (exact.gamma_star != bound.gamma_star)
      o.violations.push_back("threshold " + str(exact.gamma_star) + " != upper bound " + str(bound.gamma_star));
    return o;
  });
  std::size_t kept = 0;
  for (Outcome& o : outcomes) {
    if (o.skipped || !o.error.empty()) continue;
    if (kept == static_cast<std::size_t>(count)) o.skipped = true;
    else ++kept;
  }
  summarize(r, c, outcomes,
            {{"all", {"stability", "generated systems", "additive", 0, 0, 0, 0, std::nullopt, std::nullopt, "", "",
                      "exact threshold == certificate upper bound"}}},
            "for additive objectives the certificate bound is exact", false);
  c.equal("instances compared", "requested count", static_cast<std::size_t>(count), kept);
  r.expectations = c.take();
  return r;
}

// Registry ---------------------------------------------------------------------

struct Entry {
  ScenarioInfo info;
  std::function<ScenarioResult(const ScenarioParams&)> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"matching-path", "greedy fails on a path of three edges that is nearly 2-stable", {{"eps", "1/10"}}},
       matching_path},
      {{"knapsack", "greedy fails on a knapsack p-system with p < 2", {{"m", "3"}, {"eps", "1/10"}}}, knapsack},
      {{"greedy-additive-recovery", "greedy recovers p-stable optima on p-matroid intersections",
        {{"instances", "200"}, {"seed", "1"}, {"max_ground", "12"}}},
       greedy_additive_recovery},
      {{"greedy-submodular-recovery", "greedy failures certify gamma <= p+1 for submodular objectives",
        {{"instances", "200"}, {"seed", "1"}, {"max_ground", "12"}}},
       greedy_submodular_recovery},
      {{"alpha-oracle", "alpha-approximate greedy failures certify gamma <= (p+alpha)/alpha",
        {{"instances", "100"}, {"seed", "1"}}},
       alpha_oracle},
      {{"welfare", "per-player perturbations certify greedy failures for welfare", {{"instances", "60"}, {"seed", "1"}}},
       welfare},
      {{"ls-2system", "local search is stuck on a 2-system with an arbitrarily stable optimum",
        {{"n", "6"}, {"high", "1/100000"}, {"low", "1/100000000000"}}},
       ls_2system},
      {{"ls-pextendible-lb", "(p,1)-local search stalls at ratio (p-eps)^2",
        {{"p", "2"}, {"eps", "1/2"}, {"n", "8"}}},
       ls_pextendible_lb},
      {{"ls-upper-bound", "every (2,1)-local optimum is within 1/4 (additive) or 1/5 (submodular)",
        {{"instances", "100"}, {"seed", "1"}, {"max_ground", "12"}}},
       ls_upper_bound},
      {{"ls-recovery", "local optima certify gamma <= p^2 (additive) or p^2+1 (submodular)",
        {{"instances", "60"}, {"seed", "1"}, {"max_ground", "10"}}},
       ls_recovery},
      {{"ls-matroid-intersection", "local optima of p-matroid intersections certify gamma <= p+1",
        {{"instances", "60"}, {"seed", "1"}, {"max_ground", "10"}}},
       ls_matroid_intersection},
      {{"figure-counter1", "tightness example for the p^2 local search bound", {{"eps", "1/100"}}},
       figure_counter},
      {{"matroid-filmus", "greedy and local search fail on a 2-stable matroid instance", {{"eps", "1/100"}}},
       matroid_filmus},
      {{"cardinality", "greedy needs (2-1/k)-stability under a cardinality constraint", {{"k", "2"}, {"eps", "1/100"}}},
       cardinality},
      {{"hereditary-equivalence", "floor(hereditary parameter) equals extendibility",
        {{"instances", "100"}, {"seed", "1"}, {"max_ground", "10"}}},
       hereditary_equivalence},
      {{"atsp-triangle", "greedy fails on a 3-node ATSP instance below 3-stability", {{"eps", "1/10"}}},
       atsp_triangle},
      {{"prop-perturb", "sequence perturbations are valid gamma-perturbations", {{"instances", "500"}, {"seed", "1"}}},
       prop_perturb},
      {{"additive-specialization", "for additive objectives the certificate bound equals the exact threshold",
        {{"instances", "50"}, {"seed", "1"}}},
       additive_specialization},
  };
  return table;
}

}  // namespace

bool ScenarioResult::passed() const {
  return std::all_of(expectations.begin(), expectations.end(), [](const Expectation& e) { return e.passed; });
}

const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> out;
    for (const Entry& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

ScenarioResult run_scenario(std::string_view id, const ScenarioParams& overrides) {
  const auto& table = entries();
  const auto it = std::find_if(table.begin(), table.end(), [&](const Entry& e) { return e.info.id == id; });
  if (it == table.end()) throw InvalidArgument("unknown scenario '" + std::string(id) + "'");
  ScenarioParams params = it->info.defaults;
  for (const auto& [key, value] : overrides) {
    if (!params.contains(key))
      throw InvalidArgument("scenario '" + std::string(id) + "' has no parameter '" + key + "'");
    params[key] = value;
  }
  const auto start = std::chrono::steady_clock::now();
  ScenarioResult result = it->run(params);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.id = std::string(id);
  result.params = params;
  return result;
}

// Named instances ----------------------------------------------------------------

Instance matching_path_instance(const Rational& eps) {
  return make_instance("matching-path", matching_system(4, {{0, 1}, {1, 2}, {2, 3}}),
                       additive_objective({R(1), 1 + eps, R(1)}), {{"eps", to_string(eps)}},
                       "path e1-e2-e3 with weights (1, 1+eps, 1)");
}

Instance knapsack_instance(int m, const Rational& eps) {
  std::vector<Rational> sizes;
  std::vector<Rational> values;
  for (int i = 0; i < m; ++i) {
    sizes.push_back(R(1));
    values.push_back(R(2));
  }
  sizes.push_back(R(1));
  values.push_back(1 + eps);
  for (int i = 0; i < m; ++i) {
    sizes.push_back(R(1, m));
    values.push_back(R(1));
  }
  return make_instance("knapsack", knapsack_system(std::move(sizes), R(m + 1)), additive_objective(std::move(values)),
                       {{"m", std::to_string(m)}, {"eps", to_string(eps)}},
                       "A = ids [0, m), e* = m, C = ids (m, 2m]; budget m + 1");
}

Instance two_system_instance(int n, const Rational& high, const Rational& low) {
  std::vector<Rational> w(n + 1);
  for (int i = 0; i < n; ++i) w[i] = i >= n / 2 ? high : low;
  w[n] = R(1);
  return make_instance("ls-2system", two_system_counterexample(n), additive_objective(std::move(w)),
                       {{"n", std::to_string(n)}, {"high", to_string(high)}, {"low", to_string(low)}},
                       "A = ids [0, n), e* = n");
}

Instance ab_lower_bound_instance(int a_size, int b_size, int p, const Rational& b_weight) {
  std::vector<Rational> w(a_size + b_size, Rational(1));
  for (int i = a_size; i < a_size + b_size; ++i) w[i] = b_weight;
  return make_instance("ls-pextendible-lb", ab_lower_bound_system(a_size, b_size, p), additive_objective(std::move(w)),
                       {{"a_size", std::to_string(a_size)}, {"b_size", std::to_string(b_size)},
                        {"p", std::to_string(p)}, {"b_weight", to_string(b_weight)}},
                       "A = ids [0, |A|), B = the rest");
}

Instance figure_counter_instance(const Rational& eps) {
  auto sys = explicit_system(6, {ElementSet::of({0, 1}), ElementSet::of({0, 4, 5}), ElementSet::of({1, 2, 3}),
                                 ElementSet::of({2, 3, 4, 5})});
  return make_instance("figure-counter1", std::move(sys),
                       additive_objective({1 + eps, 1 + eps, R(2), R(2), R(2), R(2)}), {{"eps", to_string(eps)}},
                       "a1, a2 = 0, 1; B1 = {2, 3}; B2 = {4, 5}");
}

Instance matroid_filmus_instance(const Rational& eps) {
  auto sys = explicit_system(4, {ElementSet::of({0, 2}), ElementSet::of({0, 3}), ElementSet::of({1, 2}),
                                 ElementSet::of({1, 3})});
  // Universe: x = 0, y = 1, e1 = 2, e2 = 3.
  auto obj = coverage_objective({ElementSet::of({0, 2}), ElementSet::of({1}), ElementSet::of({3}), ElementSet::of({0})},
                                {R(1), R(1), eps, eps});
  return make_instance("matroid-filmus", std::move(sys), std::move(obj), {{"eps", to_string(eps)}},
                       "A1, B1, A2, B2 = 0..3 covering x, y, e1, e2");
}

Instance cardinality_instance(int k, const Rational& eps) {
  const int n = k + 1;
  const Rational inv = R(1, k);
  std::vector<std::optional<Rational>> values(std::size_t{1} << n);
  for (Bits m = 0; m < values.size(); ++m) {
    const ElementSet s(m);
    const int others = s.without(0).size();
    if (!s.contains(0)) values[m] = others * inv;
    else values[m] = inv + others * inv * (1 - inv) + eps;
  }
  return make_instance("cardinality", uniform_matroid(n, k), table_objective(n, std::move(values)),
                       {{"k", std::to_string(k)}, {"eps", to_string(eps)}}, "e = 0, x_i = i");
}

Instance atsp_triangle_instance(const Rational& eps) {
  std::vector<Rational> w(6, Rational(0));
  w[atsp_arc(3, 0, 1)] = 1;
  w[atsp_arc(3, 1, 2)] = 1;
  w[atsp_arc(3, 2, 0)] = 1;
  w[atsp_arc(3, 1, 0)] = 1 + eps;
  return make_instance("atsp-triangle", atsp_system(3), additive_objective(std::move(w)), {{"eps", to_string(eps)}},
                       "arc ids from atsp_arc");
}

}  // namespace substab
