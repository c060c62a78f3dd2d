// Command-line front end: solve, analyze, stability, scenario, generate, report.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "substab/analysis.hpp"
#include "substab/errors.hpp"
#include "substab/generators.hpp"
#include "substab/report.hpp"
#include "substab/scenarios.hpp"
#include "substab/solvers.hpp"
#include "substab/stability.hpp"

using namespace substab;

namespace {

Exec exec_of(bool serial) { return serial ? Exec::serial : Exec::parallel; }

Json certificate_json(const CertificateResult& cert, const Objective& obj) {
  if (const auto* none = std::get_if<NoCertificate>(&cert)) return {{"certificate", nullptr}, {"reason", none->reason}};
  const auto& seq = std::get<SequencePerturbation>(cert);
  const auto validation = validate_gamma_perturbation(obj, build_sequence_perturbation(obj, seq), seq.gamma);
  return {{"certificate", to_json(seq)}, {"validation", to_json(validation)}};
}

ScenarioParams parse_overrides(const std::vector<std::string>& raw) {
  ScenarioParams out;
  for (const std::string& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("expected key=value, got '" + kv + "'");
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

void write_json(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact stability analysis for submodular maximization over independence systems"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run an algorithm on an instance file");
  std::string instance_path;
  std::string algorithm = "greedy";
  int p = 1;
  int q = 1;
  std::string alpha = "1";
  std::uint64_t seed = 0;
  std::string start = "empty-maximal";
  std::vector<ElementId> initial;
  bool serial = false;
  solve->add_option("instance", instance_path, "Instance JSON file")->required()->check(CLI::ExistingFile);
  solve->add_option("--algorithm", algorithm, "greedy | greedy-alpha | local-search | exact")
      ->check(CLI::IsMember({"greedy", "greedy-alpha", "local-search", "exact"}));
  solve->add_option("--p", p, "Local search removal cap");
  solve->add_option("--q", q, "Local search addition cap");
  solve->add_option("--alpha", alpha, "Approximation factor of the greedy oracle, a rational in (0, 1]");
  solve->add_option("--seed", seed, "Seed for randomized choices");
  solve->add_option("--start", start, "Local search start: empty-maximal | greedy | explicit")
      ->check(CLI::IsMember({"empty-maximal", "greedy", "explicit"}));
  solve->add_option("--initial", initial, "Start set ids for --start explicit");
  solve->add_flag("--serial", serial, "Use the serial reference kernels");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Profile the system and validate the objective");
  analyze->add_option("instance", instance_path, "Instance JSON file")->required()->check(CLI::ExistingFile);
  analyze->add_flag("--serial", serial, "Use the serial reference kernels");

  // stability
  auto* stability = app.add_subcommand("stability", "Stability threshold or failure certificate");
  std::string mode = "additive-exact";
  stability->add_option("instance", instance_path, "Instance JSON file")->required()->check(CLI::ExistingFile);
  stability->add_option("--mode", mode, "additive-exact | upper-bound | certificate")
      ->check(CLI::IsMember({"additive-exact", "upper-bound", "certificate"}));
  stability->add_option("--algorithm", algorithm, "Algorithm to certify in certificate mode: greedy | local-search")
      ->check(CLI::IsMember({"greedy", "local-search"}));
  stability->add_option("--p", p, "Local search removal cap");
  stability->add_flag("--serial", serial, "Use the serial reference kernels");

  // scenario
  auto* scenario = app.add_subcommand("scenario", "List or run registered scenarios");
  scenario->require_subcommand(1);
  auto* scenario_list = scenario->add_subcommand("list", "List scenario ids and defaults");
  auto* scenario_run = scenario->add_subcommand("run", "Run one scenario");
  std::string scenario_id;
  std::vector<std::string> overrides;
  std::string json_out;
  scenario_run->add_option("id", scenario_id, "Scenario id")->required();
  scenario_run->add_option("--set", overrides, "Parameter override key=value");
  scenario_run->add_option("--json", json_out, "Write the full result as JSON ('-' for stdout)");

  // generate
  auto* gen = app.add_subcommand("generate", "Generate an instance from a generator spec");
  std::string spec_path;
  std::string out_path;
  gen->add_option("spec", spec_path, "Generator spec JSON file")->required()->check(CLI::ExistingFile);
  gen->add_option("--seed", seed, "Override the spec seed");
  gen->add_option("--out", out_path, "Output file (default stdout)");

  // report
  auto* report = app.add_subcommand("report", "Run scenarios and print the summary table");
  std::vector<std::string> report_ids;
  report->add_option("ids", report_ids, "Scenario ids (default: all)");
  report->add_option("--json", json_out, "Write the report JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version are CLI11 "errors" with exit code 0.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      const Instance inst = load_instance(instance_path);
      Json out;
      if (algorithm == "exact") {
        out = to_json(exact_optimum(inst.system, inst.objective, exec_of(serial)));
      } else if (algorithm == "greedy") {
        out = to_json(greedy(inst.system, inst.objective));
      } else if (algorithm == "greedy-alpha") {
        out = to_json(greedy_alpha(inst.system, inst.objective, parse_rational(alpha), seed));
      } else {
        LocalSearchConfig cfg;
        cfg.remove_cap = p;
        cfg.add_cap = q;
        cfg.start = start == "greedy" ? StartKind::greedy_seeded
                    : start == "explicit" ? StartKind::explicit_set
                                          : StartKind::empty_maximal;
        cfg.initial_set = ElementSet::from_ids(initial);
        out = to_json(local_search(inst.system, inst.objective, cfg));
        const auto hyp = classify_local_search(p_extendibility(inst.system, std::nullopt, exec_of(serial)), p, q);
        out["guarantees"] = {{"approximation", hyp.approximation}, {"recovery", hyp.recovery}, {"note", hyp.note}};
      }
      std::cout << out.dump(2) << '\n';
    } else if (analyze->parsed()) {
      const Instance inst = load_instance(instance_path);
      Json out;
      out["system"] = to_json(profile_system(inst.system, exec_of(serial)));
      out["objective"] = to_json(validate_objective(inst.objective, exec_of(serial)));
      std::cout << out.dump(2) << '\n';
    } else if (stability->parsed()) {
      const Instance inst = load_instance(instance_path);
      Json out;
      if (mode == "additive-exact") {
        const auto w = additive_weights(inst.objective);
        if (!w) throw InvalidArgument("additive-exact mode needs an additive objective");
        out = to_json(additive_stability_threshold(inst.system, *w, exec_of(serial)));
      } else if (mode == "upper-bound") {
        out = to_json(submodular_stability_upper_bound(inst.system, inst.objective, exec_of(serial)));
      } else {
        const OptimumResult opt = exact_optimum(inst.system, inst.objective, exec_of(serial));
        SolveTrace trace;
        if (algorithm == "greedy") {
          trace = greedy(inst.system, inst.objective);
        } else {
          LocalSearchConfig cfg;
          cfg.remove_cap = p;
          trace = local_search(inst.system, inst.objective, cfg);
        }
        out["trace"] = to_json(trace);
        out["optimum"] = to_json(opt);
        if (trace.final_set == opt.set) {
          out["certificate"] = nullptr;
          out["reason"] = "the algorithm returned the optimum";
        } else {
          const auto cert = algorithm == "greedy"
                                ? greedy_failure_certificate(inst.system, inst.objective, trace, opt.set)
                                : local_search_failure_certificate(inst.system, inst.objective, trace, opt.set, p);
          out.update(certificate_json(cert, inst.objective));
        }
      }
      std::cout << out.dump(2) << '\n';
    } else if (scenario_list->parsed()) {
      for (const ScenarioInfo& info : scenario_registry()) {
        std::cout << info.id << "  " << info.summary << '\n';
        for (const auto& [k, v] : info.defaults) std::cout << "    " << k << " = " << v << '\n';
      }
    } else if (scenario_run->parsed()) {
      const ScenarioResult result = run_scenario(scenario_id, parse_overrides(overrides));
      std::cout << describe_expectations(result);
      std::cout << emit_report({result}).text;
      if (!json_out.empty()) write_json(to_json(result), json_out);
      return result.passed() ? 0 : 1;
    } else if (gen->parsed()) {
      std::ifstream in(spec_path);
      GeneratorSpec spec = generator_spec_from_json(Json::parse(in));
      if (gen->count("--seed")) spec.seed = seed;
      const Instance inst = generate(spec);
      if (out_path.empty()) std::cout << serialize_instance(inst);
      else save_instance(out_path, inst);
    } else if (report->parsed()) {
      std::vector<ScenarioResult> results;
      if (report_ids.empty())
        for (const ScenarioInfo& info : scenario_registry()) report_ids.push_back(info.id);
      for (const std::string& id : report_ids) results.push_back(run_scenario(id));
      const Report rep = emit_report(results);
      std::cout << rep.text;
      if (!json_out.empty()) write_json(rep.json, json_out);
      if (rep.json["failed"].get<std::size_t>() > 0) return 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
