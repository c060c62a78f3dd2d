#pragma once

#include <string>
#include <vector>

#include "substab/scenarios.hpp"

namespace substab {

/// Summary of scenario results: one table row per (algorithm, system class,
/// objective class) with observed ratios and gammas beside the bounds.
struct Report {
  std::string text;
  Json json;
};

/// An empty input yields a table with only its header.
Report emit_report(const std::vector<ScenarioResult>& results);

Json to_json(const Expectation& e);
Json to_json(const SweepRow& row);
Json to_json(const ScenarioResult& result);

/// One line per expectation, marked PASS or FAIL.
std::string describe_expectations(const ScenarioResult& result);

}  // namespace substab
