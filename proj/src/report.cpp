#include "substab/report.hpp"

#include <algorithm>
#include <sstream>

namespace substab {
namespace {

std::string opt_str(const std::optional<Rational>& r, const char* empty) {
  if (!r) return empty;
  std::ostringstream out;
  out << to_string(*r);
  if (r->get_den() != 1) {
    out.precision(4);
    out << " (" << to_double(*r) << ")";
  }
  return out.str();
}

std::string render(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width;
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], row[i].size());
    }
  std::ostringstream out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    std::string line;
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      std::string cell = cells[r][i];
      if (i + 1 < cells[r].size()) cell.resize(width[i], ' ');
      line += (i ? " | " : "") + cell;
    }
    out << line << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out << std::string(total + 3 * (width.size() - 1), '-') << '\n';
    }
  }
  return out.str();
}

}  // namespace

Json to_json(const Expectation& e) {
  return {{"claim", e.claim}, {"note", e.note}, {"expected", e.expected}, {"observed", e.observed},
          {"passed", e.passed}};
}

Json to_json(const SweepRow& row) {
  Json j = {{"algorithm", row.algorithm},
            {"system_class", row.system_class},
            {"objective_class", row.objective_class},
            {"instances", row.instances},
            {"failures", row.failures},
            {"skipped", row.skipped},
            {"violations", row.violations},
            {"ratio_bound", row.ratio_bound},
            {"gamma_bound", row.gamma_bound},
            {"flag", row.flag}};
  j["worst_ratio"] = row.worst_ratio ? to_json(*row.worst_ratio) : Json(nullptr);
  j["max_gamma"] = row.max_gamma ? to_json(*row.max_gamma) : Json(nullptr);
  return j;
}

Json to_json(const ScenarioResult& result) {
  Json expectations = Json::array();
  for (const auto& e : result.expectations) expectations.push_back(to_json(e));
  Json rows = Json::array();
  for (const auto& r : result.rows) rows.push_back(to_json(r));
  return {{"id", result.id},         {"params", result.params}, {"passed", result.passed()},
          {"seconds", result.seconds}, {"expectations", expectations}, {"rows", rows},
          {"details", result.details}};
}

std::string describe_expectations(const ScenarioResult& result) {
  std::ostringstream out;
  for (const auto& e : result.expectations) {
    out << (e.passed ? "PASS " : "FAIL ") << e.claim << ": expected " << e.expected << ", observed "
        << e.observed;
    if (!e.note.empty()) out << "  [" << e.note << "]";
    out << '\n';
  }
  return out.str();
}

Report emit_report(const std::vector<ScenarioResult>& results) {
  std::vector<std::vector<std::string>> cells{{"scenario", "algorithm", "system", "objective", "n", "fail",
                                               "viol", "worst ratio", "ratio bound", "max gamma",
                                               "gamma bound", "flag"}};
  Json rows = Json::array();
  Json scenarios = Json::array();
  std::size_t failed = 0;
  for (const ScenarioResult& r : results) {
    failed += r.passed() ? 0 : 1;
    scenarios.push_back({{"id", r.id}, {"passed", r.passed()}, {"seconds", r.seconds}});
    for (const SweepRow& row : r.rows) {
      cells.push_back({r.id, row.algorithm, row.system_class, row.objective_class, std::to_string(row.instances),
                       std::to_string(row.failures), std::to_string(row.violations),
                       opt_str(row.worst_ratio, "-"), row.ratio_bound.empty() ? "-" : row.ratio_bound,
                       opt_str(row.max_gamma, "-"), row.gamma_bound.empty() ? "-" : row.gamma_bound, row.flag});
      Json j = to_json(row);
      j["scenario"] = r.id;
      rows.push_back(std::move(j));
    }
  }
  std::string text = render(cells);
  for (const ScenarioResult& r : results)
    text += (r.passed() ? "PASS " : "FAIL ") + r.id + "\n";
  if (!results.empty())
    text += std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) +
            " scenarios passed\n";
  return {text, {{"rows", rows}, {"scenarios", scenarios}, {"failed", failed}}};
}

}  // namespace substab
