#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "substab/analysis.hpp"
#include "substab/objectives.hpp"
#include "substab/solvers.hpp"
#include "substab/stability.hpp"
#include "substab/systems.hpp"

namespace substab {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// A system and objective on the same ground set, plus free-form metadata.
struct Instance {
  std::string name;
  std::string note;
  std::map<std::string, std::string> parameters;
  IndependenceSystem system;
  Objective objective;

  bool operator==(const Instance&) const = default;
};

/// Throws InvalidArgument when the ground sizes differ.
Instance make_instance(std::string name, IndependenceSystem system, Objective objective,
                       std::map<std::string, std::string> parameters = {},
                       std::string note = {});

// Rationals are "num/den" strings; sets are sorted id arrays.
Json to_json(const Rational& value);
Rational rational_from_json(const Json& j);
Json to_json(ElementSet s);
ElementSet set_from_json(const Json& j);

Json to_json(const IndependenceSystem& sys);
IndependenceSystem system_from_json(const Json& j);
Json to_json(const Objective& obj);
Objective objective_from_json(const Json& j);
Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

/// Text form of an instance file. Throws ParseError on malformed input.
std::string serialize_instance(const Instance& inst);
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& inst);

Json to_json(const SolveTrace& trace);
Json to_json(const OptimumResult& opt);
Json to_json(const SystemProfile& profile);
Json to_json(const ObjectiveReport& report);
Json to_json(const SequencePerturbation& pert);
Json to_json(const AdditivePerturbation& pert);
Json to_json(const PerturbationValidation& validation);
Json to_json(const StabilityReport& report);

}  // namespace substab
