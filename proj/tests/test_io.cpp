#include <doctest.h>

#include <filesystem>

#include "substab/errors.hpp"
#include "substab/instance_io.hpp"
#include "substab/scenarios.hpp"
#include "support.hpp"

using namespace substab;
using support::R;

namespace {

std::vector<Instance> named_instances() {
  return {matching_path_instance(R(1, 10)),         knapsack_instance(3, R(1, 10)),
          two_system_instance(6, R(1, 1000), R(1, 100000)), ab_lower_bound_instance(4, 6, 2, R(3, 2)),
          figure_counter_instance(R(1, 100)),        matroid_filmus_instance(R(1, 100)),
          cardinality_instance(3, R(1, 100)),        atsp_triangle_instance(R(1, 10))};
}

}  // namespace

TEST_CASE("rationals and sets round-trip") {
  CHECK(to_json(R(-3, 4)) == "-3/4");
  CHECK(rational_from_json(Json("7/14")) == R(1, 2));
  CHECK(rational_from_json(Json(3)) == 3);
  CHECK(to_json(ElementSet::of({4, 1})) == Json::array({1, 4}));
  CHECK(set_from_json(Json::array({2, 0})) == ElementSet::of({0, 2}));
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), Error);
  CHECK_THROWS_AS(set_from_json(Json::array({-1})), Error);
}

TEST_CASE("named instances round-trip through text") {
  for (const Instance& inst : named_instances()) {
    CAPTURE(inst.name);
    const std::string text = serialize_instance(inst);
    const Instance back = parse_instance(text);
    CHECK(back == inst);
    CHECK(serialize_instance(back) == text);
  }
}

TEST_CASE("instance files round-trip on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "substab_io_test";
  std::filesystem::create_directories(dir);
  const Instance inst = knapsack_instance(2, R(1, 5));
  save_instance(dir / "k.json", inst);
  CHECK(load_instance(dir / "k.json") == inst);
  CHECK_THROWS_AS(load_instance(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed instance text is a ParseError") {
  CHECK_THROWS_AS(parse_instance("not json"), ParseError);
  CHECK_THROWS_AS(parse_instance("{}"), ParseError);
  Json j = to_json(matching_path_instance(R(1, 10)));
  j["version"] = 99;
  CHECK_THROWS_AS(parse_instance(j.dump()), ParseError);
  j = to_json(matching_path_instance(R(1, 10)));
  j["system"]["kind"] = "mystery";
  CHECK_THROWS_AS(parse_instance(j.dump()), ParseError);
  j = to_json(matching_path_instance(R(1, 10)));
  j["objective"]["weights"]["0"] = "x/y";
  CHECK_THROWS_AS(parse_instance(j.dump()), ParseError);
}

TEST_CASE("property: random instances round-trip") {
  support::Gen g(77);
  for (int round = 0; round < 80; ++round) {
    const int n = g.between(1, 8);
    const IndependenceSystem sys = support::random_system(g, n);
    const int m = sys.ground_size();
    Objective obj = g.coin(1, 2) ? support::random_additive(g, m) : support::random_submodular(g, m);
    const Instance inst = make_instance("random", sys, obj, {{"round", std::to_string(round)}});
    const Instance back = parse_instance(serialize_instance(inst));
    CAPTURE(round);
    CHECK(back == inst);
    CHECK(tabulate(back.objective) == tabulate(inst.objective));
    CHECK(enumerate_independent_sets(back.system) == enumerate_independent_sets(inst.system));
  }
}
