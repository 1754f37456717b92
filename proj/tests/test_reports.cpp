#include <catch2/catch_amalgamated.hpp>

#include "qgame/json_io.hpp"
#include "qgame/parallel.hpp"
#include "qgame/scenarios.hpp"
#include "test_helpers.hpp"

using namespace qgame;

namespace {
// Lighter budget than the defaults so the unit suite stays quick; the
// acceptance binary runs the full configuration.
SearchConfig report_cfg() {
  SearchConfig cfg;
  cfg.grid_points_per_axis = 31;
  cfg.restarts = 30;
  cfg.max_iterations = 250;
  return cfg;
}
}  // namespace

TEST_CASE("game JSON round trip and validation") {
  const GameSpec pd = GameSpec::prisoners_dilemma();
  const GameSpec back = game_from_json(to_json(pd));
  REQUIRE(back.name == pd.name);
  REQUIRE(back.a_dc == pd.a_dc);
  REQUIRE(back.b_cd == pd.b_cd);

  REQUIRE_THROWS_AS(game_from_json(json::parse(R"({"name":"x"})")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(
      game_from_json(json::parse(
          R"({"name":"x","payoffs":{"CC":[1],"CD":[0,0],"DC":[0,0],"DD":[0,0]}})")),
      std::invalid_argument);
}

TEST_CASE("strategy JSON round trip") {
  for (const Strategy& s : {strategy_c(), strategy_d(), strategy_q(),
                            focal_r(), measurement_strategy_pair().first}) {
    const Strategy back = strategy_from_json(to_json(s));
    REQUIRE(back.kind() == s.kind());
    REQUIRE(channels_equal(back, s, 1e-12));
  }

  // parametric forms
  const Strategy one = strategy_from_json(
      json::parse(R"({"kind":"unitary","params":{"theta":3.141592653589793}})"));
  REQUIRE(equal_up_to_global_phase(one.unitary_matrix(),
                                   strategy_d().unitary_matrix(), 1e-9));
  const Strategy two = strategy_from_json(
      json::parse(R"({"kind":"unitary","params":{"theta":0,"phi":1.5707963267948966}})"));
  REQUIRE(approx_equal(two.unitary_matrix(), strategy_q().unitary_matrix(),
                       1e-9));

  REQUIRE_THROWS_AS(strategy_from_json(json::parse(R"({"kind":"sorcery"})")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(
      strategy_from_json(json::parse(
          R"({"kind":"unitary","matrices":[[[1,0],[0,0],[0,0],[0,0]]]})")),
      std::invalid_argument);  // not unitary
  // probabilities failing to normalise
  REQUIRE_THROWS_AS(
      strategy_from_json(json::parse(
          R"({"kind":"mixture","probs":[0.7,0.2],
              "matrices":[[[1,0],[0,0],[0,0],[1,0]],[[1,0],[0,0],[0,0],[1,0]]]})")),
      std::invalid_argument);
}

TEST_CASE("argument helpers") {
  REQUIRE(game_from_arg("pd").name == "prisoners_dilemma");
  REQUIRE(game_from_arg("chicken").name == "chicken");
  REQUIRE(strategy_from_arg("Q").kind() == Strategy::Kind::unitary);
  REQUIRE(strategy_from_arg(R"({"kind":"unitary","params":{"theta":0}})")
              .kind() == Strategy::Kind::unitary);
  REQUIRE_THROWS_AS(strategy_from_arg("Z"), std::invalid_argument);
}

TEST_CASE("certificate JSON carries the contract fields") {
  const EwlContext ctx = build_context();
  const GameSpec pd = GameSpec::prisoners_dilemma();
  SearchConfig cfg = report_cfg();
  cfg.grid_points_per_axis = 11;

  const auto cert = verify_nash(pd, ctx, strategy_d(), strategy_d(),
                                StrategySet::TP, cfg);
  const json j = to_json(cert);
  REQUIRE(j.at("verdict") == "refuted");
  REQUIRE(j.at("profile").size() == 2);
  REQUIRE(j.at("payoffs").size() == 2);
  REQUIRE(j.at("gains").size() == 2);
  REQUIRE_FALSE(j.at("witness").is_null());
  REQUIRE(j.at("config").at("set") == "TP");
  REQUIRE(j.at("config").at("seed") == 42);

  // witness strategies survive the round trip
  const Strategy w = strategy_from_json(j.at("witness"));
  REQUIRE(w.kind() == Strategy::Kind::unitary);
}

TEST_CASE("property suite is green") {
  const auto rep = run_property_suite(report_cfg());
  for (const auto& c : rep.claims) {
    INFO(c.description);
    CHECK(c.pass);
  }
  REQUIRE(rep.passed());
}

TEST_CASE("prisoners dilemma suite is green and deterministic") {
  const SearchConfig cfg = report_cfg();
  const auto rep = run_pd_suite(cfg);
  for (const auto& c : rep.claims) {
    INFO(c.description);
    CHECK(c.pass);
  }
  REQUIRE(rep.passed());

  const auto rep2 = run_pd_suite(cfg);
  REQUIRE(to_json(rep).dump(2) == to_json(rep2).dump(2));

  // thread count must not leak into results
  set_thread_cap(3);
  const auto rep3 = run_pd_suite(cfg);
  set_thread_cap(0);
  REQUIRE(to_json(rep).dump(2) == to_json(rep3).dump(2));
}

TEST_CASE("chicken suite is green") {
  const auto rep = run_chicken_suite(report_cfg());
  for (const auto& c : rep.claims) {
    INFO(c.description);
    CHECK(c.pass);
  }
  REQUIRE(rep.passed());
  REQUIRE_FALSE(rep.conventions.empty());
}

TEST_CASE("CSV rendering") {
  ScenarioReport rep;
  rep.scenario = "demo";
  rep.add_numeric("plain value", 1.0, 1.0, 1e-9);
  rep.add_verdict("has, comma \"quoted\"", "certified", "certified");
  const std::string csv = to_csv(rep);
  REQUIRE(csv.rfind("id,description,expected,observed,tolerance,pass\n", 0) ==
          0);
  REQUIRE(csv.find("demo,plain value,1,1,1.0000000000000001e-09,true") !=
          std::string::npos);
  REQUIRE(csv.find("\"has, comma \"\"quoted\"\"\"") != std::string::npos);
}
