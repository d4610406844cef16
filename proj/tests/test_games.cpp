#include <doctest.h>

#include "cogmodal/games.hpp"
#include "support.hpp"

using namespace cogmodal;

namespace {

const char* kPhi4Body =
    "((play(1,C) & play(2,C)) -> co) & ((play(1,C) & play(2,S)) -> (!lo1 & lo2)) & "
    "((play(1,S) & play(2,C)) -> (lo1 & !lo2)) & ((play(1,S) & play(2,S)) -> (lo1 & lo2 & !co))";

const char* kPhi5 =
    "(!B{1} !(play(1,C) & play(2,C)) <-> !B{1} !(play(1,S) & play(2,C))) & "
    "(!B{1} !(play(1,C) & play(2,S)) <-> !B{1} !(play(1,S) & play(2,S))) & "
    "(!B{2} !(play(1,C) & play(2,C)) <-> !B{2} !(play(1,C) & play(2,S))) & "
    "(!B{2} !(play(1,S) & play(2,C)) <-> !B{2} !(play(1,S) & play(2,S)))";

}  // namespace

TEST_CASE("crossroad game hypotheses") {
  Model g = fixture("mcross-g.json");
  std::string body = kPhi4Body;
  CHECK(valid_on(g, F("[eq(1)](" + body + ") & [eq(2)](" + body + ")")));
  CHECK(valid_on(g, F(kPhi5)));
}

TEST_CASE("best responses") {
  Model g = fixture("mcross-g.json");
  Checker c(g);
  for (Mode mode : {Mode::Opt, Mode::Pess})
    for (std::size_t w = 0; w < g.size(); ++w) {
      CHECK(best_response(c, w, "1", "S", {{"2", "C"}}, mode));
      CHECK(best_response(c, w, "1", "C", {{"2", "S"}}, mode));
      CHECK(best_response(c, w, "2", "S", {{"1", "C"}}, mode));
      CHECK(best_response(c, w, "2", "C", {{"1", "S"}}, mode));
    }
  CHECK_FALSE(best_response(c, 0, "1", "C", {{"2", "C"}}, Mode::Opt));
  CHECK_THROWS_AS(best_response(c, 0, "1", "C", {}, Mode::Opt), EvalError);
  CHECK_THROWS_AS(best_response(c, 0, "1", "X", {{"2", "C"}}, Mode::Opt), EvalError);
}

TEST_CASE("equilibria") {
  Model g = fixture("mcross-g.json");
  Checker c(g);
  std::vector<JointAction> expected = {{{"1", "C"}, {"2", "S"}}, {{"1", "S"}, {"2", "C"}}};
  for (Mode mode : {Mode::Opt, Mode::Pess})
    for (std::size_t w = 0; w < g.size(); ++w) CHECK(enumerate_equilibria(c, w, mode) == expected);
  CHECK(nash(c, 0, {{"1", "S"}, {"2", "C"}}, Mode::Opt));
  CHECK_FALSE(nash(c, 0, {{"1", "C"}, {"2", "C"}}, Mode::Opt));
}

TEST_CASE("rationality") {
  Model g = fixture("mcross-g.json");
  Checker c(g);
  CHECK(rational(c, g.world_index("w3"), "1", Mode::Opt));
  CHECK_FALSE(rational(c, g.world_index("w2"), "1", Mode::Opt));
}

TEST_CASE("pessimistic rationality does not imply best response") {
  Model m = fixture("rat-pess-counterexample.json");
  Checker c(m);
  std::size_t wa = m.world_index("wa");
  CHECK(rational(c, wa, "1", Mode::Pess));
  CHECK_FALSE(c.eval(wa, F("RPpes{1}(play(1,b) <= play(1,a))")));
  CHECK_FALSE(nash(c, wa, {{"1", "a"}}, Mode::Pess));
  // the optimistic counterpart holds here
  CHECK_FALSE(rational(c, wa, "1", Mode::Opt));
}

TEST_CASE("joint actions and budget") {
  Model g = fixture("mcross-g.json");
  auto all = joint_actions(g);
  REQUIRE(all.size() == 4);
  CHECK(all.front() == JointAction{{"1", "C"}, {"2", "C"}});
  CHECK(all[1] == JointAction{{"1", "C"}, {"2", "S"}});
  CHECK_THROWS_AS(joint_actions(g, 3), BudgetExceeded);
  CHECK_THROWS_AS(joint_actions(fixture("m0.json")), EvalError);
}

TEST_CASE("single action game has the unique equilibrium") {
  Model m = fixture("m0.json");
  m.actions = std::vector<std::string>{"a"};
  for (auto& w : m.worlds) w.agents.at("1").choice = "a";
  Checker c(m);
  CHECK(enumerate_equilibria(c, 0, Mode::Opt) == std::vector<JointAction>{{{"1", "a"}}});
}

TEST_CASE("game report") {
  Model g = fixture("mcross-g.json");
  GameReport rep = game_report(g, {Mode::Opt, Mode::Pess});
  REQUIRE(rep.groups.size() == 1);
  CHECK(rep.groups[0].worlds.size() == 4);
  CHECK(rep.every_world_has_equilibrium());
  auto j = rep.to_json();
  CHECK(j["version"] == 1);
  CHECK(j["groups"][0]["equilibria"]["opt"].size() == 2);
  CHECK(rep.to_table().find("(C,S) (S,C)") != std::string::npos);
  CHECK(format_joint_action({"1", "2"}, {{"2", "C"}, {"1", "S"}}) == "(S,C)");
}
