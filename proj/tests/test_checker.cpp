#include <doctest.h>

#include "cogmodal/genfuzz.hpp"
#include "support.hpp"

using namespace cogmodal;

namespace {

const char* kKnowledge =
    "[eq(1)]((lo1 & !lo2 -> !co) & (!lo1 & lo2 -> !co) & !(!lo1 & !lo2)) & "
    "[eq(2)]((lo1 & !lo2 -> !co) & (!lo1 & lo2 -> !co) & !(!lo1 & !lo2))";

using Ids = std::vector<std::string>;

}  // namespace

TEST_CASE("m0 attitudes") {
  Model m = fixture("m0.json");
  CHECK(eval(m, "w1", F("B{1} p")));
  CHECK_FALSE(eval(m, "w1", F("D{1} p")));
  CHECK(eval(m, "w1", F("D{1} !p")));
  CHECK_FALSE(eval(m, "w2", F("[le(1,P)] p")));
  CHECK(eval(m, "w1", F("Ppes{1}(p <= !p)")));
  CHECK(eval(m, "w1", F("Popt{1}(p <= !p)")));
  CHECK(valid_on(m, F("B{1} p")));
  CHECK_FALSE(valid_on(m, F("p")));
}

TEST_CASE("truth sets") {
  Model m = fixture("m0.json");
  CHECK(ids(m, truth_set(m, F("p"))) == Ids{"w1"});
  CHECK(ids(m, truth_set(m, F("true"))) == Ids{"w1", "w2"});
  CHECK(ids(m, truth_set(m, F("@x2"))) == Ids{"w2"});
  // closed world: unknown atoms and nominals are false
  CHECK(truth_set(m, F("zz | @nobody")).empty());

  Model x = fixture("mcross.json");
  Checker c(x);
  CHECK(ids(x, c.truth_set_agent("1", 0, F("!lo1"))) == Ids{"w3"});
}

TEST_CASE("best and worst sets") {
  Model m = fixture("m0.json");
  Checker c0(m);
  CHECK(ids(m, c0.best_p("1", 1)) == Ids{"w1"});
  CHECK(ids(m, c0.worst_d("1", 0)) == Ids{"w1"});
  CHECK(c0.best_p("1", 0, F("false")).empty());

  Model x = fixture("mcross.json");
  Checker c(x);
  CHECK(ids(x, c.best_p("1", 0, F("!lo1"))) == Ids{"w3"});
  CHECK(ids(x, c.worst_d("1", 0)) == Ids{"w1"});
  CHECK(ids(x, c.worst_d("1", 0, F("!(!lo2)"))) == Ids{"w1"});
  CHECK(ids(x, c.best_d("1", 0)) == Ids{"w3"});
}

TEST_CASE("crossroad desires") {
  Model x = fixture("mcross.json");
  CHECK(eval(x, "w1", F("SD{1}(!lo1 & !co)")));
  CHECK(eval(x, "w1", F("D{1}(lo1 & !lo2)")));
  CHECK_FALSE(eval(x, "w1", F("SD{1}(lo1 & !lo2)")));
  CHECK(valid_on(x, F(kKnowledge)));
}

TEST_CASE("preference reflexivity and strict forms") {
  Model x = fixture("mcross.json");
  for (const char* s : {"Popt{1}(lo1 <= lo1)", "Ppes{2}(co <= co)", "RPopt{1}(lo2 <= lo2)", "RPpes{2}(!co <= !co)"})
    CHECK(valid_on(x, F(s)));
  CHECK(truth_set(x, F("Popt{1}(p < q)")) == truth_set(x, F("!Popt{1}(q <= p)")));
  CHECK(truth_set(x, F("Ppes{1}(lo1)")) == truth_set(x, F("!Ppes{1}(lo1 <= !lo1)")));
}

TEST_CASE("wishful thinking") {
  CHECK(check_wt(fixture("m0.json"), "1"));
  CHECK_FALSE(check_wt(fixture("mcross.json"), "1"));
  Model one = fixture("m0.json");
  one.worlds.pop_back();
  CHECK(check_wt(one, "1"));
}

TEST_CASE("strong desire does not distribute over conjunction") {
  Model m = fixture("sd-witness.json");
  CHECK(eval(m, "u", F("SD{1} p & !SD{1}(p & q)")));
}

TEST_CASE("evaluation errors") {
  Model m = fixture("m0.json");
  CHECK_THROWS_AS(eval(m, "w1", F("B{7} p")), ModelError);
  CHECK_THROWS_AS(eval(m, "w1", F("play(1,a)")), EvalError);
  CHECK_THROWS_AS(eval(fixture("mcross-g.json"), "w1", F("play(1,Z)")), EvalError);
  CHECK_THROWS_AS(eval(m, "w1", F("[radB{1} p] q")), EvalError);
  CHECK_THROWS_AS(eval(m, "w9", F("p")), std::out_of_range);
}

TEST_CASE("knowing one side must lose time makes the other-loses outcome strongly desired") {
  // [eq(i)]!(!a & !b) & SD{i} !a -> SD{i}(!a & b), with a, b standing in for lo_i, lo_j
  Model x = fixture("mcross.json");
  CHECK(valid_on(x, F("SD{1}(!lo1 & lo2) & SD{2}(lo1 & !lo2)")));
  cogmodal::Formula f = F("[eq(1)] !(!p & !q) & SD{1} !p -> SD{1}(!p & q)");
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    cogmodal::GenSpec spec;
    spec.seed = seed;
    spec.atoms = {2, 3};
    Model m = cogmodal::gen_model(spec);
    INFO("seed " << seed);
    CHECK(valid_on(m, f));
  }
}
