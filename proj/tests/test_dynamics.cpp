#include <doctest.h>

#include "cogmodal/dynamics.hpp"
#include "support.hpp"

using namespace cogmodal;

namespace {

std::map<std::string, std::int64_t> ranks(const Model& m, const std::string& agent, Dim d) {
  std::map<std::string, std::int64_t> out;
  for (const auto& w : m.worlds) {
    const auto& st = w.agents.at(agent);
    out[w.id] = d == Dim::P ? st.rank_p : st.rank_d;
  }
  return out;
}

using Ranks = std::map<std::string, std::int64_t>;

}  // namespace

TEST_CASE("radical desire revision on the crossroad") {
  Model x = fixture("mcross.json");
  auto r = radical_revise(x, "1", Dim::D, F("!lo2"));
  CHECK(ranks(r.model, "1", Dim::D) == Ranks{{"w1", 0}, {"w4", 1}, {"w3", 2}, {"w2", 3}});
  CHECK(ranks(r.model, "2", Dim::D) == ranks(x, "2", Dim::D));
  CHECK(r.changed_agent == "1");
  CHECK(r.dim == Dim::D);
  CHECK(valid_on(r.model, F("SD{1} !lo2 & D{1} !lo2 & D{1} !lo1 & !SD{1} !lo1")));
  REQUIRE(r.normalization_log.size() == 1);
  CHECK(r.normalization_log[0].changes.size() == 4);
}

TEST_CASE("radical belief revision on m1") {
  Model m = fixture("m1.json");
  auto r = radical_revise(m, "1", Dim::P, F("!p"));
  CHECK(ranks(r.model, "1", Dim::P) == Ranks{{"w1", 0}, {"w3", 1}, {"w2", 2}});
  CHECK(valid_on(r.model, F("SB{1} !p")));
}

TEST_CASE("conservative belief revision on m1") {
  Model m = fixture("m1.json");
  auto r = conservative_revise(m, "1", Dim::P, F("!p"));
  CHECK(ranks(r.model, "1", Dim::P) == Ranks{{"w2", 2}, {"w1", 1}, {"w3", 0}});
  CHECK(valid_on(r.model, F("B{1} !p")));
  CHECK_FALSE(valid_on(r.model, F("SB{1} !p")));
  // the non-strengthening counterexample, through the dynamic operator
  CHECK_FALSE(eval_dynamic(m, "w1", F("[conB{1} !p](B{1} !p -> SB{1} !p)")));
}

TEST_CASE("conservative revision establishes no collision for agent 2") {
  Model x = fixture("mcross.json");
  auto r = conservative_revise(x, "2", Dim::P, F("(lo1 & lo2) -> !co"));
  CHECK(valid_on(r.model, F("B{2} !co")));
}

TEST_CASE("trivial inputs leave the order unchanged") {
  Model m = fixture("m1.json");
  CHECK(radical_revise(m, "1", Dim::P, F("true")).model == m);
  CHECK(conservative_revise(m, "1", Dim::P, F("false")).model == m);
  CHECK_THROWS_AS(radical_revise(m, "1", Dim::P, F("[radB{1} p] p")), std::invalid_argument);
}

TEST_CASE("revision of a model with choices keeps them") {
  Model g = fixture("mcross-g.json");
  auto r = conservative_revise(g, "1", Dim::D, F("lo1"));
  CHECK(validate_model(r.model).ok());
  for (std::size_t w = 0; w < g.size(); ++w)
    CHECK(r.model.worlds[w].agents.at("2").choice == g.worlds[w].agents.at("2").choice);
}

TEST_CASE("program transformer") {
  RevisionOp op{Flavor::Radical, Dim::P, "1", F("p")};
  CHECK(f_transform(op, le("1", Dim::P)) ==
        P("(?(p);le(1,P);?(p)) | (?(!p);le(1,P);?(!p)) | (?(!p);eq(1);?(p))"));
  CHECK(f_transform(op, eq("2")) == eq("2"));
  CHECK(f_transform(op, le("2", Dim::P)) == le("2", Dim::P));
  CHECK(f_transform(op, le("1", Dim::D)) == le("1", Dim::D));
}

TEST_CASE("reduction base cases") {
  CHECK(reduce(F("[radB{1} p] q")) == F("q"));
  CHECK(reduce(F("[radB{1} p] !q")) == F("!q"));
  CHECK(reduce(F("[radB{1} p][eq(1)] q")) == F("[eq(1)] q"));
  CHECK(reduce(F("[conD{2} p] @x")) == F("@x"));
  CHECK(reduce(F("B{1} p")) == F("B{1} p"));
}

TEST_CASE("reduction agrees with the semantic transform") {
  for (const char* model : {"m0.json", "m1.json", "mcross.json"}) {
    Model m = fixture(model);
    std::string a = m.atoms.front();
    for (std::string s : {"[radB{1} !A] SB{1} !A", "[conB{1} !A](B{1} !A -> SB{1} !A)",
                          "[radD{1} A][conD{1} !A] D{1} A", "[conB{1} [radB{1} A] B{1} A] CB{1}(A, !A)",
                          "[radD{1} A] Popt{1}(!A <= A) & [conD{1} A] RPpes{1}(A)"}) {
      for (std::size_t k; (k = s.find('A')) != std::string::npos;) s.replace(k, 1, a);
      Formula f = F(s);
      Formula r = reduce(f);
      CHECK_FALSE(contains_dynamic(r));
      CHECK(truth_set(m, r) == truth_set_dynamic(m, f));
    }
  }
}

TEST_CASE("reduction budget") {
  Formula f = F("[radB{1} p][radB{1} q][radB{1} r] B{1}(p & q)");
  CHECK_THROWS_AS(reduce(f, ReduceOptions{10}), ReduceBudgetExceeded);
  ReduceStats stats;
  reduce(f, {}, &stats);
  CHECK(stats.steps > 0);
}
