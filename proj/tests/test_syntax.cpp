#include <doctest.h>

#include "cogmodal/expand.hpp"
#include "support.hpp"

using namespace cogmodal;

TEST_CASE("parse: attitude, box with test, implication precedence") {
  CHECK(F("B{1} p") == believes("1", atom("p")));
  CHECK(F("[eq(1); ?(p)] q") == box(seq(eq("1"), test(atom("p"))), atom("q")));
  CHECK(F("p & q -> r") == implies(conj(atom("p"), atom("q")), atom("r")));
  CHECK(F("p -> q -> r") == implies(atom("p"), implies(atom("q"), atom("r"))));
  CHECK(F("p <-> q <-> r") == iff(iff(atom("p"), atom("q")), atom("r")));
  CHECK(F("p | q & r") == disj(atom("p"), conj(atom("q"), atom("r"))));
  CHECK(F("!p & q") == conj(neg(atom("p")), atom("q")));
}

TEST_CASE("parse: remaining formula forms") {
  CHECK(F("@x1") == nominal("x1"));
  CHECK(F("play(1,C)") == play("1", "C"));
  CHECK(F("<le(1,D)> p") == diamond(le("1", Dim::D), atom("p")));
  CHECK(F("CB{2}(q, p)") == cond_believes("2", atom("q"), atom("p")));
  CHECK(F("CD{2}(q, p)") == cond_desires("2", atom("q"), atom("p")));
  CHECK(F("Popt{1}(q <= p)") == prefers(AttitudeKind::PrefOpt, PrefForm::Weak, "1", atom("q"), atom("p")));
  CHECK(F("RPpes{1}(q < p)") == prefers(AttitudeKind::RealPrefPess, PrefForm::Strict, "1", atom("q"), atom("p")));
  CHECK(F("Ppes{1}(p)") == prefers(AttitudeKind::PrefPess, "1", atom("p")));
  CHECK(F("Ppes{1}((p))") == prefers(AttitudeKind::PrefPess, "1", atom("p")));
  CHECK(F("[conD{3} p] q") == dyn(RevisionOp{Flavor::Conservative, Dim::D, "3", atom("p")}, atom("q")));
  CHECK(F("true") == truth());
  CHECK(F("false # trailing comment") == falsity());
  // keywords are plain atoms unless followed by '{'
  CHECK(F("B & SD") == conj(atom("B"), atom("SD")));
}

TEST_CASE("parse: derived programs desugar") {
  CHECK(P("lt(1,P)") == inter(le("1", Dim::P), conv(nle("1", Dim::P))));
  CHECK(P("ge(1,D)") == conv(le("1", Dim::D)));
  CHECK(P("sim(1,D)") == inter(le("1", Dim::D), conv(le("1", Dim::D))));
  CHECK(P("gt(1,P)") == inter(conv(le("1", Dim::P)), nle("1", Dim::P)));
  CHECK(P("nge(1,P)") == conv(nle("1", Dim::P)));
}

TEST_CASE("parse: program precedence") {
  CHECK(P("eq(1) | eq(2); le(1,P)") == alt(eq("1"), seq(eq("2"), le("1", Dim::P))));
  CHECK(P("eq(1); eq(2) & le(1,P)") == seq(eq("1"), inter(eq("2"), le("1", Dim::P))));
  CHECK(P("-(eq(1); eq(2))") == conv(seq(eq("1"), eq("2"))));
}

TEST_CASE("parse errors carry a location and the expected set") {
  try {
    F("B{1} (p &");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 10);
    CHECK_FALSE(e.expected().empty());
  }
  try {
    F("p &\n  ]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(F("[le(1,X)] p"), ParseError);
  CHECK_THROWS_AS(F("Popt{1}(p <= q"), ParseError);
  CHECK_THROWS_AS(F("p q"), ParseError);
  CHECK_THROWS_AS(P("eq()"), ParseError);
}

TEST_CASE("core-only parsing rejects program sugar") {
  ParseOptions core{true};
  CHECK_NOTHROW(parse_formula("[le(1,P) & -nle(1,P)] p", core));
  for (const char* s : {"[ge(1,P)] p", "[lt(1,P)] p", "[gt(1,D)] p", "[nge(1,D)] p", "[sim(1,P)] p"})
    CHECK_THROWS_AS(parse_formula(s, core), ParseError);
}

TEST_CASE("render") {
  CHECK(render(believes("1", atom("p"))) == "B{1} p");
  CHECK(render(box(eq("1"), atom("p"))) == "[eq(1)] p");
  CHECK(render(dyn(RevisionOp{Flavor::Radical, Dim::P, "1", atom("p")}, atom("q"))) == "[radB{1} p] q");
  CHECK(render(F("p & q -> r")) == "p & q -> r");
  CHECK(render(F("(p -> q) -> r")) == "(p -> q) -> r");
  CHECK(render(F("Popt{1}(q <= p)")) == "Popt{1}(q <= p)");
  CHECK(render(F("[eq(1); ?(p)] q")) == "[eq(1); ?(p)] q");
}

TEST_CASE("render/parse round trip") {
  for (const char* s : {"[radD{2} p & q][conB{1} !@x] (SB{1} p <-> CD{2}(q, r))",
                        "<-(eq(1) | le(1,P)); ?(play(1,a))> RPopt{1}(p < !q)", "!!p", "Ppes{3}(p | q)",
                        "[eq(1) & (le(1,D); nle(1,D))] false"}) {
    Formula f = F(s);
    CHECK(F(render(f)) == f);
  }
}

TEST_CASE("attitude expansion") {
  CHECK(expand_attitudes(F("B{1} p")) == F("[eq(1); ?([lt(1,P)]false)] p"));
  CHECK(expand_attitudes(F("SD{1} p")) == F("[eq(1); ?(p); le(1,D)] p"));
  CHECK(expand_attitudes(F("Popt{1}(q <= p)")) == F("[eq(1); ?(q)] <le(1,D)> p"));
  CHECK(expand_attitudes(F("Ppes{1}(q <= p)")) == F("[eq(1); ?(p)] <ge(1,D)> q"));
  CHECK(expand_attitudes(F("CB{1}(q, p)")) == F("[eq(1); ?(q & [lt(1,P)] !q)] p"));
  CHECK(expand_attitudes(F("CD{1}(q, p)")) == F("[eq(1); ?(!q & [gt(1,D)] q)] !p"));
  CHECK(expand_attitudes(F("D{1} p")) == F("[eq(1); ?([gt(1,D)] false)] !p"));
  CHECK(expand_attitudes(F("Popt{1}(q < p)")) == F("![eq(1); ?(p)] <le(1,D)> q"));
  CHECK_FALSE(contains_attitude(expand_attitudes(F("[eq(1); ?(B{1} p)] SB{2} q"))));
  CHECK_THROWS_AS(expand_attitudes(F("[radB{1} p] B{1} p")), std::invalid_argument);
}

TEST_CASE("structural helpers") {
  CHECK(contains_dynamic(F("p & [radB{1} q] r")));
  CHECK_FALSE(contains_dynamic(F("B{1} p")));
  CHECK(is_propositional(F("p & !q -> r")));
  CHECK_FALSE(is_propositional(F("@x")));
  CHECK(tree_size(F("p & q")) == 3);
  CHECK(F("p & q").hash() == F("p & q").hash());
}
