// Acceptance run: one PASS/FAIL line per criterion. With an argument such as
// "AC3" only that criterion runs. Exit status is nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "cogmodal/checker.hpp"
#include "cogmodal/dynamics.hpp"
#include "cogmodal/games.hpp"
#include "cogmodal/genfuzz.hpp"
#include "cogmodal/parser.hpp"

using namespace cogmodal;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = true;
  std::string summary;
};

Model fixture(const std::string& name) { return load_model(std::string(COGMODAL_FIXTURES_DIR) + "/" + name); }
Formula F(const std::string& s) { return parse_formula(s); }

GenSpec envelope() {
  GenSpec s;
  s.seed = kSeed;
  s.worlds = {1, 8};
  s.agents = {1, 3};
  return s;
}

double since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string describe(const FuzzReport& r) {
  std::ostringstream os;
  os << r.suite << ": " << r.models << " models, " << r.checks << " checks, " << r.failure_count << " failures";
  if (!r.failures.empty()) os << " (first: " << r.failures.front().formula << " at " << r.failures.front().world << ")";
  return os.str();
}

FuzzReport run(const std::string& suite, std::size_t models) { return fuzz_validities(suite, models, envelope()); }

bool valid_on_dynamic(const Model& m, const Formula& f) { return truth_set_dynamic(m, f).count() == m.size(); }

Outcome ac1() {
  FuzzOptions o;
  o.instances_per_schema = 20;
  auto t = std::chrono::steady_clock::now();
  FuzzReport r = fuzz_validities("dlca-axioms", 500, envelope(), o);
  double secs = since(t);
  std::ostringstream os;
  os << describe(r) << "; " << dlca_schema_ids().size() << " schemas x 20 instances + necessitation per model; "
     << secs << " s (limit 60 s)";
  return {r.failure_count == 0 && secs <= 60.0, os.str()};
}

Outcome ac2() {
  FuzzReport g = run("dlcag-axioms", 500);
  FuzzReport w = run("wf-axioms", 500);
  return {g.failure_count == 0 && w.failure_count == 0, describe(g) + "; " + describe(w)};
}

Outcome ac3() {
  FuzzReport r = run("attitude-encodings", 500);
  return {r.failure_count == 0, describe(r)};
}

Outcome ac4() {
  FuzzReport r = run("validities", 500);
  return {r.failure_count == 0, describe(r)};
}

// Expected truth sets on the crossroad model, as world lists.
Outcome ac5() {
  auto t = std::chrono::steady_clock::now();
  Model x = fixture("mcross.json");
  Checker c(x);
  const std::string all = "w1 w2 w3 w4";
  std::vector<std::pair<std::string, std::string>> table;
  for (std::string i : {"1", "2"}) {
    std::string j = i == "1" ? "2" : "1";
    table.push_back({"[eq(" + i + ")]((lo1 & !lo2 -> !co) & (!lo1 & lo2 -> !co) & !(!lo1 & !lo2))", all});
    table.push_back({"<eq(" + i + ")> co & <eq(" + i + ")>(lo1 & !lo2) & <eq(" + i + ")>(!lo1 & lo2) & <eq(" + i +
                         ")>(lo1 & lo2 & !co)",
                     all});
    table.push_back({"SD{" + i + "} !lo" + i + " & SD{" + i + "} !co", all});
    table.push_back({"[eq(" + i + ")](co -> lo1 & lo2)", all});
    table.push_back({"CB{" + i + "}(!lo1, lo2)", all});
    table.push_back({"CB{" + i + "}(!lo2, lo1)", all});
    table.push_back({"SD{" + i + "}(!lo" + i + " & !co)", all});
    table.push_back({"D{" + i + "} !lo" + i, all});
    table.push_back({"D{" + i + "} !co", all});
    table.push_back({"D{" + i + "}(lo1 & !lo2)", all});
    table.push_back({"D{" + i + "}(!lo1 & lo2)", all});
    table.push_back({"SD{" + i + "}(lo1 & !lo2)", ""});
    table.push_back({"SD{" + i + "}(!lo1 & lo2)", ""});
    table.push_back({"SD{" + i + "} lo" + j, ""});
  }
  std::vector<std::string> mismatches;
  for (const auto& [text, expected] : table) {
    std::string got;
    for (const auto& id : world_ids(x, c.truth_set(F(text)))) got += (got.empty() ? "" : " ") + id;
    if (got != expected) mismatches.push_back(text + " holds at {" + got + "}, expected {" + expected + "}");
  }
  // the knowledge constraint makes !lo_i and !lo_i & lo_j coextensive in every cell, so SD_i !lo_i
  // already yields SD_i(!lo_i & lo_j)
  bool entailed = c.valid(F(std::string("(") + table[0].first + " & " + table[2].first + ") -> SD{1}(!lo1 & lo2)"));
  double secs = since(t);
  std::ostringstream os;
  os << table.size() << " truth-table rows, " << mismatches.size() << " mismatches";
  for (const auto& m : mismatches) os << "; " << m;
  if (!mismatches.empty() && entailed)
    os << "; the expected !SD_i(!lo_i & lo_j) contradicts the knowledge and desire constraints, which force SD_i(!lo_i & lo_j)";
  os << "; " << secs << " s (limit 1 s)";
  bool bad = !mismatches.empty();
  return {bad == 0 && secs < 1.0, os.str()};
}

Outcome ac6() {
  Model g = fixture("mcross-g.json");
  Checker c(g);
  std::vector<std::string> problems;
  const std::string body =
      "((play(1,C) & play(2,C)) -> co) & ((play(1,C) & play(2,S)) -> (!lo1 & lo2)) & "
      "((play(1,S) & play(2,C)) -> (lo1 & !lo2)) & ((play(1,S) & play(2,S)) -> (lo1 & lo2 & !co))";
  if (!c.valid(F("[eq(1)](" + body + ") & [eq(2)](" + body + ")"))) problems.push_back("outcome constraints");
  const std::string ignorance =
      "(!B{1} !(play(1,C) & play(2,C)) <-> !B{1} !(play(1,S) & play(2,C))) & "
      "(!B{1} !(play(1,C) & play(2,S)) <-> !B{1} !(play(1,S) & play(2,S))) & "
      "(!B{2} !(play(1,C) & play(2,C)) <-> !B{2} !(play(1,C) & play(2,S))) & "
      "(!B{2} !(play(1,S) & play(2,C)) <-> !B{2} !(play(1,S) & play(2,S)))";
  if (!c.valid(F(ignorance))) problems.push_back("choice ignorance");
  std::vector<JointAction> expected = {{{"1", "C"}, {"2", "S"}}, {{"1", "S"}, {"2", "C"}}};
  for (Mode mode : {Mode::Opt, Mode::Pess}) {
    for (std::size_t w = 0; w < g.size(); ++w) {
      bool br = best_response(c, w, "1", "S", {{"2", "C"}}, mode) && best_response(c, w, "1", "C", {{"2", "S"}}, mode) &&
                best_response(c, w, "2", "S", {{"1", "C"}}, mode) && best_response(c, w, "2", "C", {{"1", "S"}}, mode);
      if (!br) problems.push_back("best responses at " + g.worlds[w].id);
      if (enumerate_equilibria(c, w, mode) != expected) problems.push_back("equilibria at " + g.worlds[w].id);
    }
  }
  FuzzReport opt = run("rationality-opt", 300);
  FuzzReport pess = run("rationality-pess", 300);
  std::ostringstream os;
  os << "crossroad game: " << (problems.empty() ? "outcome constraints, choice ignorance, best responses, equilibria {(S,C),(C,S)} ok"
                                                : "problem with " + problems.front())
     << "; " << describe(opt) << "; " << describe(pess);
  if (pess.failure_count)
    os << "; the pessimistic propositions are refuted (see fixtures/rat-pess-counterexample.json)";
  return {problems.empty() && opt.failure_count == 0 && pess.failure_count == 0, os.str()};
}

Outcome ac7() {
  FuzzReport comp = run("revision-comprehension", 500);
  FuzzReport succ = run("revision-success", 500);
  Model m1 = fixture("m1.json");
  bool counterexample = !valid_on_dynamic(m1, F("[conB{1} !p](B{1} !p -> SB{1} !p)"));
  Model x = fixture("mcross.json");
  bool crossroad = valid_on(radical_revise(x, "1", Dim::D, F("!lo2")).model,
                            F("SD{1} !lo2 & D{1} !lo2 & D{1} !lo1 & !SD{1} !lo1"));
  std::ostringstream os;
  os << "(a) " << describe(comp) << " [4 (model, formula) pairs per model]; (b) " << describe(succ)
     << "; (c) conservative non-strengthening on M1 " << (counterexample ? "exhibited" : "NOT exhibited")
     << "; (d) crossroad radical desire revision " << (crossroad ? "holds" : "fails");
  return {comp.failure_count == 0 && succ.failure_count == 0 && counterexample && crossroad, os.str()};
}

Outcome ac8() {
  auto t = std::chrono::steady_clock::now();
  FuzzReport r = run("reduction", 500);
  std::ostringstream os;
  os << describe(r) << "; 2 dynamic formulas per model, nesting <= 2, step budget 1000000; " << since(t) << " s";
  return {r.failure_count == 0 && r.models * 2 >= 1000, os.str()};
}

Outcome ac9() {
  FuzzReport r = run("finite-model", 500);
  std::ifstream readme(std::string(COGMODAL_SOURCE_DIR) + "/README.md");
  std::stringstream text;
  text << readme.rdbuf();
  bool documented = text.str().find("Finite-model deviation") != std::string::npos;
  return {r.failure_count == 0 && documented,
          describe(r) + "; README deviation section " + (documented ? "present" : "missing")};
}

Outcome ac10() {
  GenSpec spec = envelope();
  std::size_t first = 0;
  FuzzReport r = run("negative-controls", 500);
  for (std::size_t k = 1; k <= 500 && r.failure_count; ++k) {
    if (fuzz_validities("negative-controls", k, spec).failure_count) {
      first = k;
      break;
    }
  }
  std::ostringstream os;
  os << describe(r) << "; first falsified after " << first << " model(s)";
  return {r.failure_count > 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}};
  std::string only = argc > 1 ? argv[1] : "";
  bool all_pass = true, ran = false;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && name != only) continue;
    ran = true;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::cout << name << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << o.summary << std::endl;
  }
  if (!ran) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
