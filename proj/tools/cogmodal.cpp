// Command-line front end. Exit codes: 0 success or holds, 1 false / violations /
// no equilibrium, 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cogmodal/checker.hpp"
#include "cogmodal/dynamics.hpp"
#include "cogmodal/games.hpp"
#include "cogmodal/genfuzz.hpp"
#include "cogmodal/model.hpp"
#include "cogmodal/parser.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace cogmodal;

namespace {

constexpr int kVersion = 1;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model;
  std::string formula;
  std::string formula_file;
  std::string world;
  std::string mode;
  std::string op;
  std::string agent;
  std::string input;
  std::string suite;
  std::size_t models = 500;
  std::uint64_t seed = 1;
  std::string out;
  std::string report;
  int max_worlds = 8;
  int max_agents = 3;
  bool json = false;
  bool core_only = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model load(const std::string& path) {
  if (path.empty()) throw InputError("--model is required");
  return load_model(path);
}

Model load_valid(const std::string& path) {
  Model m = load(path);
  auto report = validate_model(m);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw InputError("invalid model: " + v.constraint + " at world '" + v.world + "': " + v.detail +
                     " (run 'validate' for the full list)");
  }
  return m;
}

Formula formula_arg(const Options& o) {
  if (!o.formula.empty() && !o.formula_file.empty())
    throw InputError("give either --formula or --formula-file, not both");
  std::string text = !o.formula_file.empty() ? read_file(o.formula_file) : o.formula;
  if (o.formula.empty() && o.formula_file.empty()) throw InputError("--formula or --formula-file is required");
  return parse_formula(text, ParseOptions{o.core_only});
}

std::size_t budget_from_env() {
  const char* env = std::getenv("COGMODAL_BUDGET");
  if (!env || !*env) return 262144;
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(env, &pos);
    if (pos != std::string(env).size()) throw std::invalid_argument("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw InputError(std::string("COGMODAL_BUDGET is not a number: '") + env + "'");
  }
}

// worlds x |Act|^|Agt|
void enforce_budget(const Model& m) {
  std::size_t budget = budget_from_env();
  std::size_t acts = m.actions ? m.actions->size() : 1;
  std::size_t total = std::max<std::size_t>(m.size(), 1);
  for (std::size_t k = 0; k < m.agents.size(); ++k) {
    total *= std::max<std::size_t>(acts, 1);
    if (total > budget)
      throw InputError("model exceeds COGMODAL_BUDGET=" + std::to_string(budget) + " (worlds x |Act|^|Agt|)");
  }
}

std::vector<std::size_t> selected_worlds(const Model& m, const std::string& world) {
  std::vector<std::size_t> out;
  if (!world.empty()) {
    try {
      out.push_back(m.world_index(world));
    } catch (const std::out_of_range&) {
      throw InputError("unknown world '" + world + "'");
    }
    return out;
  }
  for (std::size_t w = 0; w < m.size(); ++w) out.push_back(w);
  return out;
}

std::optional<RevisionOp> op_from_name(const std::string& name) {
  if (name == "radB") return RevisionOp{Flavor::Radical, Dim::P, "", {}};
  if (name == "radD") return RevisionOp{Flavor::Radical, Dim::D, "", {}};
  if (name == "conB") return RevisionOp{Flavor::Conservative, Dim::P, "", {}};
  if (name == "conD") return RevisionOp{Flavor::Conservative, Dim::D, "", {}};
  return std::nullopt;
}

std::vector<Mode> modes_of(const std::string& mode) {
  if (mode.empty()) return {Mode::Opt, Mode::Pess};
  if (mode == "opt") return {Mode::Opt};
  if (mode == "pess") return {Mode::Pess};
  throw InputError("--mode must be opt or pess");
}

int cmd_check(const Options& o) {
  Model m = load_valid(o.model);
  Formula f = formula_arg(o);
  Checker c(m, semantic_dynamics());
  const WorldSet& t = c.truth_set(f);
  bool all = true;
  json results = json::object();
  for (auto w : selected_worlds(m, o.world)) {
    bool v = t.test(w);
    all = all && v;
    if (o.json)
      results[m.worlds[w].id] = v;
    else
      std::cout << m.worlds[w].id << ": " << (v ? "true" : "false") << '\n';
  }
  if (o.json)
    std::cout << json{{"version", kVersion}, {"formula", render(f)}, {"results", results}, {"holds", all}}.dump()
              << '\n';
  return all ? 0 : 1;
}

int cmd_truthset(const Options& o) {
  Model m = load_valid(o.model);
  Formula f = formula_arg(o);
  Checker c(m, semantic_dynamics());
  auto ids = world_ids(m, c.truth_set(f));
  if (o.json) {
    std::cout << json{{"version", kVersion}, {"formula", render(f)}, {"worlds", ids}}.dump() << '\n';
  } else {
    std::cout << '{';
    for (std::size_t k = 0; k < ids.size(); ++k) std::cout << (k ? ", " : "") << ids[k];
    std::cout << "}\n";
  }
  return 0;
}

int cmd_validate(const Options& o) {
  Model m = load(o.model);
  auto report = validate_model(m);
  if (o.json) {
    json list = json::array();
    for (const auto& v : report.violations)
      list.push_back({{"constraint", v.constraint}, {"world", v.world}, {"agent", v.agent}, {"detail", v.detail}});
    std::cout << json{{"version", kVersion}, {"ok", report.ok()}, {"violations", list}}.dump() << '\n';
  } else if (report.ok()) {
    std::cout << "ok\n";
  } else {
    for (const auto& v : report.violations) {
      std::cout << v.constraint;
      if (!v.world.empty()) std::cout << " world=" << v.world;
      if (!v.agent.empty()) std::cout << " agent=" << v.agent;
      std::cout << ": " << v.detail << '\n';
    }
  }
  return report.ok() ? 0 : 1;
}

json log_json(const TransformResult& r) {
  json cells = json::array();
  for (const auto& c : r.normalization_log) {
    json changes = json::array();
    for (const auto& ch : c.changes)
      changes.push_back({{"world", ch.world}, {"old_rank", ch.old_rank}, {"new_rank", ch.new_rank}});
    cells.push_back({{"cell", c.cell}, {"changes", changes}});
  }
  return json{{"version", kVersion},
              {"agent", r.changed_agent},
              {"dim", std::string(to_string(r.dim))},
              {"normalization_log", cells}};
}

int cmd_transform(const Options& o) {
  Model m = load_valid(o.model);
  auto op = op_from_name(o.op);
  if (!op) throw InputError("--op must be one of radB, radD, conB, conD");
  if (o.agent.empty()) throw InputError("--agent is required");
  if (!m.has_agent(o.agent)) throw InputError("unknown agent '" + o.agent + "'");
  if (o.input.empty()) throw InputError("--input is required");
  op->agent = o.agent;
  op->input = parse_formula(o.input, ParseOptions{o.core_only});
  Checker c(m, semantic_dynamics());
  TransformResult r = revise(m, *op, c.truth_set(op->input));
  json log = log_json(r);
  if (!o.out.empty()) {
    save_model(r.model, o.out);
    std::ofstream(o.out + ".log.json") << log.dump(2) << '\n';
    if (o.json)
      std::cout << json{{"version", kVersion}, {"model_file", o.out}, {"log_file", o.out + ".log.json"}}.dump()
                << '\n';
    else
      std::cout << "wrote " << o.out << " and " << o.out << ".log.json\n";
  } else if (o.json) {
    std::cout << json{{"version", kVersion},
                      {"model", json::parse(dump_model_json(r.model))},
                      {"normalization_log", log["normalization_log"]}}
                     .dump()
              << '\n';
  } else {
    std::cout << dump_model_json(r.model);
    std::cerr << log.dump() << '\n';
  }
  return 0;
}

int cmd_rewrite(const Options& o) {
  Formula f = formula_arg(o);
  ReduceStats stats;
  Formula r;
  try {
    r = reduce(f, {}, &stats);
  } catch (const ReduceBudgetExceeded& e) {
    throw InputError(e.what());
  }
  if (o.json)
    std::cout << json{{"version", kVersion}, {"input", render(f)}, {"output", render(r)}, {"steps", stats.steps}}
                     .dump()
              << '\n';
  else
    std::cout << render(r) << '\n';
  return 0;
}

int cmd_game(const Options& o) {
  Model m = load_valid(o.model);
  if (!m.actions) throw InputError("model declares no actions");
  enforce_budget(m);
  if (!o.world.empty()) selected_worlds(m, o.world);
  GameReport rep = game_report(m, modes_of(o.mode), o.world, budget_from_env());
  if (o.json)
    std::cout << rep.to_json().dump() << '\n';
  else
    std::cout << rep.to_table();
  return rep.every_world_has_equilibrium() ? 0 : 1;
}

int cmd_fuzz(const Options& o) {
  if (o.suite.empty()) throw InputError("--suite is required; one of: " + [] {
    std::string s;
    for (const auto& id : suite_ids()) s += (s.empty() ? "" : ", ") + id;
    return s;
  }());
  GenSpec spec;
  spec.seed = o.seed;
  spec.worlds = {1, o.max_worlds};
  spec.agents = {1, o.max_agents};
  if (o.max_worlds < 1 || o.max_agents < 1) throw InputError("--max-worlds and --max-agents must be positive");
  FuzzOptions fo;
  if (!o.out.empty()) {
    fs::path parent = fs::path(o.out).parent_path();
    fo.out_dir = parent.empty() ? fs::path(".") : parent;
  }
  FuzzReport rep;
  try {
    rep = fuzz_validities(o.suite, o.models, spec, fo);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  json j = rep.to_json();
  if (!o.out.empty()) std::ofstream(o.out) << j.dump(2) << '\n';
  if (o.json) {
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "suite " << rep.suite << ": " << rep.models << " models, " << rep.checks << " checks, "
              << rep.failure_count << " failures\n";
    for (const auto& f : rep.failures) {
      std::cout << "  " << (f.model_file.empty() ? "-" : f.model_file) << " " << (f.world.empty() ? "-" : f.world)
                << " " << f.formula;
      if (!f.detail.empty()) std::cout << "  (" << f.detail << ")";
      std::cout << '\n';
    }
  }
  return rep.failure_count == 0 ? 0 : 1;
}

// Re-evaluates recorded counterexamples. Exit 1 when at least one reproduces.
int cmd_replay(const Options& o) {
  struct Case {
    fs::path model;
    std::string world;
    std::string formula;
  };
  std::vector<Case> cases;
  std::size_t skipped = 0;
  if (!o.report.empty()) {
    json j;
    try {
      j = json::parse(read_file(o.report));
    } catch (const json::exception& e) {
      throw InputError("malformed report: " + std::string(e.what()));
    }
    FuzzReport rep = FuzzReport::from_json(j);
    fs::path dir = fs::path(o.report).parent_path();
    for (const auto& f : rep.failures) {
      if (f.model_file.empty() || f.world.empty()) {
        ++skipped;
        continue;
      }
      cases.push_back({dir / f.model_file, f.world, f.formula});
    }
  } else {
    if (o.world.empty()) throw InputError("replay needs --report, or --model with --formula and --world");
    std::string text = !o.formula_file.empty() ? read_file(o.formula_file) : o.formula;
    cases.push_back({o.model, o.world, text});
  }
  std::size_t reproduced = 0;
  json list = json::array();
  for (const auto& cs : cases) {
    Model m = load_valid(cs.model.string());
    Formula f = parse_formula(cs.formula);
    std::size_t w = selected_worlds(m, cs.world).front();
    Checker c(m, semantic_dynamics());
    bool holds = c.eval(w, f);
    if (!holds) ++reproduced;
    if (o.json)
      list.push_back({{"model_file", cs.model.string()}, {"world", cs.world}, {"formula", cs.formula},
                      {"holds", holds}});
    else
      std::cout << cs.model.string() << " " << cs.world << ": " << (holds ? "holds" : "FALSE") << "  "
                << cs.formula << '\n';
  }
  if (o.json)
    std::cout << json{{"version", kVersion}, {"replayed", list}, {"reproduced", reproduced}, {"skipped", skipped}}
                     .dump()
              << '\n';
  else if (skipped)
    std::cout << skipped << " failure(s) without a model file or world were skipped\n";
  return reproduced ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for dynamic logics of cognitive attitudes"};
  app.require_subcommand(1);
  Options o;

  auto model = [&](CLI::App* s) { s->add_option("--model", o.model, "model JSON file"); };
  auto formula = [&](CLI::App* s) {
    s->add_option("--formula", o.formula, "formula text");
    s->add_option("--formula-file", o.formula_file, "file containing the formula");
    s->add_flag("--core-only", o.core_only, "reject derived program sugar (ge, lt, gt, nge, sim)");
  };
  auto common = [&](CLI::App* s) { s->add_flag("--json", o.json, "line-oriented JSON output"); };

  auto* check = app.add_subcommand("check", "evaluate a formula at each world");
  model(check), formula(check), common(check);
  check->add_option("--world", o.world, "restrict to one world");

  auto* truthset = app.add_subcommand("truthset", "print the set of worlds where a formula holds");
  model(truthset), formula(truthset), common(truthset);

  auto* validate = app.add_subcommand("validate", "check the model constraints");
  model(validate), common(validate);

  auto* transform = app.add_subcommand("transform", "apply a revision to a model");
  model(transform), common(transform);
  transform->add_option("--op", o.op, "radB | radD | conB | conD");
  transform->add_option("--agent", o.agent, "revising agent");
  transform->add_option("--input", o.input, "input formula");
  transform->add_option("--out", o.out, "write the model here and the log to <out>.log.json");
  transform->add_flag("--core-only", o.core_only, "reject derived program sugar");

  auto* rewrite = app.add_subcommand("rewrite", "eliminate revision operators");
  formula(rewrite), common(rewrite);

  auto* game = app.add_subcommand("game", "best responses, equilibria and rationality");
  model(game), common(game);
  game->add_option("--mode", o.mode, "opt | pess (default both)");
  game->add_option("--world", o.world, "restrict to one world");

  auto* fuzz = app.add_subcommand("fuzz", "fuzz a validity suite on generated models");
  common(fuzz);
  fuzz->add_option("--suite", o.suite, "suite name");
  fuzz->add_option("--models", o.models, "number of generated models");
  fuzz->add_option("--seed", o.seed, "base seed");
  fuzz->add_option("--max-worlds", o.max_worlds, "largest generated model");
  fuzz->add_option("--max-agents", o.max_agents, "most agents in a generated model");
  fuzz->add_option("--out", o.out, "report file; counterexample models go next to it");

  auto* replay = app.add_subcommand("replay", "re-evaluate recorded counterexamples");
  common(replay), model(replay);
  replay->add_option("--report", o.report, "fuzz report JSON");
  replay->add_option("--formula", o.formula, "formula text");
  replay->add_option("--formula-file", o.formula_file, "file containing the formula");
  replay->add_option("--world", o.world, "world id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) return cmd_check(o);
    if (*truthset) return cmd_truthset(o);
    if (*validate) return cmd_validate(o);
    if (*transform) return cmd_transform(o);
    if (*rewrite) return cmd_rewrite(o);
    if (*game) return cmd_game(o);
    if (*fuzz) return cmd_fuzz(o);
    if (*replay) return cmd_replay(o);
  } catch (const cogmodal::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
