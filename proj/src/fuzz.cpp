#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <stdexcept>

#include "cogmodal/checker.hpp"
#include "cogmodal/dynamics.hpp"
#include "cogmodal/expand.hpp"
#include "cogmodal/games.hpp"
#include "cogmodal/genfuzz.hpp"
#include "cogmodal/parser.hpp"

namespace cogmodal {

namespace {

// Collects checks and counterexamples for one model.
class Session {
 public:
  Session(FuzzReport& rep, const FuzzOptions& opts, const Model& m, std::size_t index)
      : rep_(rep), opts_(opts), m_(m), index_(index) {}

  // f must hold at every world of the model.
  void expect_valid(Checker& c, const Formula& f) {
    ++rep_.checks;
    const WorldSet& t = c.truth_set(f);
    if (t.count() == m_.size()) return;
    std::size_t w = t.complement().members().front();
    fail(m_.worlds[w].id, render(f), "");
  }

  void expect(bool ok, const std::string& formula, const std::string& detail) {
    ++rep_.checks;
    if (!ok) fail("", formula, detail);
  }

 private:
  void fail(const std::string& world, const std::string& formula, const std::string& detail) {
    ++rep_.failure_count;
    if (rep_.failures.size() >= opts_.max_failures) return;
    FuzzFailure f{"", world, formula, detail};
    if (!opts_.out_dir.empty()) {
      std::filesystem::create_directories(opts_.out_dir);
      auto path = opts_.out_dir / (rep_.suite + "-m" + std::to_string(index_) + ".json");
      if (!std::filesystem::exists(path)) save_model(m_, path);
      f.model_file = path.filename().string();
    }
    rep_.failures.push_back(std::move(f));
  }

  FuzzReport& rep_;
  const FuzzOptions& opts_;
  const Model& m_;
  std::size_t index_;
};

struct SuiteContext {
  const Model& m;
  Rng& rng;
  Session& session;
  const FuzzOptions& opts;
  const GenSpec& spec;
};

using SuiteFn = std::function<void(SuiteContext&)>;

FormulaGen formula_gen(int depth) {
  FormulaGen g;
  g.depth = depth;
  return g;
}

FormulaGen propositional_gen(int depth) {
  FormulaGen g;
  g.depth = depth;
  g.propositional = true;
  return g;
}

void run_schemas(SuiteContext& ctx, const std::vector<std::string>& ids, bool with_nec) {
  Checker c(ctx.m);
  Signature sig = Signature::of(ctx.m);
  for (const auto& id : ids) {
    auto inst = axiom_instances(id, ctx.m, ctx.rng, ctx.opts.instances_per_schema, 2);
    for (const auto& f : inst) ctx.session.expect_valid(c, f);
    if (with_nec && !inst.empty()) {
      // necessitation: a formula valid on the model stays valid under any box
      Program pi = gen_program(ctx.rng, sig, 2, formula_gen(1));
      ctx.session.expect_valid(c, box(pi, inst.front()));
    }
  }
}

void suite_dlca(SuiteContext& ctx) { run_schemas(ctx, dlca_schema_ids(), true); }

void suite_dlcag(SuiteContext& ctx) { run_schemas(ctx, {"MostAct", "LeastAct", "SIC"}, false); }

void suite_wf(SuiteContext& ctx) { run_schemas(ctx, {"CWF", "WF"}, false); }

void suite_negative(SuiteContext& ctx) { run_schemas(ctx, {"NegB"}, false); }

void suite_encodings(SuiteContext& ctx) {
  Checker c(ctx.m);
  Signature sig = Signature::of(ctx.m);
  FormulaGen g = formula_gen(2);
  static const AttitudeKind prefs[] = {AttitudeKind::PrefOpt, AttitudeKind::PrefPess, AttitudeKind::RealPrefOpt,
                                       AttitudeKind::RealPrefPess};
  for (const auto& i : ctx.m.agents) {
    Formula phi = gen_formula(ctx.rng, sig, g);
    Formula psi = gen_formula(ctx.rng, sig, g);
    std::vector<Formula> fs = {believes(i, phi),        strongly_believes(i, phi), cond_believes(i, psi, phi),
                               desires(i, phi),         strongly_desires(i, phi),  cond_desires(i, psi, phi)};
    for (AttitudeKind k : prefs) {
      fs.push_back(prefers(k, PrefForm::Weak, i, psi, phi));
      fs.push_back(prefers(k, PrefForm::Strict, i, psi, phi));
      fs.push_back(prefers(k, i, phi));
    }
    for (const auto& f : fs) ctx.session.expect_valid(c, iff(f, expand_attitudes(f)));
  }
}

void suite_validities(SuiteContext& ctx) {
  Checker c(ctx.m);
  Signature sig = Signature::of(ctx.m);
  FormulaGen g = formula_gen(2);
  for (const auto& i : ctx.m.agents) {
    for (int rep = 0; rep < 2; ++rep) {
      Formula phi = gen_formula(ctx.rng, sig, g);
      Formula psi = gen_formula(ctx.rng, sig, g);
      auto& s = ctx.session;
      s.expect_valid(c, implies(conj(strongly_believes(i, phi), diamond(eq(i), phi)), believes(i, phi)));
      s.expect_valid(c, implies(desires(i, phi), desires(i, conj(phi, psi))));
      s.expect_valid(c, implies(conj(strongly_desires(i, phi), diamond(eq(i), neg(phi))), desires(i, phi)));
      for (AttitudeKind k : {AttitudeKind::PrefOpt, AttitudeKind::PrefPess, AttitudeKind::RealPrefOpt,
                             AttitudeKind::RealPrefPess})
        s.expect_valid(c, disj(prefers(k, PrefForm::Weak, i, psi, phi), prefers(k, PrefForm::Weak, i, phi, psi)));
      s.expect_valid(c, implies(neg(desires(i, truth())),
                                iff(desires(i, phi), prefers(AttitudeKind::PrefPess, i, phi))));
    }
  }
}

void suite_finite(SuiteContext& ctx) {
  Checker c(ctx.m);
  Signature sig = Signature::of(ctx.m);
  for (const auto& i : ctx.m.agents) {
    Formula phi = gen_formula(ctx.rng, sig, formula_gen(2));
    ctx.session.expect_valid(c, neg(conj(believes(i, phi), believes(i, neg(phi)))));
    ctx.session.expect_valid(c, neg(believes(i, falsity())));
    ctx.session.expect_valid(c, neg(desires(i, truth())));
  }
}

// Raises the desirability of each cell's most plausible worlds to a fresh top
// rank, which makes the wishful-thinking constraint hold.
Model force_wt(const Model& m, const std::string& agent) {
  Model out = m;
  ModelIndex idx = index_model(m);
  const AgentIndex& a = idx.agent(agent);
  for (const auto& cell : a.cells) {
    std::int64_t top = 0;
    for (auto w : cell.members()) top = std::max(top, a.rank_d[w]);
    for (auto w : max_rank(cell, a.rank_p).members()) out.worlds[w].agents.at(agent).rank_d = top + 1;
  }
  return out;
}

void suite_wt(SuiteContext& ctx) {
  Signature sig = Signature::of(ctx.m);
  for (const auto& i : ctx.m.agents) {
    Model m = ctx.rng.chance(1, 2) ? force_wt(ctx.m, i) : ctx.m;
    Checker c(m);
    if (!c.check_wt(i)) continue;
    Formula phi = gen_formula(ctx.rng, sig, formula_gen(2));
    ctx.session.expect_valid(
        c, implies(conj(strongly_desires(i, phi), neg(believes(i, neg(phi)))), believes(i, phi)));
  }
}

void rationality(SuiteContext& ctx, Mode mode) {
  Checker c(ctx.m);
  auto all = joint_actions(ctx.m);
  {
    AttitudeKind rp = mode == Mode::Opt ? AttitudeKind::RealPrefOpt : AttitudeKind::RealPrefPess;
    for (const auto& i : ctx.m.agents) {
      Formula rat = rationality_formula(ctx.m, i, mode);
      for (const auto& a : *ctx.m.actions) {
        std::vector<Formula> parts;
        for (const auto& b : *ctx.m.actions)
          parts.push_back(prefers(rp, PrefForm::Weak, i, play(i, b), play(i, a)));
        ctx.session.expect_valid(c, implies(conj(rat, play(i, a)), conj(parts)));
      }
    }
    for (const auto& d : all) {
      std::vector<Formula> parts = {play_formula(d)};
      for (const auto& i : ctx.m.agents) {
        JointAction others = d;
        others.erase(i);
        parts.push_back(rationality_formula(ctx.m, i, mode));
        parts.push_back(believes(i, play_formula(others)));
      }
      ctx.session.expect_valid(c, implies(conj(parts), nash_formula(ctx.m, d, mode)));
    }
  }
}

void suite_rationality_opt(SuiteContext& ctx) { rationality(ctx, Mode::Opt); }
void suite_rationality_pess(SuiteContext& ctx) { rationality(ctx, Mode::Pess); }

// Independent set-comprehension oracle for the revised ordering of (agent, dim).
PairSet revised_by_comprehension(const Model& m, const RevisionOp& op, const WorldSet& input) {
  ModelIndex idx = index_model(m);
  PairSet eqr = atomic_rel(idx, eq(op.agent));
  PairSet ler = atomic_rel(idx, le(op.agent, op.dim));
  const std::size_t n = m.size();
  // membership of each world in the moved set, computed relative to its own cell
  WorldSet moved(n);
  for (std::size_t w = 0; w < n; ++w) {
    WorldSet dom = op.flavor == Flavor::Radical ? input : (op.dim == Dim::P ? input : input.complement());
    dom &= eqr.row(w);
    if (op.flavor == Flavor::Radical) {
      moved = input;
      break;
    }
    // most plausible (P) or least desirable (D) worlds of dom
    WorldSet best(n);
    for (auto u : dom.members()) {
      bool extreme = true;
      for (auto v : dom.members()) {
        bool beats = op.dim == Dim::P ? !ler.contains(v, u) : !ler.contains(u, v);
        if (beats) extreme = false;
      }
      if (extreme) best.set(u);
    }
    if (best.test(w)) moved.set(w);
  }
  PairSet out(n);
  bool up = op.flavor == Flavor::Radical || op.dim == Dim::P;
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t v = 0; v < n; ++v) {
      bool same_tier = moved.test(w) == moved.test(v);
      bool cross = up ? (!moved.test(w) && moved.test(v)) : (moved.test(w) && !moved.test(v));
      if ((same_tier && ler.contains(w, v)) || (cross && eqr.contains(w, v))) out.insert(w, v);
    }
  return out;
}

bool same_except(const Model& a, const Model& b, const std::string& agent, Dim dim) {
  if (a.agents != b.agents || a.atoms != b.atoms || a.actions != b.actions || a.size() != b.size()) return false;
  for (std::size_t w = 0; w < a.size(); ++w) {
    const auto& x = a.worlds[w];
    const auto& y = b.worlds[w];
    if (x.id != y.id || x.nominals != y.nominals || x.atoms != y.atoms) return false;
    for (const auto& i : a.agents) {
      AgentState s = x.agents.at(i);
      const AgentState& t = y.agents.at(i);
      if (i == agent) (dim == Dim::P ? s.rank_p : s.rank_d) = dim == Dim::P ? t.rank_p : t.rank_d;
      if (!(s == t)) return false;
    }
  }
  return true;
}

void suite_comprehension(SuiteContext& ctx) {
  Checker c(ctx.m);
  Signature sig = Signature::of(ctx.m);
  FormulaGen g = formula_gen(2);
  for (Flavor fl : {Flavor::Radical, Flavor::Conservative}) {
    for (Dim d : {Dim::P, Dim::D}) {
      RevisionOp op{fl, d, ctx.rng.pick(sig.agents), gen_formula(ctx.rng, sig, g)};
      WorldSet input = c.truth_set(op.input);
      TransformResult r = revise(ctx.m, op, input);
      std::string label = render(dyn(op, truth()));
      ModelIndex after = index_model(r.model);
      PairSet got = atomic_rel(after, le(op.agent, d));
      ctx.session.expect(got == revised_by_comprehension(ctx.m, op, input), label, "revised ordering differs");
      PairSet nle_got = atomic_rel(after, nle(op.agent, d));
      PairSet eq_got = atomic_rel(after, eq(op.agent));
      ctx.session.expect((got | nle_got) == eq_got && (got & nle_got).size() == 0, label,
                         "complement identity broken");
      ctx.session.expect(validate_model(r.model).ok(), label, "revised model invalid");
      ctx.session.expect(same_except(ctx.m, r.model, op.agent, d), label, "untouched components changed");
    }
  }
}

void suite_success(SuiteContext& ctx) {
  Checker c(ctx.m, semantic_dynamics());
  Signature sig = Signature::of(ctx.m);
  FormulaGen g = propositional_gen(2);
  for (const auto& i : ctx.m.agents) {
    Formula phi = gen_formula(ctx.rng, sig, g);
    auto op = [&](Flavor f, Dim d) { return RevisionOp{f, d, i, phi}; };
    auto& s = ctx.session;
    s.expect_valid(c, implies(diamond(eq(i), phi), dyn(op(Flavor::Radical, Dim::P),
                                                         conj(believes(i, phi), strongly_believes(i, phi)))));
    s.expect_valid(c, implies(diamond(eq(i), neg(phi)),
                              dyn(op(Flavor::Radical, Dim::D), conj(desires(i, phi), strongly_desires(i, phi)))));
    s.expect_valid(c, dyn(op(Flavor::Radical, Dim::P), implies(believes(i, phi), strongly_believes(i, phi))));
    s.expect_valid(c, dyn(op(Flavor::Radical, Dim::D), implies(desires(i, phi), strongly_desires(i, phi))));
    s.expect_valid(c, implies(neg(cond_believes(i, phi, falsity())),
                              dyn(op(Flavor::Conservative, Dim::P), believes(i, phi))));
    s.expect_valid(c, implies(neg(cond_desires(i, phi, truth())),
                              dyn(op(Flavor::Conservative, Dim::D), desires(i, phi))));
  }
}

void suite_reduction(SuiteContext& ctx) {
  Checker semantic(ctx.m, semantic_dynamics());
  Signature sig = Signature::of(ctx.m);
  FormulaGen g = formula_gen(3);
  g.dynamic_nesting = 2;
  for (int k = 0; k < 2; ++k) {
    Formula f = gen_formula(ctx.rng, sig, g);
    // every generated formula should exercise at least one revision operator
    if (!contains_dynamic(f)) {
      RevisionOp op{ctx.rng.chance(1, 2) ? Flavor::Radical : Flavor::Conservative,
                    ctx.rng.chance(1, 2) ? Dim::P : Dim::D, ctx.rng.pick(sig.agents),
                    gen_formula(ctx.rng, sig, formula_gen(2))};
      f = dyn(op, f);
    }
    Formula r;
    try {
      r = reduce(f);
    } catch (const ReduceBudgetExceeded&) {
      ctx.session.expect(false, render(f), "reduction budget exceeded");
      continue;
    }
    ctx.session.expect(!contains_dynamic(r), render(f), "reduct still contains a revision operator");
    // recorded as f <-> red(f) so the failure replays at a concrete world
    ctx.session.expect_valid(semantic, iff(f, r));
  }
}

void suite_syntax(SuiteContext& ctx) {
  Signature sig = Signature::of(ctx.m);
  FormulaGen g = formula_gen(4);
  g.dynamic_nesting = 2;
  for (int k = 0; k < 4; ++k) {
    Formula f = gen_formula(ctx.rng, sig, g);
    std::string text = render(f);
    bool ok = false;
    try {
      ok = parse_formula(text) == f;
    } catch (const ParseError&) {
    }
    ctx.session.expect(ok, text, "render/parse round trip failed");
    if (!contains_dynamic(f)) {
      Formula e = expand_attitudes(f);
      ctx.session.expect(expand_attitudes(e) == e, text, "expansion not idempotent");
    }
  }
  ctx.session.expect(rank_relation_roundtrip(ctx.m), "", "rank representation not lossless");
}

struct SuiteDef {
  SuiteFn fn;
  bool choices;
};

const std::map<std::string, SuiteDef>& registry() {
  static const std::map<std::string, SuiteDef> r = {
      {"dlca-axioms", {suite_dlca, false}},
      {"dlcag-axioms", {suite_dlcag, true}},
      {"wf-axioms", {suite_wf, false}},
      {"attitude-encodings", {suite_encodings, false}},
      {"validities", {suite_validities, false}},
      {"finite-model", {suite_finite, false}},
      {"wt-bridge", {suite_wt, false}},
      {"rationality-opt", {suite_rationality_opt, true}},
      {"rationality-pess", {suite_rationality_pess, true}},
      {"revision-comprehension", {suite_comprehension, false}},
      {"revision-success", {suite_success, false}},
      {"reduction", {suite_reduction, false}},
      {"syntax", {suite_syntax, false}},
      {"negative-controls", {suite_negative, false}},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return ids;
}

FuzzReport fuzz_validities(const std::string& suite, std::size_t n_models, const GenSpec& spec,
                           const FuzzOptions& opts) {
  auto it = registry().find(suite);
  if (it == registry().end()) throw std::invalid_argument("unknown suite '" + suite + "'");
  auto start = std::chrono::steady_clock::now();
  FuzzReport rep;
  rep.suite = suite;
  rep.seed = spec.seed;
  rep.models = n_models;
  GenSpec s = spec;
  s.with_choices = spec.with_choices || it->second.choices;
  for (std::size_t k = 0; k < n_models; ++k) {
    Rng rng(derive_seed(spec.seed, k));
    Model m = gen_model(s, rng);
    Session session(rep, opts, m, k);
    SuiteContext ctx{m, rng, session, opts, s};
    it->second.fn(ctx);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

nlohmann::ordered_json FuzzReport::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["suite"] = suite;
  j["seed"] = seed;
  j["models"] = models;
  j["checks"] = checks;
  j["failure_count"] = failure_count;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& f : failures) {
    nlohmann::ordered_json e;
    e["model_file"] = f.model_file;
    e["world"] = f.world;
    e["formula"] = f.formula;
    if (!f.detail.empty()) e["detail"] = f.detail;
    list.push_back(e);
  }
  j["failures"] = list;
  return j;
}

FuzzReport FuzzReport::from_json(const nlohmann::json& j) {
  FuzzReport r;
  r.suite = j.at("suite").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.models = j.at("models").get<std::size_t>();
  r.checks = j.at("checks").get<std::size_t>();
  r.failure_count = j.value("failure_count", j.at("failures").size());
  for (const auto& e : j.at("failures"))
    r.failures.push_back({e.value("model_file", ""), e.value("world", ""), e.value("formula", ""),
                          e.value("detail", "")});
  return r;
}

bool rank_relation_roundtrip(const Model& m) {
  ModelIndex idx = index_model(m);
  Model rebuilt = m;
  for (const auto& i : m.agents) {
    for (Dim d : {Dim::P, Dim::D}) {
      PairSet r = atomic_rel(idx, le(i, d));
      // rank of w = number of worlds at most as high as w
      for (std::size_t w = 0; w < m.size(); ++w) {
        std::int64_t rank = 0;
        for (std::size_t v = 0; v < m.size(); ++v)
          if (r.contains(v, w)) ++rank;
        auto& st = rebuilt.worlds[w].agents.at(i);
        (d == Dim::P ? st.rank_p : st.rank_d) = rank;
      }
    }
  }
  ModelIndex after = index_model(rebuilt);
  for (const auto& i : m.agents)
    for (Dim d : {Dim::P, Dim::D})
      if (!(atomic_rel(idx, le(i, d)) == atomic_rel(after, le(i, d))) ||
          !(atomic_rel(idx, nle(i, d)) == atomic_rel(after, nle(i, d))))
        return false;
  return true;
}

}  // namespace cogmodal
