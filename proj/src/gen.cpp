#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "cogmodal/genfuzz.hpp"

namespace cogmodal {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

int draw(Rng& rng, Range r) { return rng.uniform(r.lo, std::max(r.lo, r.hi)); }

std::string atom_name(int k) {
  static const char* const pool[] = {"p", "q", "r", "s", "t", "u"};
  return k < 6 ? pool[k] : "p" + std::to_string(k);
}

std::string action_name(int k) {
  static const char* const pool[] = {"a", "b", "c", "d", "e"};
  return k < 5 ? pool[k] : "a" + std::to_string(k);
}

// Relabels cell numbers as c0, c1, ... in order of first use.
std::vector<std::string> cell_labels(const std::vector<int>& raw) {
  std::map<int, std::string> names;
  std::vector<std::string> out;
  for (int c : raw) {
    auto it = names.find(c);
    if (it == names.end()) it = names.emplace(c, "c" + std::to_string(names.size())).first;
    out.push_back(it->second);
  }
  return out;
}

void assign_ranks(Model& m, Rng& rng, int max_rank) {
  for (const auto& i : m.agents) {
    for (auto& w : m.worlds) {
      auto& st = w.agents[i];
      st.rank_p = rng.uniform(0, max_rank);
      st.rank_d = rng.uniform(0, max_rank);
    }
    // dense renumbering per cell
    std::map<std::string, std::vector<std::size_t>> cells;
    for (std::size_t w = 0; w < m.worlds.size(); ++w) cells[m.worlds[w].agents[i].cell].push_back(w);
    for (auto& [_, members] : cells) {
      for (bool p : {true, false}) {
        std::vector<std::int64_t> vals;
        for (auto w : members) {
          auto& st = m.worlds[w].agents[i];
          vals.push_back(p ? st.rank_p : st.rank_d);
        }
        std::vector<std::int64_t> sorted = vals;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t k = 0; k < members.size(); ++k) {
          auto r = std::lower_bound(sorted.begin(), sorted.end(), vals[k]) - sorted.begin();
          auto& st = m.worlds[members[k]].agents[i];
          (p ? st.rank_p : st.rank_d) = r;
        }
      }
    }
  }
}

// Cells and choices satisfying C5 by construction: worlds are split into
// blocks that each play every joint action of a fixed product set, and every
// cell is a union of blocks.
void assign_cells_with_choices(Model& m, Rng& rng, const GenSpec& spec) {
  const int n = static_cast<int>(m.worlds.size());
  const int n_act = draw(rng, spec.actions);
  std::vector<std::string> act;
  for (int k = 0; k < n_act; ++k) act.push_back(action_name(k));
  m.actions = act;

  std::vector<std::vector<std::string>> played;
  int product = 1;
  for (std::size_t j = 0; j < m.agents.size(); ++j) {
    int room = std::min(n_act, n / product);
    int size = rng.uniform(1, std::max(1, room));
    std::vector<std::string> pool = act;
    rng.shuffle(pool);
    pool.resize(size);
    std::sort(pool.begin(), pool.end());
    played.push_back(pool);
    product *= size;
  }
  std::vector<std::vector<std::string>> joint;
  std::vector<std::size_t> digit(played.size(), 0);
  while (true) {
    std::vector<std::string> d;
    for (std::size_t j = 0; j < played.size(); ++j) d.push_back(played[j][digit[j]]);
    joint.push_back(d);
    std::size_t k = digit.size();
    while (k > 0 && ++digit[k - 1] == played[k - 1].size()) digit[--k] = 0;
    if (k == 0) break;
  }

  const int blocks = rng.uniform(1, std::max(1, n / product));
  std::vector<int> size(blocks, product);
  for (int extra = n - blocks * product; extra > 0; --extra) ++size[rng.below(blocks)];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  std::vector<int> block_of(n);
  std::size_t pos = 0;
  for (int b = 0; b < blocks; ++b) {
    std::vector<std::size_t> perm(joint.size());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    for (int k = 0; k < size[b]; ++k, ++pos) {
      std::size_t w = order[pos];
      block_of[w] = b;
      const auto& d = k < static_cast<int>(perm.size()) ? joint[perm[k]] : rng.pick(joint);
      for (std::size_t j = 0; j < m.agents.size(); ++j) m.worlds[w].agents[m.agents[j]].choice = d[j];
    }
  }

  for (const auto& i : m.agents) {
    int c = rng.uniform(spec.cells.lo, std::max(spec.cells.lo, std::min(spec.cells.hi, blocks)));
    c = std::max(1, std::min(c, blocks));
    std::vector<int> cell_of_block(blocks);
    for (auto& x : cell_of_block) x = static_cast<int>(rng.below(c));
    std::vector<int> raw(n);
    for (int w = 0; w < n; ++w) raw[w] = cell_of_block[block_of[w]];
    auto labels = cell_labels(raw);
    for (int w = 0; w < n; ++w) m.worlds[w].agents[i].cell = labels[w];
  }
}

}  // namespace

Model gen_model(const GenSpec& spec, Rng& rng) {
  Model m;
  const int n = std::max(1, draw(rng, spec.worlds));
  const int k = std::max(1, draw(rng, spec.agents));
  const int a = std::max(0, draw(rng, spec.atoms));
  for (int i = 1; i <= k; ++i) m.agents.push_back(std::to_string(i));
  for (int i = 0; i < a; ++i) m.atoms.push_back(atom_name(i));
  for (int w = 1; w <= n; ++w) {
    WorldRecord rec;
    rec.id = "w" + std::to_string(w);
    rec.nominals.push_back("x" + std::to_string(w));
    if (rng.chance(1, 6)) rec.nominals.push_back("y" + std::to_string(w));
    for (const auto& p : m.atoms)
      if (rng.chance(1, 2)) rec.atoms.insert(p);
    for (const auto& i : m.agents) rec.agents[i] = AgentState{};
    m.worlds.push_back(std::move(rec));
  }
  if (spec.with_choices) {
    assign_cells_with_choices(m, rng, spec);
  } else {
    for (const auto& i : m.agents) {
      int c = rng.uniform(spec.cells.lo, std::max(spec.cells.lo, std::min(spec.cells.hi, n)));
      c = std::max(1, std::min(c, n));
      std::vector<int> raw(n);
      for (auto& x : raw) x = static_cast<int>(rng.below(c));
      auto labels = cell_labels(raw);
      for (int w = 0; w < n; ++w) m.worlds[w].agents[i].cell = labels[w];
    }
  }
  assign_ranks(m, rng, spec.max_rank);
  return m;
}

Model gen_model(const GenSpec& spec) {
  Rng rng(spec.seed);
  return gen_model(spec, rng);
}

Signature Signature::of(const Model& m) {
  Signature s;
  s.agents = m.agents;
  s.atoms = m.atoms;
  for (const auto& w : m.worlds)
    for (const auto& x : w.nominals) s.nominals.push_back(x);
  if (m.actions) s.actions = *m.actions;
  return s;
}

namespace {

Formula gen_leaf(Rng& rng, const Signature& sig, const FormulaGen& opts) {
  std::vector<int> weights = {
      sig.atoms.empty() ? 0 : 8,
      opts.propositional || !opts.nominals || sig.nominals.empty() ? 0 : 3,
      1,
      opts.propositional || !opts.plays || sig.actions.empty() ? 0 : 3,
  };
  int total = std::accumulate(weights.begin(), weights.end(), 0);
  int r = static_cast<int>(rng.below(total));
  int pick = 0;
  while (r >= weights[pick]) r -= weights[pick++];
  switch (pick) {
    case 0: return atom(rng.pick(sig.atoms));
    case 1: return nominal(rng.pick(sig.nominals));
    case 2: return rng.chance(1, 2) ? truth() : falsity();
    default: return play(rng.pick(sig.agents), rng.pick(sig.actions));
  }
}

Formula gen_rec(Rng& rng, const Signature& sig, const FormulaGen& opts, int depth, int nesting);

Formula gen_attitude(Rng& rng, const Signature& sig, const FormulaGen& opts, int depth, int nesting) {
  const std::string& i = rng.pick(sig.agents);
  auto sub = [&] { return gen_rec(rng, sig, opts, depth - 1, nesting); };
  switch (rng.below(10)) {
    case 0: return believes(i, sub());
    case 1: return strongly_believes(i, sub());
    case 2: { Formula psi = sub(); return cond_believes(i, psi, sub()); }
    case 3: return desires(i, sub());
    case 4: return strongly_desires(i, sub());
    case 5: { Formula psi = sub(); return cond_desires(i, psi, sub()); }
    default: break;
  }
  static const AttitudeKind prefs[] = {AttitudeKind::PrefOpt, AttitudeKind::PrefPess, AttitudeKind::RealPrefOpt,
                                       AttitudeKind::RealPrefPess};
  AttitudeKind kind = prefs[rng.below(4)];
  switch (rng.below(3)) {
    case 0: { Formula psi = sub(); return prefers(kind, PrefForm::Weak, i, psi, sub()); }
    case 1: { Formula psi = sub(); return prefers(kind, PrefForm::Strict, i, psi, sub()); }
    default: return prefers(kind, i, sub());
  }
}

Formula gen_rec(Rng& rng, const Signature& sig, const FormulaGen& opts, int depth, int nesting) {
  if (depth <= 0 || rng.chance(1, 5)) return gen_leaf(rng, sig, opts);
  auto sub = [&] { return gen_rec(rng, sig, opts, depth - 1, nesting); };
  std::vector<int> weights = {4, 4, 2, 2, 1};  // not, and, or, implies, iff
  if (!opts.propositional) {
    weights.push_back(opts.programs ? 3 : 0);   // box
    weights.push_back(opts.programs ? 2 : 0);   // diamond
    weights.push_back(opts.attitudes ? 4 : 0);  // attitude
    weights.push_back(nesting > 0 ? 4 : 0);     // revision
  }
  int total = std::accumulate(weights.begin(), weights.end(), 0);
  int r = static_cast<int>(rng.below(total));
  int pick = 0;
  while (r >= weights[pick]) r -= weights[pick++];
  switch (pick) {
    case 0: return neg(sub());
    case 1: { Formula a = sub(); return conj(a, sub()); }
    case 2: { Formula a = sub(); return disj(a, sub()); }
    case 3: { Formula a = sub(); return implies(a, sub()); }
    case 4: { Formula a = sub(); return iff(a, sub()); }
    case 5: { Program p = gen_program(rng, sig, std::min(depth - 1, 2), opts); return box(p, sub()); }
    case 6: { Program p = gen_program(rng, sig, std::min(depth - 1, 2), opts); return diamond(p, sub()); }
    case 7: return gen_attitude(rng, sig, opts, depth, nesting);
    default: {
      RevisionOp op;
      op.flavor = rng.chance(1, 2) ? Flavor::Radical : Flavor::Conservative;
      op.dim = rng.chance(1, 2) ? Dim::P : Dim::D;
      op.agent = rng.pick(sig.agents);
      op.input = gen_rec(rng, sig, opts, std::min(depth - 1, 2), nesting - 1);
      return dyn(std::move(op), gen_rec(rng, sig, opts, depth - 1, nesting - 1));
    }
  }
}

}  // namespace

Program gen_program(Rng& rng, const Signature& sig, int depth, const FormulaGen& opts) {
  const std::string& i = rng.pick(sig.agents);
  auto atomic = [&]() -> Program {
    Dim d = rng.chance(1, 2) ? Dim::P : Dim::D;
    switch (rng.below(3)) {
      case 0: return eq(i);
      case 1: return le(i, d);
      default: return nle(i, d);
    }
  };
  if (depth <= 0 || rng.chance(1, 2)) return atomic();
  auto sub = [&] { return gen_program(rng, sig, depth - 1, opts); };
  switch (rng.below(6)) {
    case 0: { Program a = sub(); return seq(a, sub()); }
    case 1: { Program a = sub(); return alt(a, sub()); }
    case 2: { Program a = sub(); return inter(a, sub()); }
    case 3: return conv(sub());
    case 4: {
      FormulaGen inner = opts;
      inner.dynamic_nesting = 0;
      return test(gen_rec(rng, sig, inner, 1, 0));
    }
    default: return atomic();
  }
}

Formula gen_formula(Rng& rng, const Signature& sig, const FormulaGen& opts) {
  return gen_rec(rng, sig, opts, opts.depth, opts.dynamic_nesting);
}

Formula gen_formula(const GenSpec& spec) {
  Rng rng(spec.seed);
  Model m = gen_model(spec, rng);
  FormulaGen opts;
  opts.depth = spec.depth;
  return gen_formula(rng, Signature::of(m), opts);
}

// ---- schemas -----------------------------------------------------------------

const std::vector<std::string>& dlca_schema_ids() {
  static const std::vector<std::string> ids = {"K",       "T_eq",       "4_eq",       "5_eq",  "T_le",    "4_le",
                                               "Inc",     "Conn",       "Red_seq",    "Red_union",
                                               "Add1_inter", "Add2_inter", "Conv1",   "Conv2", "Comp1",   "Comp2",
                                               "Red_test", "Most"};
  return ids;
}

const std::vector<std::string>& schema_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v = dlca_schema_ids();
    for (const char* s : {"MostAct", "LeastAct", "SIC", "CWF", "WF", "NegB"}) v.push_back(s);
    return v;
  }();
  return ids;
}

std::vector<Formula> axiom_instances(const std::string& schema, const Model& m, Rng& rng, std::size_t count,
                                     int depth) {
  if (std::find(schema_ids().begin(), schema_ids().end(), schema) == schema_ids().end())
    throw std::invalid_argument("unknown schema '" + schema + "'");
  Signature sig = Signature::of(m);
  FormulaGen fopts;
  fopts.depth = depth;
  std::vector<Formula> out;

  if (schema == "MostAct" || schema == "LeastAct" || schema == "SIC") {
    if (!m.actions) throw std::invalid_argument(schema + " needs a model with actions");
    const auto& act = *m.actions;
    for (const auto& i : m.agents) {
      if (schema == "MostAct") {
        for (const auto& a : act)
          for (const auto& b : act)
            if (a != b) out.push_back(implies(play(i, a), neg(play(i, b))));
      } else if (schema == "LeastAct") {
        std::vector<Formula> parts;
        for (const auto& a : act) parts.push_back(play(i, a));
        out.push_back(disj(parts));
      } else {
        std::vector<std::size_t> digit(m.agents.size(), 0);
        while (true) {
          std::vector<Formula> each, joint;
          for (std::size_t j = 0; j < m.agents.size(); ++j) {
            Formula pj = play(m.agents[j], act[digit[j]]);
            each.push_back(diamond(eq(i), pj));
            joint.push_back(pj);
          }
          out.push_back(implies(conj(each), diamond(eq(i), conj(joint))));
          std::size_t k = digit.size();
          while (k > 0 && ++digit[k - 1] == act.size()) digit[--k] = 0;
          if (k == 0) break;
        }
      }
    }
    return out;
  }

  for (std::size_t n = 0; n < count; ++n) {
    const std::string& i = rng.pick(sig.agents);
    Dim t = rng.chance(1, 2) ? Dim::P : Dim::D;
    Formula phi = gen_formula(rng, sig, fopts);
    Formula psi = gen_formula(rng, sig, fopts);
    Program pi = gen_program(rng, sig, 2, fopts);
    Program pi2 = gen_program(rng, sig, 2, fopts);
    Formula x = nominal(rng.pick(sig.nominals));
    Formula f;
    if (schema == "K") {
      f = implies(conj(box(pi, phi), box(pi, implies(phi, psi))), box(pi, psi));
    } else if (schema == "T_eq") {
      f = implies(box(eq(i), phi), phi);
    } else if (schema == "4_eq") {
      f = implies(box(eq(i), phi), box(eq(i), box(eq(i), phi)));
    } else if (schema == "5_eq") {
      f = implies(neg(box(eq(i), phi)), box(eq(i), neg(box(eq(i), phi))));
    } else if (schema == "T_le") {
      f = implies(box(le(i, t), phi), phi);
    } else if (schema == "4_le") {
      f = implies(box(le(i, t), phi), box(le(i, t), box(le(i, t), phi)));
    } else if (schema == "Inc") {
      f = implies(box(eq(i), phi), box(le(i, t), phi));
    } else if (schema == "Conn") {
      f = implies(conj(diamond(eq(i), phi), diamond(eq(i), psi)),
                  disj(diamond(eq(i), conj(phi, diamond(le(i, t), psi))),
                       diamond(eq(i), conj(psi, diamond(le(i, t), phi)))));
    } else if (schema == "Red_seq") {
      f = iff(box(seq(pi, pi2), phi), box(pi, box(pi2, phi)));
    } else if (schema == "Red_union") {
      f = iff(box(alt(pi, pi2), phi), conj(box(pi, phi), box(pi2, phi)));
    } else if (schema == "Add1_inter") {
      f = implies(conj(box(pi, phi), box(pi2, psi)), box(inter(pi, pi2), conj(phi, psi)));
    } else if (schema == "Add2_inter") {
      f = implies(conj(diamond(pi, x), diamond(pi2, x)), diamond(inter(pi, pi2), x));
    } else if (schema == "Conv1") {
      f = implies(phi, box(pi, diamond(conv(pi), phi)));
    } else if (schema == "Conv2") {
      f = implies(phi, box(conv(pi), diamond(pi, phi)));
    } else if (schema == "Comp1") {
      f = iff(conj(box(le(i, t), phi), box(nle(i, t), phi)), box(eq(i), phi));
    } else if (schema == "Comp2") {
      f = implies(diamond(le(i, t), x), box(nle(i, t), neg(x)));
    } else if (schema == "Red_test") {
      f = implies(box(test(phi), psi), implies(phi, psi));
    } else if (schema == "Most") {
      f = implies(diamond(pi, conj(x, phi)), box(pi2, implies(x, phi)));
    } else if (schema == "CWF") {
      f = implies(diamond(eq(i), psi), diamond(eq(i), conj(psi, box(lt(i, Dim::P), neg(psi)))));
    } else if (schema == "WF") {
      f = implies(diamond(eq(i), psi), diamond(eq(i), conj(psi, box(gt(i, Dim::D), neg(psi)))));
    } else {  // NegB
      f = implies(believes(i, phi), phi);
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace cogmodal
