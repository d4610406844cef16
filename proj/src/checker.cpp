#include "cogmodal/checker.hpp"

#include <algorithm>
#include <limits>

namespace cogmodal {

namespace {

std::optional<std::int64_t> extreme(const WorldSet& s, const std::vector<std::int64_t>& rank, bool want_max) {
  std::optional<std::int64_t> best;
  for (auto w : s.members())
    if (!best || (want_max ? rank[w] > *best : rank[w] < *best)) best = rank[w];
  return best;
}

WorldSet at_rank(const WorldSet& s, const std::vector<std::int64_t>& rank, std::optional<std::int64_t> r) {
  WorldSet out(s.universe());
  if (!r) return out;
  for (auto w : s.members())
    if (rank[w] == *r) out.set(w);
  return out;
}

// Every world of `upper` strictly above every world of `lower`.
bool strictly_above(const WorldSet& upper, const WorldSet& lower, const std::vector<std::int64_t>& rank) {
  auto lo = extreme(upper, rank, false);
  auto hi = extreme(lower, rank, true);
  return !lo || !hi || *hi < *lo;
}

}  // namespace

WorldSet max_rank(const WorldSet& s, const std::vector<std::int64_t>& rank) {
  return at_rank(s, rank, extreme(s, rank, true));
}

WorldSet min_rank(const WorldSet& s, const std::vector<std::int64_t>& rank) {
  return at_rank(s, rank, extreme(s, rank, false));
}

Checker::Checker(const Model& m, DynamicHandler dynamics)
    : m_(m), idx_(index_model(m)), dynamics_(std::move(dynamics)) {}

const PairSet& Checker::rel(const Program& p) {
  auto it = program_memo_.find(p);
  if (it != program_memo_.end()) return it->second;
  PairSet r = compute(p);
  return program_memo_.emplace(p, std::move(r)).first->second;
}

const WorldSet& Checker::truth_set(const Formula& f) {
  auto it = formula_memo_.find(f);
  if (it != formula_memo_.end()) return it->second;
  WorldSet s = compute(f);
  return formula_memo_.emplace(f, std::move(s)).first->second;
}

PairSet Checker::compute(const Program& p) {
  switch (p.kind()) {
    case ProgramKind::Eq:
    case ProgramKind::Le:
    case ProgramKind::Nle:
      return atomic_rel(idx_, p);
    case ProgramKind::Seq: {
      const PairSet& a = rel(p.arg(0));
      return a.compose(rel(p.arg(1)));
    }
    case ProgramKind::Union: {
      PairSet a = rel(p.arg(0));
      return a |= rel(p.arg(1));
    }
    case ProgramKind::Inter: {
      PairSet a = rel(p.arg(0));
      return a &= rel(p.arg(1));
    }
    case ProgramKind::Conv:
      return rel(p.arg(0)).transpose();
    case ProgramKind::Test:
      return PairSet::identity_on(truth_set(p.test()));
  }
  throw std::logic_error("unreachable");
}

WorldSet Checker::compute(const Formula& f) {
  const std::size_t n = size();
  auto lookup = [n](const std::map<std::string, WorldSet>& table, const std::string& key) {
    auto it = table.find(key);
    return it == table.end() ? WorldSet(n) : it->second;
  };
  switch (f.kind()) {
    case FormulaKind::True:
      return WorldSet::full(n);
    case FormulaKind::False:
      return WorldSet(n);
    case FormulaKind::Atom:
      return lookup(idx_.atom_sets, f.name());
    case FormulaKind::Nominal:
      return lookup(idx_.nominal_sets, f.name());
    case FormulaKind::Play: {
      idx_.agent(f.agent());
      if (!m_.actions) throw EvalError("play(" + f.agent() + "," + f.name() + ") needs a model with actions");
      if (!m_.has_action(f.name())) throw EvalError("unknown action '" + f.name() + "'");
      auto it = idx_.play_sets.find({f.agent(), f.name()});
      return it == idx_.play_sets.end() ? WorldSet(n) : it->second;
    }
    case FormulaKind::Not:
      return truth_set(f.arg(0)).complement();
    case FormulaKind::And: {
      WorldSet a = truth_set(f.arg(0));
      return a &= truth_set(f.arg(1));
    }
    case FormulaKind::Or: {
      WorldSet a = truth_set(f.arg(0));
      return a |= truth_set(f.arg(1));
    }
    case FormulaKind::Implies: {
      WorldSet a = truth_set(f.arg(0)).complement();
      return a |= truth_set(f.arg(1));
    }
    case FormulaKind::Iff: {
      const WorldSet& a = truth_set(f.arg(0));
      const WorldSet& b = truth_set(f.arg(1));
      return (a & b) | (a.complement() & b.complement());
    }
    case FormulaKind::Box: {
      const PairSet& r = rel(f.program());
      return r.box(truth_set(f.arg(0)));
    }
    case FormulaKind::Diamond: {
      const PairSet& r = rel(f.program());
      return r.preimage(truth_set(f.arg(0)));
    }
    case FormulaKind::Attitude:
      return attitude_set(f);
    case FormulaKind::Dynamic:
      if (!dynamics_) throw EvalError("revision operators need a dynamics handler");
      return dynamics_(*this, f);
  }
  throw std::logic_error("unreachable");
}

WorldSet Checker::attitude_set(const Formula& f) {
  const AgentIndex& a = idx_.agent(f.agent());
  WorldSet out(size());
  for (const auto& c : a.cells)
    if (attitude_on_cell(f, a, c)) out |= c;
  return out;
}

bool Checker::weak_pref_on(AttitudeKind kind, const AgentIndex& a, const WorldSet& cell, const WorldSet& psi,
                           const WorldSet& phi) const {
  WorldSet dom = is_realistic(kind) ? max_rank(cell, a.rank_p) : cell;
  WorldSet sp = psi & dom;
  WorldSet sf = phi & dom;
  if (is_optimistic(kind)) {
    // every psi-world is matched by some phi-world at least as desirable
    auto hp = extreme(sp, a.rank_d, true);
    auto hf = extreme(sf, a.rank_d, true);
    return !hp || (hf && *hp <= *hf);
  }
  // every phi-world is matched by some psi-world at most as desirable
  auto lp = extreme(sp, a.rank_d, false);
  auto lf = extreme(sf, a.rank_d, false);
  return !lf || (lp && *lp <= *lf);
}

bool Checker::attitude_on_cell(const Formula& f, const AgentIndex& a, const WorldSet& cell) {
  switch (f.attitude()) {
    case AttitudeKind::Belief:
      return max_rank(cell, a.rank_p).subset_of(truth_set(f.arg(0)));
    case AttitudeKind::StrongBelief: {
      const WorldSet& t = truth_set(f.arg(0));
      return strictly_above(cell & t, cell - t, a.rank_p);
    }
    case AttitudeKind::CondBelief:
      return max_rank(cell & truth_set(f.arg(0)), a.rank_p).subset_of(truth_set(f.arg(1)));
    case AttitudeKind::Desire:
      return !min_rank(cell, a.rank_d).intersects(truth_set(f.arg(0)));
    case AttitudeKind::StrongDesire: {
      const WorldSet& t = truth_set(f.arg(0));
      return strictly_above(cell & t, cell - t, a.rank_d);
    }
    case AttitudeKind::CondDesire:
      return !min_rank(cell - truth_set(f.arg(0)), a.rank_d).intersects(truth_set(f.arg(1)));
    default:
      break;
  }
  switch (f.pref_form()) {
    case PrefForm::Weak:
      return weak_pref_on(f.attitude(), a, cell, truth_set(f.arg(0)), truth_set(f.arg(1)));
    case PrefForm::Strict:
      return !weak_pref_on(f.attitude(), a, cell, truth_set(f.arg(1)), truth_set(f.arg(0)));
    case PrefForm::Monadic: {
      const WorldSet& t = truth_set(f.arg(0));
      return !weak_pref_on(f.attitude(), a, cell, t, t.complement());
    }
  }
  throw std::logic_error("unreachable");
}

const WorldSet& Checker::cell(std::string_view agent, std::size_t w) const {
  const AgentIndex& a = idx_.agent(agent);
  return a.cells[a.cell_of.at(w)];
}

WorldSet Checker::truth_set_agent(std::string_view agent, std::size_t w, const Formula& f) {
  return cell(agent, w) & truth_set(f);
}

WorldSet Checker::best_p(std::string_view agent, std::size_t w, const std::optional<Formula>& cond) {
  WorldSet dom = cond ? truth_set_agent(agent, w, *cond) : cell(agent, w);
  return max_rank(dom, idx_.agent(agent).rank_p);
}

WorldSet Checker::best_d(std::string_view agent, std::size_t w) {
  return max_rank(cell(agent, w), idx_.agent(agent).rank_d);
}

WorldSet Checker::worst_d(std::string_view agent, std::size_t w, const std::optional<Formula>& cond) {
  WorldSet dom = cond ? truth_set_agent(agent, w, *cond) : cell(agent, w);
  return min_rank(dom, idx_.agent(agent).rank_d);
}

bool Checker::believes(std::string_view agent, std::size_t w, const Formula& phi) {
  return best_p(agent, w).subset_of(truth_set(phi));
}

bool Checker::strongly_believes(std::string_view agent, std::size_t w, const Formula& phi) {
  const WorldSet& c = cell(agent, w);
  const WorldSet& t = truth_set(phi);
  return strictly_above(c & t, c - t, idx_.agent(agent).rank_p);
}

bool Checker::cond_believes(std::string_view agent, std::size_t w, const Formula& psi, const Formula& phi) {
  return best_p(agent, w, psi).subset_of(truth_set(phi));
}

bool Checker::desires(std::string_view agent, std::size_t w, const Formula& phi) {
  return !worst_d(agent, w).intersects(truth_set(phi));
}

bool Checker::strongly_desires(std::string_view agent, std::size_t w, const Formula& phi) {
  const WorldSet& c = cell(agent, w);
  const WorldSet& t = truth_set(phi);
  return strictly_above(c & t, c - t, idx_.agent(agent).rank_d);
}

bool Checker::cond_desires(std::string_view agent, std::size_t w, const Formula& psi, const Formula& phi) {
  return !worst_d(agent, w, neg(psi)).intersects(truth_set(phi));
}

bool Checker::pref(AttitudeKind kind, PrefForm form, std::string_view agent, std::size_t w, const Formula& psi,
                   const Formula& phi) {
  if (!is_preference(kind)) throw std::invalid_argument("pref: not a preference kind");
  const AgentIndex& a = idx_.agent(agent);
  const WorldSet& c = cell(agent, w);
  switch (form) {
    case PrefForm::Weak:
      return weak_pref_on(kind, a, c, truth_set(psi), truth_set(phi));
    case PrefForm::Strict:
      return !weak_pref_on(kind, a, c, truth_set(phi), truth_set(psi));
    case PrefForm::Monadic: {
      const WorldSet& t = truth_set(phi);
      return !weak_pref_on(kind, a, c, t, t.complement());
    }
  }
  return false;
}

bool Checker::check_wt(std::string_view agent) {
  const AgentIndex& a = idx_.agent(agent);
  for (const auto& c : a.cells) {
    WorldSet bp = max_rank(c, a.rank_p);
    if (!bp.subset_of(max_rank(c, a.rank_d)) && !bp.subset_of(min_rank(c, a.rank_d))) return false;
  }
  return true;
}

bool eval(const Model& m, std::string_view world, const Formula& f) { return Checker(m).eval(world, f); }

WorldSet truth_set(const Model& m, const Formula& f) { return Checker(m).truth_set(f); }

bool valid_on(const Model& m, const Formula& f) { return Checker(m).valid(f); }

bool check_wt(const Model& m, std::string_view agent) { return Checker(m).check_wt(agent); }

PairSet rel(const Model& m, const Program& p) { return Checker(m).rel(p); }

std::vector<std::string> world_ids(const Model& m, const WorldSet& s) {
  std::vector<std::string> out;
  for (auto w : s.members()) out.push_back(m.worlds[w].id);
  return out;
}

}  // namespace cogmodal
