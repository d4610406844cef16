#include "cogmodal/dynamics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>
#include <utility>

#include "cogmodal/expand.hpp"

namespace cogmodal {

namespace {

using RankKey = std::pair<int, std::int64_t>;

// Renumbers one agent's ranks cell by cell according to `key`, densely from 0.
TransformResult rerank(const Model& m, const std::string& agent, Dim dim,
                       const std::function<RankKey(std::size_t, const WorldSet& cell)>& key) {
  ModelIndex idx = index_model(m);
  const AgentIndex& a = idx.agent(agent);
  const auto& rank = a.ranks(dim);
  TransformResult out{m, agent, dim, {}};
  for (const auto& cell : a.cells) {
    auto members = cell.members();
    std::vector<RankKey> keys;
    for (auto w : members) keys.push_back(key(w, cell));
    std::vector<RankKey> order = keys;
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());
    CellLog log;
    log.cell = m.worlds[members.front()].agents.at(agent).cell;
    for (std::size_t k = 0; k < members.size(); ++k) {
      auto w = members[k];
      auto r = static_cast<std::int64_t>(std::lower_bound(order.begin(), order.end(), keys[k]) - order.begin());
      AgentState& st = out.model.worlds[w].agents.at(agent);
      (dim == Dim::P ? st.rank_p : st.rank_d) = r;
      log.changes.push_back({m.worlds[w].id, rank[w], r});
    }
    out.normalization_log.push_back(std::move(log));
  }
  return out;
}

WorldSet static_truth_set(const Model& m, const Formula& f) {
  if (contains_dynamic(f)) throw std::invalid_argument("revision input must be static; reduce it first");
  return Checker(m).truth_set(f);
}

}  // namespace

TransformResult radical_revise(const Model& m, const std::string& agent, Dim dim, const WorldSet& input) {
  ModelIndex idx = index_model(m);
  const auto rank = idx.agent(agent).ranks(dim);
  return rerank(m, agent, dim, [&](std::size_t w, const WorldSet&) {
    return RankKey{input.test(w) ? 1 : 0, rank[w]};
  });
}

TransformResult conservative_revise(const Model& m, const std::string& agent, Dim dim, const WorldSet& input) {
  ModelIndex idx = index_model(m);
  const AgentIndex& a = idx.agent(agent);
  const auto rank = a.ranks(dim);
  std::vector<char> moved(m.size(), 0);
  for (const auto& cell : a.cells) {
    // P: the most plausible input-worlds go to the top.
    // D: the least desirable non-input worlds go to the bottom.
    WorldSet s = dim == Dim::P ? max_rank(cell & input, rank) : min_rank(cell - input, rank);
    for (auto w : s.members()) moved[w] = 1;
  }
  if (dim == Dim::P)
    return rerank(m, agent, dim, [&](std::size_t w, const WorldSet&) {
      return moved[w] ? RankKey{1, 0} : RankKey{0, rank[w]};
    });
  return rerank(m, agent, dim, [&](std::size_t w, const WorldSet&) {
    return moved[w] ? RankKey{0, 0} : RankKey{1, rank[w]};
  });
}

TransformResult radical_revise(const Model& m, const std::string& agent, Dim dim, const Formula& f) {
  return radical_revise(m, agent, dim, static_truth_set(m, f));
}

TransformResult conservative_revise(const Model& m, const std::string& agent, Dim dim, const Formula& f) {
  return conservative_revise(m, agent, dim, static_truth_set(m, f));
}

TransformResult revise(const Model& m, const RevisionOp& op, const WorldSet& input) {
  return op.flavor == Flavor::Radical ? radical_revise(m, op.agent, op.dim, input)
                                      : conservative_revise(m, op.agent, op.dim, input);
}

TransformResult revise(const Model& m, const RevisionOp& op) {
  return revise(m, op, truth_set_dynamic(m, op.input));
}

DynamicHandler semantic_dynamics() {
  return [](Checker& c, const Formula& f) {
    RevisionOp op = f.revision();
    WorldSet input = c.truth_set(op.input);
    TransformResult r = revise(c.model(), op, input);
    Checker after(r.model, c.dynamics());
    return after.truth_set(f.arg(1));
  };
}

WorldSet truth_set_dynamic(const Model& m, const Formula& f) {
  Checker c(m, semantic_dynamics());
  return c.truth_set(f);
}

bool eval_dynamic(const Model& m, std::string_view world, const Formula& f) {
  return truth_set_dynamic(m, f).test(m.world_index(world));
}

// ---- reduction ------------------------------------------------------------

namespace {

using TestMap = std::function<Formula(const Formula&)>;

Program three_way(const Program& base, const Program& eqi, const Formula& in, const Formula& out,
                  bool cross_up) {
  Program t_in = test(in);
  Program t_out = test(out);
  Program cross = cross_up ? seq({t_out, eqi, t_in}) : seq({t_in, eqi, t_out});
  return alt({seq({t_in, base, t_in}), seq({t_out, base, t_out}), cross});
}

Program transform(const RevisionOp& op, const Program& p, const TestMap& on_test) {
  switch (p.kind()) {
    case ProgramKind::Eq:
      return p;
    case ProgramKind::Le:
    case ProgramKind::Nle: {
      if (p.agent() != op.agent || p.dim() != op.dim) return p;
      const std::string& i = op.agent;
      const Formula& phi = op.input;
      bool is_le = p.kind() == ProgramKind::Le;
      if (op.flavor == Flavor::Radical || op.dim == Dim::P) {
        // Guard T marks the worlds that move to the upper tier.
        Formula t = op.flavor == Flavor::Radical ? phi : conj(phi, box(lt(i, Dim::P), neg(phi)));
        return three_way(p, eq(i), t, neg(t), is_le);
      }
      // Guard W marks the worlds that move to the bottom.
      Formula w = conj(neg(phi), box(gt(i, Dim::D), phi));
      return three_way(p, eq(i), w, neg(w), !is_le);
    }
    case ProgramKind::Seq:
      return seq(transform(op, p.arg(0), on_test), transform(op, p.arg(1), on_test));
    case ProgramKind::Union:
      return alt(transform(op, p.arg(0), on_test), transform(op, p.arg(1), on_test));
    case ProgramKind::Inter:
      return inter(transform(op, p.arg(0), on_test), transform(op, p.arg(1), on_test));
    case ProgramKind::Conv:
      return conv(transform(op, p.arg(0), on_test));
    case ProgramKind::Test:
      return test(on_test(p.test()));
  }
  throw std::logic_error("unreachable");
}

class Reducer {
 public:
  Reducer(const ReduceOptions& opts, ReduceStats* stats) : opts_(opts), stats_(stats) {}
  ~Reducer() {
    if (stats_) stats_->steps = steps_;
  }

  Formula reduce(const Formula& f) {
    tick();
    switch (f.kind()) {
      case FormulaKind::True:
      case FormulaKind::False:
      case FormulaKind::Atom:
      case FormulaKind::Nominal:
      case FormulaKind::Play:
        return f;
      case FormulaKind::Not:
        return neg(reduce(f.arg(0)));
      case FormulaKind::And:
        return conj(reduce(f.arg(0)), reduce(f.arg(1)));
      case FormulaKind::Or:
        return disj(reduce(f.arg(0)), reduce(f.arg(1)));
      case FormulaKind::Implies:
        return implies(reduce(f.arg(0)), reduce(f.arg(1)));
      case FormulaKind::Iff:
        return iff(reduce(f.arg(0)), reduce(f.arg(1)));
      case FormulaKind::Box:
        return box(reduce(f.program()), reduce(f.arg(0)));
      case FormulaKind::Diamond:
        return diamond(reduce(f.program()), reduce(f.arg(0)));
      case FormulaKind::Attitude: {
        if (!contains_dynamic(f)) return f;
        FormulaNode n = *f.node();
        for (auto& a : n.args) a = reduce(a);
        return Formula::make(std::move(n));
      }
      case FormulaKind::Dynamic: {
        RevisionOp op = f.revision();
        op.input = reduce(op.input);
        Formula body = reduce(f.arg(1));
        return push(op, body);
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  void tick() {
    if (++steps_ > opts_.budget) throw ReduceBudgetExceeded("reduction exceeded its step budget");
  }

  Program reduce(const Program& p) {
    if (!contains_dynamic(p)) return p;
    switch (p.kind()) {
      case ProgramKind::Seq: return seq(reduce(p.arg(0)), reduce(p.arg(1)));
      case ProgramKind::Union: return alt(reduce(p.arg(0)), reduce(p.arg(1)));
      case ProgramKind::Inter: return inter(reduce(p.arg(0)), reduce(p.arg(1)));
      case ProgramKind::Conv: return conv(reduce(p.arg(0)));
      case ProgramKind::Test: return test(reduce(p.test()));
      default: return p;
    }
  }

  // [op]g for a static g.
  Formula push(const RevisionOp& op, const Formula& g) {
    Formula key = dyn(op, g);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    tick();
    Formula out = push_uncached(op, g);
    memo_.emplace(std::move(key), out);
    return out;
  }

  Formula push_uncached(const RevisionOp& op, const Formula& g) {
    auto under = [&](const Formula& x) { return push(op, x); };
    switch (g.kind()) {
      case FormulaKind::True:
      case FormulaKind::False:
      case FormulaKind::Atom:
      case FormulaKind::Nominal:
      case FormulaKind::Play:
        return g;
      case FormulaKind::Not:
        return neg(under(g.arg(0)));
      case FormulaKind::And:
        return conj(under(g.arg(0)), under(g.arg(1)));
      case FormulaKind::Or:
        return disj(under(g.arg(0)), under(g.arg(1)));
      case FormulaKind::Implies:
        return implies(under(g.arg(0)), under(g.arg(1)));
      case FormulaKind::Iff:
        return iff(under(g.arg(0)), under(g.arg(1)));
      case FormulaKind::Box:
        return box(transform(op, g.program(), under), under(g.arg(0)));
      case FormulaKind::Diamond:
        return diamond(transform(op, g.program(), under), under(g.arg(0)));
      case FormulaKind::Attitude:
        return under(expand_attitude_once(g));
      case FormulaKind::Dynamic:
        break;
    }
    throw std::logic_error("push: body still contains a revision operator");
  }

  ReduceOptions opts_;
  ReduceStats* stats_;
  std::size_t steps_ = 0;
  std::unordered_map<Formula, Formula, FormulaHash> memo_;
};

}  // namespace

Program f_transform(const RevisionOp& op, const Program& p) {
  return transform(op, p, [&](const Formula& psi) { return dyn(op, psi); });
}

Formula reduce(const Formula& f, const ReduceOptions& opts, ReduceStats* stats) {
  Reducer r(opts, stats);
  return r.reduce(f);
}

}  // namespace cogmodal
