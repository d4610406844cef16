#include "cogmodal/model.hpp"

#include <algorithm>
#include <set>

namespace cogmodal {

std::size_t Model::world_index(std::string_view id) const {
  for (std::size_t i = 0; i < worlds.size(); ++i)
    if (worlds[i].id == id) return i;
  throw std::out_of_range("unknown world '" + std::string(id) + "'");
}

bool Model::has_agent(std::string_view agent) const {
  return std::find(agents.begin(), agents.end(), agent) != agents.end();
}

bool Model::has_action(std::string_view action) const {
  return actions && std::find(actions->begin(), actions->end(), action) != actions->end();
}

bool ValidationReport::violates(std::string_view constraint) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.constraint == constraint; });
}

namespace {

void check_choices(const Model& m, ValidationReport& r) {
  const auto& act = *m.actions;
  for (const auto& w : m.worlds) {
    for (const auto& [agent, st] : w.agents) {
      if (!m.has_agent(agent)) continue;
      if (!st.choice)
        r.violations.push_back({"choice-totality", w.id, agent, "no action assigned"});
      else if (std::find(act.begin(), act.end(), *st.choice) == act.end())
        r.violations.push_back({"action", w.id, agent, "undeclared action '" + *st.choice + "'"});
    }
  }

  // C5: per cell of each agent, every combination of individually played
  // actions must be played jointly somewhere in the cell.
  for (const auto& i : m.agents) {
    std::map<std::string, std::vector<std::size_t>> cells;
    for (std::size_t w = 0; w < m.worlds.size(); ++w) {
      auto it = m.worlds[w].agents.find(i);
      if (it != m.worlds[w].agents.end()) cells[it->second.cell].push_back(w);
    }
    for (const auto& [cell, members] : cells) {
      std::vector<std::set<std::string>> played(m.agents.size());
      std::set<std::vector<std::string>> joint;
      for (auto w : members) {
        std::vector<std::string> delta;
        for (std::size_t j = 0; j < m.agents.size(); ++j) {
          auto it = m.worlds[w].agents.find(m.agents[j]);
          if (it == m.worlds[w].agents.end() || !it->second.choice) break;
          delta.push_back(*it->second.choice);
        }
        if (delta.size() != m.agents.size()) continue;
        for (std::size_t j = 0; j < delta.size(); ++j) played[j].insert(delta[j]);
        joint.insert(std::move(delta));
      }
      std::size_t expected = 1;
      for (const auto& s : played) expected *= s.size();
      if (joint.size() == expected) continue;
      // Report the first missing combination.
      std::vector<std::vector<std::string>> lists;
      for (const auto& s : played) lists.emplace_back(s.begin(), s.end());
      std::vector<std::size_t> digit(lists.size(), 0);
      std::string missing;
      while (true) {
        std::vector<std::string> delta;
        for (std::size_t j = 0; j < lists.size(); ++j) delta.push_back(lists[j][digit[j]]);
        if (!joint.count(delta)) {
          missing = "(";
          for (std::size_t j = 0; j < delta.size(); ++j) missing += (j ? "," : "") + delta[j];
          missing += ")";
          break;
        }
        std::size_t k = 0;
        while (k < digit.size() && ++digit[k] == lists[k].size()) digit[k++] = 0;
        if (k == digit.size()) break;
      }
      r.violations.push_back({"C5", m.worlds[members.front()].id, i,
                              "cell '" + cell + "' never plays joint action " + missing});
    }
  }
}

}  // namespace

ValidationReport validate_model(const Model& m) {
  ValidationReport r;
  if (m.worlds.empty()) r.violations.push_back({"worlds", "", "", "model has no worlds"});

  std::set<std::string> ids;
  std::map<std::string, std::string> nominal_owner;
  std::set<std::string> atoms(m.atoms.begin(), m.atoms.end());
  for (const auto& w : m.worlds) {
    if (!ids.insert(w.id).second) r.violations.push_back({"world-id", w.id, "", "duplicate world id"});
    if (w.nominals.empty()) r.violations.push_back({"C3", w.id, "", "world has no nominal"});
    for (const auto& x : w.nominals) {
      auto [it, fresh] = nominal_owner.emplace(x, w.id);
      if (!fresh && it->second != w.id)
        r.violations.push_back({"C4", w.id, "", "nominal @" + x + " also names world " + it->second});
    }
    for (const auto& p : w.atoms)
      if (!atoms.count(p)) r.violations.push_back({"atom", w.id, "", "undeclared atom '" + p + "'"});
    for (const auto& i : m.agents) {
      auto it = w.agents.find(i);
      if (it == w.agents.end()) {
        r.violations.push_back({"agent-record", w.id, i, "missing agent record"});
        continue;
      }
      if (it->second.rank_p < 0 || it->second.rank_d < 0)
        r.violations.push_back({"rank", w.id, i, "negative rank"});
    }
    for (const auto& [agent, st] : w.agents) {
      if (!m.has_agent(agent)) r.violations.push_back({"agent-record", w.id, agent, "undeclared agent"});
      if (!m.actions && st.choice)
        r.violations.push_back({"action", w.id, agent, "choice given but no actions declared"});
    }
  }
  if (m.actions) check_choices(m, r);
  return r;
}

const AgentIndex& ModelIndex::agent(std::string_view id) const {
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (agents[i] == id) return per_agent[i];
  throw ModelError("unknown agent '" + std::string(id) + "'");
}

ModelIndex index_model(const Model& m) {
  const std::size_t n = m.worlds.size();
  ModelIndex idx;
  idx.agents = m.agents;
  for (const auto& i : m.agents) {
    AgentIndex a;
    a.cell_of.resize(n);
    a.rank_p.resize(n);
    a.rank_d.resize(n);
    std::map<std::string, std::size_t> numbering;
    for (std::size_t w = 0; w < n; ++w) {
      auto it = m.worlds[w].agents.find(i);
      if (it == m.worlds[w].agents.end())
        throw ModelError("world '" + m.worlds[w].id + "' has no record for agent '" + i + "'");
      auto [pos, fresh] = numbering.emplace(it->second.cell, a.cells.size());
      if (fresh) a.cells.emplace_back(n);
      a.cell_of[w] = pos->second;
      a.cells[pos->second].set(w);
      a.rank_p[w] = it->second.rank_p;
      a.rank_d[w] = it->second.rank_d;
      if (it->second.choice) {
        auto key = std::make_pair(i, *it->second.choice);
        auto [ps, _] = idx.play_sets.try_emplace(key, n);
        ps->second.set(w);
      }
    }
    idx.per_agent.push_back(std::move(a));
  }
  for (std::size_t w = 0; w < n; ++w) {
    for (const auto& p : m.worlds[w].atoms) idx.atom_sets.try_emplace(p, n).first->second.set(w);
    for (const auto& x : m.worlds[w].nominals) idx.nominal_sets.try_emplace(x, n).first->second.set(w);
  }
  return idx;
}

PairSet atomic_rel(const ModelIndex& idx, const Program& p) {
  if (!p.is_atomic()) throw std::invalid_argument("atomic_rel: compound program");
  const AgentIndex& a = idx.agent(p.agent());
  const std::size_t n = a.cell_of.size();
  PairSet r(n);
  for (const auto& cell : a.cells) {
    auto members = cell.members();
    if (p.kind() == ProgramKind::Eq) {
      for (auto w : members) r.row(w) = cell;
      continue;
    }
    const auto& rank = a.ranks(p.dim());
    bool le_kind = p.kind() == ProgramKind::Le;
    for (auto w : members)
      for (auto v : members)
        if ((rank[w] <= rank[v]) == le_kind) r.insert(w, v);
  }
  return r;
}

PairSet atomic_rel(const Model& m, const Program& p) { return atomic_rel(index_model(m), p); }

}  // namespace cogmodal
