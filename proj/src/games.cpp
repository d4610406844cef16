#include "cogmodal/games.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace cogmodal {

std::string_view to_string(Mode m) { return m == Mode::Opt ? "opt" : "pess"; }

namespace {

AttitudeKind realistic(Mode mode) {
  return mode == Mode::Opt ? AttitudeKind::RealPrefOpt : AttitudeKind::RealPrefPess;
}

const std::vector<std::string>& actions_of(const Model& m) {
  if (!m.actions) throw EvalError("model declares no actions");
  return *m.actions;
}

void check_agent(const Model& m, const std::string& agent) {
  if (!m.has_agent(agent)) throw EvalError("unknown agent '" + agent + "'");
}

void check_action(const Model& m, const std::string& action) {
  if (!m.has_action(action)) throw EvalError("unknown action '" + action + "'");
}

void check_others(const Model& m, const std::string& agent, const JointAction& others) {
  for (const auto& [j, a] : others) {
    check_agent(m, j);
    check_action(m, a);
    if (j == agent) throw EvalError("the others' joint action must not mention agent '" + agent + "'");
  }
  for (const auto& j : m.agents)
    if (j != agent && !others.count(j)) throw EvalError("no action given for agent '" + j + "'");
}

}  // namespace

Formula play_formula(const JointAction& d) {
  std::vector<Formula> parts;
  for (const auto& [i, a] : d) parts.push_back(play(i, a));
  return conj(parts);
}

Formula best_response_formula(const Model& m, const std::string& agent, const std::string& action,
                              const JointAction& others, Mode mode) {
  check_agent(m, agent);
  check_action(m, action);
  check_others(m, agent, others);
  Formula rest = play_formula(others);
  Formula chosen = conj(play(agent, action), rest);
  std::vector<Formula> parts;
  for (const auto& b : actions_of(m))
    parts.push_back(prefers(realistic(mode), PrefForm::Weak, agent, conj(play(agent, b), rest), chosen));
  return conj(parts);
}

Formula nash_formula(const Model& m, const JointAction& d, Mode mode) {
  std::vector<Formula> parts;
  for (const auto& i : m.agents) {
    auto it = d.find(i);
    if (it == d.end()) throw EvalError("joint action misses agent '" + i + "'");
    JointAction others = d;
    others.erase(i);
    parts.push_back(best_response_formula(m, i, it->second, others, mode));
  }
  if (d.size() != m.agents.size()) throw EvalError("joint action mentions an unknown agent");
  return conj(parts);
}

Formula rationality_formula(const Model& m, const std::string& agent, Mode mode) {
  check_agent(m, agent);
  std::vector<Formula> parts;
  for (const auto& a : actions_of(m)) {
    Formula p = play(agent, a);
    parts.push_back(implies(p, prefers(realistic(mode), PrefForm::Weak, agent, neg(p), p)));
  }
  return conj(parts);
}

bool best_response(Checker& c, std::size_t w, const std::string& agent, const std::string& action,
                   const JointAction& others, Mode mode) {
  return c.eval(w, best_response_formula(c.model(), agent, action, others, mode));
}

bool nash(Checker& c, std::size_t w, const JointAction& d, Mode mode) {
  return c.eval(w, nash_formula(c.model(), d, mode));
}

bool rational(Checker& c, std::size_t w, const std::string& agent, Mode mode) {
  return c.eval(w, rationality_formula(c.model(), agent, mode));
}

std::vector<JointAction> joint_actions(const Model& m, std::size_t budget) {
  const auto& act = actions_of(m);
  std::size_t total = 1;
  for (std::size_t k = 0; k < m.agents.size(); ++k) {
    total *= act.size();
    if (total > budget)
      throw BudgetExceeded("joint action space exceeds the budget of " + std::to_string(budget));
  }
  std::vector<JointAction> out;
  if (act.empty()) return out;
  std::vector<std::size_t> digit(m.agents.size(), 0);
  while (true) {
    JointAction d;
    for (std::size_t k = 0; k < digit.size(); ++k) d[m.agents[k]] = act[digit[k]];
    out.push_back(std::move(d));
    // last agent varies fastest
    std::size_t k = digit.size();
    while (k > 0 && ++digit[k - 1] == act.size()) digit[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

std::vector<JointAction> enumerate_equilibria(Checker& c, std::size_t w, Mode mode, std::size_t budget) {
  std::vector<JointAction> out;
  for (auto& d : joint_actions(c.model(), budget))
    if (nash(c, w, d, mode)) out.push_back(std::move(d));
  return out;
}

std::string format_joint_action(const std::vector<std::string>& agents, const JointAction& d) {
  std::string s = "(";
  bool first = true;
  for (const auto& i : agents) {
    auto it = d.find(i);
    if (it == d.end()) continue;
    if (!first) s += ',';
    s += it->second;
    first = false;
  }
  return s + ")";
}

GameReport game_report(const Model& m, const std::vector<Mode>& modes, const std::string& world,
                       std::size_t budget) {
  Checker c(m);
  GameReport rep;
  rep.agents = m.agents;
  rep.modes = modes;
  auto all = joint_actions(m, budget);

  std::vector<std::size_t> worlds;
  if (world.empty()) {
    for (std::size_t w = 0; w < m.size(); ++w) worlds.push_back(w);
  } else {
    worlds.push_back(m.world_index(world));
  }

  std::map<std::vector<std::size_t>, std::size_t> group_of;
  std::vector<std::size_t> representative;
  for (auto w : worlds) {
    std::vector<std::size_t> key;
    for (const auto& i : m.agents) key.push_back(c.index().agent(i).cell_of[w]);
    auto [it, fresh] = group_of.emplace(key, rep.groups.size());
    if (fresh) {
      rep.groups.emplace_back();
      representative.push_back(w);
    }
    rep.groups[it->second].worlds.push_back(m.worlds[w].id);
  }

  for (std::size_t g = 0; g < rep.groups.size(); ++g) {
    WorldGroup& grp = rep.groups[g];
    std::size_t w0 = representative[g];
    for (Mode mode : modes) {
      auto& eqs = grp.equilibria[mode];
      for (const auto& d : all)
        if (nash(c, w0, d, mode)) eqs.push_back(d);
      for (const auto& id : grp.worlds) {
        std::size_t w = m.world_index(id);
        for (const auto& i : m.agents) grp.rationality[mode][id][i] = rational(c, w, i, mode);
      }
      auto& brs = grp.best_responses[mode];
      for (const auto& i : m.agents) {
        std::vector<JointAction> others_seen;
        for (const auto& d : all) {
          JointAction others = d;
          others.erase(i);
          if (std::find(others_seen.begin(), others_seen.end(), others) != others_seen.end()) continue;
          others_seen.push_back(others);
          for (const auto& a : *m.actions)
            brs.push_back({i, a, others, best_response(c, w0, i, a, others, mode)});
        }
      }
    }
  }
  return rep;
}

bool GameReport::every_world_has_equilibrium() const {
  for (const auto& g : groups)
    for (const auto& [mode, eqs] : g.equilibria)
      if (eqs.empty()) return false;
  return true;
}

nlohmann::ordered_json GameReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json root;
  root["version"] = 1;
  root["agents"] = agents;
  ordered_json jm = ordered_json::array();
  for (Mode m : modes) jm.push_back(std::string(to_string(m)));
  root["modes"] = jm;
  ordered_json jg = ordered_json::array();
  for (const auto& g : groups) {
    ordered_json o;
    o["worlds"] = g.worlds;
    ordered_json eq = ordered_json::object();
    ordered_json rat = ordered_json::object();
    ordered_json br = ordered_json::object();
    for (Mode m : modes) {
      std::string key(to_string(m));
      ordered_json list = ordered_json::array();
      for (const auto& d : g.equilibria.at(m)) list.push_back(d);
      eq[key] = list;
      ordered_json per_world = ordered_json::object();
      for (const auto& [w, flags] : g.rationality.at(m)) per_world[w] = flags;
      rat[key] = per_world;
      ordered_json entries = ordered_json::array();
      for (const auto& e : g.best_responses.at(m))
        entries.push_back({{"agent", e.agent}, {"action", e.action}, {"others", e.others}, {"value", e.value}});
      br[key] = entries;
    }
    o["equilibria"] = eq;
    o["rationality"] = rat;
    o["best_responses"] = br;
    jg.push_back(o);
  }
  root["groups"] = jg;
  return root;
}

std::string GameReport::to_table() const {
  std::ostringstream os;
  for (const auto& g : groups) {
    os << "worlds:";
    for (const auto& w : g.worlds) os << ' ' << w;
    os << '\n';
    for (Mode m : modes) {
      os << "  mode " << to_string(m) << "\n    equilibria:";
      if (g.equilibria.at(m).empty()) os << " none";
      for (const auto& d : g.equilibria.at(m)) os << ' ' << format_joint_action(agents, d);
      os << "\n    rationality\n";
      std::size_t width = 5;
      for (const auto& [w, _] : g.rationality.at(m)) width = std::max(width, w.size());
      os << "      " << std::left << std::setw(static_cast<int>(width)) << "world";
      for (const auto& i : agents) os << "  " << std::setw(6) << i;
      os << '\n';
      for (const auto& [w, flags] : g.rationality.at(m)) {
        os << "      " << std::setw(static_cast<int>(width)) << w;
        for (const auto& i : agents) os << "  " << std::setw(6) << (flags.at(i) ? "yes" : "no");
        os << '\n';
      }
      os << "    best responses\n";
      os << "      " << std::setw(8) << "agent" << std::setw(10) << "action" << std::setw(16) << "others"
         << "value\n";
      for (const auto& e : g.best_responses.at(m)) {
        std::string others;
        for (const auto& [j, a] : e.others) others += (others.empty() ? "" : ",") + j + "=" + a;
        os << "      " << std::setw(8) << e.agent << std::setw(10) << e.action << std::setw(16)
           << (others.empty() ? "-" : others) << (e.value ? "yes" : "no") << '\n';
      }
    }
  }
  return os.str();
}

}  // namespace cogmodal
