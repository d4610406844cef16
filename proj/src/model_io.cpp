#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "cogmodal/model.hpp"

namespace cogmodal {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_strict(std::string_view text) {
  // Track keys per open object so duplicates are rejected instead of
  // silently overwritten.
  std::vector<std::set<std::string>> open;
  auto cb = [&](int, json::parse_event_t ev, json& parsed) {
    switch (ev) {
      case json::parse_event_t::object_start:
        open.emplace_back();
        break;
      case json::parse_event_t::object_end:
        open.pop_back();
        break;
      case json::parse_event_t::key: {
        const auto& k = parsed.get_ref<const std::string&>();
        if (!open.back().insert(k).second) throw ModelError("duplicate key '" + k + "'");
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), cb);
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
}

std::string get_string(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  throw ModelError(std::string(what) + " must be a string");
}

std::vector<std::string> string_list(const json& obj, const char* key, bool required) {
  std::vector<std::string> out;
  if (!obj.contains(key)) {
    if (required) throw ModelError(std::string("missing field '") + key + "'");
    return out;
  }
  const json& arr = obj.at(key);
  if (!arr.is_array()) throw ModelError(std::string("'") + key + "' must be an array");
  for (const auto& e : arr) out.push_back(get_string(e, key));
  return out;
}

std::int64_t get_rank(const json& st, const char* key, const std::string& where) {
  if (!st.contains(key)) return 0;
  const json& v = st.at(key);
  if (!v.is_number_integer()) throw ModelError(where + ": " + key + " must be an integer");
  auto r = v.get<std::int64_t>();
  if (r < 0) throw ModelError(where + ": " + key + " is negative");
  return r;
}

std::string strip_sigil(std::string s) {
  if (!s.empty() && s.front() == '@') s.erase(0, 1);
  return s;
}

}  // namespace

Model parse_model_json(std::string_view text) {
  json root = parse_strict(text);
  if (!root.is_object()) throw ModelError("model file must contain a JSON object");
  Model m;
  if (root.contains("version")) {
    if (!root["version"].is_number_integer() || root["version"].get<int>() != 1)
      throw ModelError("unsupported model version");
  }
  m.agents = string_list(root, "agents", true);
  if (std::set<std::string>(m.agents.begin(), m.agents.end()).size() != m.agents.size())
    throw ModelError("duplicate agent ids");
  m.atoms = string_list(root, "atoms", false);
  if (root.contains("actions")) m.actions = string_list(root, "actions", true);
  if (!root.contains("worlds") || !root["worlds"].is_array()) throw ModelError("missing 'worlds' array");

  std::set<std::string> ids;
  for (const auto& jw : root["worlds"]) {
    if (!jw.is_object()) throw ModelError("world entries must be objects");
    WorldRecord w;
    if (!jw.contains("id")) throw ModelError("world without id");
    w.id = get_string(jw["id"], "world id");
    if (!ids.insert(w.id).second) throw ModelError("duplicate world id '" + w.id + "'");
    for (auto& x : string_list(jw, "nominals", false)) w.nominals.push_back(strip_sigil(x));
    if (w.nominals.empty()) w.nominals.push_back(w.id);
    for (auto& p : string_list(jw, "atoms", false)) w.atoms.insert(p);
    if (!jw.contains("agents") || !jw["agents"].is_object())
      throw ModelError("world '" + w.id + "' needs an 'agents' object");
    for (const auto& [agent, st] : jw["agents"].items()) {
      if (!st.is_object()) throw ModelError("world '" + w.id + "': agent record must be an object");
      std::string where = "world '" + w.id + "', agent '" + agent + "'";
      AgentState s;
      if (!st.contains("cell")) throw ModelError(where + ": missing cell");
      s.cell = get_string(st["cell"], "cell");
      s.rank_p = get_rank(st, "rank_p", where);
      s.rank_d = get_rank(st, "rank_d", where);
      if (st.contains("choice")) s.choice = get_string(st["choice"], "choice");
      w.agents.emplace(agent, std::move(s));
    }
    for (const auto& i : m.agents)
      if (!w.agents.count(i)) throw ModelError("world '" + w.id + "' has no record for agent '" + i + "'");
    m.worlds.push_back(std::move(w));
  }
  if (m.worlds.empty()) throw ModelError("model has no worlds");
  return m;
}

std::string dump_model_json(const Model& m) {
  ordered_json root;
  root["version"] = m.version;
  root["agents"] = m.agents;
  root["atoms"] = m.atoms;
  if (m.actions) root["actions"] = *m.actions;
  ordered_json worlds = ordered_json::array();
  for (const auto& w : m.worlds) {
    ordered_json jw;
    jw["id"] = w.id;
    ordered_json noms = ordered_json::array();
    for (const auto& x : w.nominals) noms.push_back("@" + x);
    jw["nominals"] = noms;
    jw["atoms"] = ordered_json(std::vector<std::string>(w.atoms.begin(), w.atoms.end()));
    ordered_json ja = ordered_json::object();
    for (const auto& i : m.agents) {
      auto it = w.agents.find(i);
      if (it == w.agents.end()) continue;
      ordered_json st;
      st["cell"] = it->second.cell;
      st["rank_p"] = it->second.rank_p;
      st["rank_d"] = it->second.rank_d;
      if (it->second.choice) st["choice"] = *it->second.choice;
      ja[i] = st;
    }
    jw["agents"] = ja;
    worlds.push_back(jw);
  }
  root["worlds"] = worlds;
  return root.dump(2) + "\n";
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_model_json(ss.str());
  } catch (const ModelError& e) {
    throw ModelError(path.string() + ": " + e.what());
  }
}

void save_model(const Model& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write model file '" + path.string() + "'");
  out << dump_model_json(m);
}

}  // namespace cogmodal
