#pragma once

// Finite multi-agent cognitive models. Each world stores, per agent, the label
// of the agent's information cell and two ranks; w is at most as plausible
// (desirable) as v for agent i iff both share i's cell and the P (D) rank of
// w is not greater than that of v.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cogmodal/sets.hpp"
#include "cogmodal/syntax.hpp"

namespace cogmodal {

struct AgentState {
  std::string cell;
  std::int64_t rank_p = 0;
  std::int64_t rank_d = 0;
  std::optional<std::string> choice;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct WorldRecord {
  std::string id;
  // Stored without the '@' sigil.
  std::vector<std::string> nominals;
  std::set<std::string> atoms;
  std::map<std::string, AgentState> agents;

  friend bool operator==(const WorldRecord&, const WorldRecord&) = default;
};

struct Model {
  int version = 1;
  std::vector<std::string> agents;
  std::vector<std::string> atoms;
  std::optional<std::vector<std::string>> actions;
  std::vector<WorldRecord> worlds;

  std::size_t size() const { return worlds.size(); }
  // Throws std::out_of_range for unknown ids.
  std::size_t world_index(std::string_view id) const;
  bool has_agent(std::string_view agent) const;
  bool has_action(std::string_view action) const;

  friend bool operator==(const Model&, const Model&) = default;
};

struct Violation {
  std::string constraint;
  std::string world;
  std::string agent;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool violates(std::string_view constraint) const;
};

// Constraint tags: "worlds", "world-id", "C3", "C4", "agent-record", "rank",
// "atom", "choice-totality", "action", "C5".
ValidationReport validate_model(const Model& m);

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-agent view used by the checker and the transforms.
struct AgentIndex {
  std::vector<std::size_t> cell_of;  // cell number of each world
  std::vector<WorldSet> cells;
  std::vector<std::int64_t> rank_p;
  std::vector<std::int64_t> rank_d;

  const std::vector<std::int64_t>& ranks(Dim d) const { return d == Dim::P ? rank_p : rank_d; }
};

struct ModelIndex {
  std::vector<std::string> agents;
  std::vector<AgentIndex> per_agent;
  std::map<std::string, WorldSet> atom_sets;
  std::map<std::string, WorldSet> nominal_sets;
  // (agent, action) -> worlds where the agent plays the action.
  std::map<std::pair<std::string, std::string>, WorldSet> play_sets;

  // Throws ModelError for unknown agents.
  const AgentIndex& agent(std::string_view id) const;
};

// Requires every world to carry a record for every agent; throws ModelError otherwise.
ModelIndex index_model(const Model& m);

// Relation of an atomic program (Eq, Le or Nle). Throws ModelError for an
// unknown agent and std::invalid_argument for a compound program.
PairSet atomic_rel(const Model& m, const Program& p);
PairSet atomic_rel(const ModelIndex& idx, const Program& p);

// ---- JSON I/O --------------------------------------------------------------

Model parse_model_json(std::string_view text);
std::string dump_model_json(const Model& m);
Model load_model(const std::filesystem::path& path);
void save_model(const Model& m, const std::filesystem::path& path);

}  // namespace cogmodal
