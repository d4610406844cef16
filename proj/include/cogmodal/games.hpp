#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cogmodal/checker.hpp"
#include "cogmodal/model.hpp"
#include "cogmodal/syntax.hpp"

namespace cogmodal {

enum class Mode { Opt, Pess };

std::string_view to_string(Mode m);

// Agent -> action. A restriction to a subset of agents is a JointAction too.
using JointAction = std::map<std::string, std::string>;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Conjunction of play atoms; `true` for the empty map.
Formula play_formula(const JointAction& d);
Formula best_response_formula(const Model& m, const std::string& agent, const std::string& action,
                              const JointAction& others, Mode mode);
Formula nash_formula(const Model& m, const JointAction& d, Mode mode);
Formula rationality_formula(const Model& m, const std::string& agent, Mode mode);

// These throw EvalError for unknown agents/actions or a model without actions.
bool best_response(Checker& c, std::size_t w, const std::string& agent, const std::string& action,
                   const JointAction& others, Mode mode);
bool nash(Checker& c, std::size_t w, const JointAction& d, Mode mode);
bool rational(Checker& c, std::size_t w, const std::string& agent, Mode mode);

// All joint actions over Act^Agt, in lexicographic order of the declared lists.
// Throws BudgetExceeded when |Act|^|Agt| exceeds `budget`.
std::vector<JointAction> joint_actions(const Model& m, std::size_t budget = 4096);
std::vector<JointAction> enumerate_equilibria(Checker& c, std::size_t w, Mode mode, std::size_t budget = 4096);

// Worlds sharing every agent's cell are reported together.
struct WorldGroup {
  std::vector<std::string> worlds;
  std::map<Mode, std::vector<JointAction>> equilibria;
  // rationality[mode][world][agent]
  std::map<Mode, std::map<std::string, std::map<std::string, bool>>> rationality;
  // best_response[mode][agent] -> list of (action, others, value)
  struct BrEntry {
    std::string agent;
    std::string action;
    JointAction others;
    bool value = false;
  };
  std::map<Mode, std::vector<BrEntry>> best_responses;
};

struct GameReport {
  std::vector<std::string> agents;
  std::vector<Mode> modes;
  std::vector<WorldGroup> groups;

  bool every_world_has_equilibrium() const;
  nlohmann::ordered_json to_json() const;
  std::string to_table() const;
};

// Restrict to one world when `world` is nonempty.
GameReport game_report(const Model& m, const std::vector<Mode>& modes, const std::string& world = "",
                       std::size_t budget = 4096);

// "(S,C)" with components in the given agent order.
std::string format_joint_action(const std::vector<std::string>& agents, const JointAction& d);

}  // namespace cogmodal
