#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

#include "cogmodal/model.hpp"
#include "cogmodal/sets.hpp"
#include "cogmodal/syntax.hpp"

namespace cogmodal {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Checker;

// Computes the truth set of a revision formula [op]psi. Without a handler
// the checker rejects revision operators.
using DynamicHandler = std::function<WorldSet(Checker&, const Formula&)>;

// One evaluation session over a fixed model. Relations and truth sets are
// memoized for the lifetime of the checker; not thread-safe.
class Checker {
 public:
  explicit Checker(const Model& m, DynamicHandler dynamics = {});
  Checker(const Checker&) = delete;
  Checker& operator=(const Checker&) = delete;

  const Model& model() const { return m_; }
  const ModelIndex& index() const { return idx_; }
  const DynamicHandler& dynamics() const { return dynamics_; }
  std::size_t size() const { return m_.size(); }

  const PairSet& rel(const Program& p);
  const WorldSet& truth_set(const Formula& f);
  bool eval(std::size_t world, const Formula& f) { return truth_set(f).test(world); }
  bool eval(std::string_view world, const Formula& f) { return eval(m_.world_index(world), f); }
  bool valid(const Formula& f) { return truth_set(f).count() == size(); }

  const WorldSet& cell(std::string_view agent, std::size_t w) const;
  WorldSet truth_set_agent(std::string_view agent, std::size_t w, const Formula& f);

  WorldSet best_p(std::string_view agent, std::size_t w, const std::optional<Formula>& cond = std::nullopt);
  WorldSet best_d(std::string_view agent, std::size_t w);
  WorldSet worst_d(std::string_view agent, std::size_t w, const std::optional<Formula>& cond = std::nullopt);

  bool believes(std::string_view agent, std::size_t w, const Formula& phi);
  bool strongly_believes(std::string_view agent, std::size_t w, const Formula& phi);
  bool cond_believes(std::string_view agent, std::size_t w, const Formula& psi, const Formula& phi);
  bool desires(std::string_view agent, std::size_t w, const Formula& phi);
  bool strongly_desires(std::string_view agent, std::size_t w, const Formula& phi);
  bool cond_desires(std::string_view agent, std::size_t w, const Formula& psi, const Formula& phi);
  // Weak and strict forms compare psi (worse side) with phi; monadic ignores psi.
  bool pref(AttitudeKind kind, PrefForm form, std::string_view agent, std::size_t w, const Formula& psi,
            const Formula& phi);

  bool check_wt(std::string_view agent);

 private:
  WorldSet compute(const Formula& f);
  PairSet compute(const Program& p);
  WorldSet attitude_set(const Formula& f);
  bool attitude_on_cell(const Formula& f, const AgentIndex& a, const WorldSet& cell);
  bool weak_pref_on(AttitudeKind kind, const AgentIndex& a, const WorldSet& cell, const WorldSet& psi,
                    const WorldSet& phi) const;

  const Model& m_;
  ModelIndex idx_;
  DynamicHandler dynamics_;
  std::unordered_map<Formula, WorldSet, FormulaHash> formula_memo_;
  std::unordered_map<Program, PairSet, ProgramHash> program_memo_;
};

// Extremal worlds of `s` by rank, empty when `s` is.
WorldSet max_rank(const WorldSet& s, const std::vector<std::int64_t>& rank);
WorldSet min_rank(const WorldSet& s, const std::vector<std::int64_t>& rank);

// One-shot conveniences, each with a fresh checker.
bool eval(const Model& m, std::string_view world, const Formula& f);
WorldSet truth_set(const Model& m, const Formula& f);
bool valid_on(const Model& m, const Formula& f);
bool check_wt(const Model& m, std::string_view agent);
PairSet rel(const Model& m, const Program& p);

// World ids of a set, in model order.
std::vector<std::string> world_ids(const Model& m, const WorldSet& s);

}  // namespace cogmodal
