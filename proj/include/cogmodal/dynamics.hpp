#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogmodal/checker.hpp"
#include "cogmodal/model.hpp"
#include "cogmodal/syntax.hpp"

namespace cogmodal {

struct RankChange {
  std::string world;
  std::int64_t old_rank = 0;
  std::int64_t new_rank = 0;
};

struct CellLog {
  std::string cell;
  std::vector<RankChange> changes;
};

struct TransformResult {
  Model model;
  std::string changed_agent;
  Dim dim = Dim::P;
  std::vector<CellLog> normalization_log;
};

// `input` is the truth set of the revision input in `m`.
TransformResult radical_revise(const Model& m, const std::string& agent, Dim dim, const WorldSet& input);
TransformResult conservative_revise(const Model& m, const std::string& agent, Dim dim, const WorldSet& input);
// Static inputs only; throws std::invalid_argument when f contains a revision operator.
TransformResult radical_revise(const Model& m, const std::string& agent, Dim dim, const Formula& f);
TransformResult conservative_revise(const Model& m, const std::string& agent, Dim dim, const Formula& f);
TransformResult revise(const Model& m, const RevisionOp& op, const WorldSet& input);
// Nested revision operators inside the input are evaluated semantically.
TransformResult revise(const Model& m, const RevisionOp& op);

// The handler evaluating [op]psi on the revised model.
DynamicHandler semantic_dynamics();
// Truth set of an arbitrary formula, revision operators included.
WorldSet truth_set_dynamic(const Model& m, const Formula& f);
bool eval_dynamic(const Model& m, std::string_view world, const Formula& f);

// Image of a program under one revision step. The input of `op` must be
// static; tests psi? become ([op]psi)?.
Program f_transform(const RevisionOp& op, const Program& p);

class ReduceBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReduceOptions {
  std::size_t budget = 1'000'000;
};

struct ReduceStats {
  std::size_t steps = 0;
};

// Eliminates every revision operator, innermost first.
Formula reduce(const Formula& f, const ReduceOptions& opts = {}, ReduceStats* stats = nullptr);

}  // namespace cogmodal
