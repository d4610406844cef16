#pragma once

// Seeded generation of valid models and formulas, axiom-schema instances,
// and the validity-fuzzing suites.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cogmodal/model.hpp"
#include "cogmodal/syntax.hpp"

namespace cogmodal {

struct Range {
  int lo = 1;
  int hi = 1;
};

struct GenSpec {
  std::uint64_t seed = 1;
  Range worlds{1, 8};
  Range agents{1, 3};
  Range atoms{1, 4};
  Range cells{1, 3};
  int max_rank = 3;
  bool with_choices = false;
  Range actions{1, 3};
  int depth = 3;
};

// Draws use `engine() % n`, which is identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  int uniform(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(int num, int den) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(den)) < num; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Model gen_model(const GenSpec& spec);
Model gen_model(const GenSpec& spec, Rng& rng);

struct Signature {
  std::vector<std::string> agents;
  std::vector<std::string> atoms;
  std::vector<std::string> nominals;
  std::vector<std::string> actions;

  static Signature of(const Model& m);
};

struct FormulaGen {
  int depth = 3;
  bool attitudes = true;
  bool programs = true;
  bool plays = true;
  bool nominals = true;
  // Maximum nesting of revision operators; 0 gives static formulas.
  int dynamic_nesting = 0;
  // Propositional formulas over atoms only.
  bool propositional = false;
};

Formula gen_formula(Rng& rng, const Signature& sig, const FormulaGen& opts);
Program gen_program(Rng& rng, const Signature& sig, int depth, const FormulaGen& opts);
// Model and formula both drawn from spec.seed.
Formula gen_formula(const GenSpec& spec);

// ---- axiom schemas ---------------------------------------------------------

// The 18 DLCA schemas, the three DLCAG schemas, the two well-foundedness
// schemas, and the deliberately invalid "NegB" (B_i phi -> phi).
const std::vector<std::string>& schema_ids();
const std::vector<std::string>& dlca_schema_ids();

// Throws std::invalid_argument for an unknown schema. Enumerative schemas
// (MostAct, LeastAct, SIC) ignore `count` and return every instance.
std::vector<Formula> axiom_instances(const std::string& schema, const Model& m, Rng& rng, std::size_t count,
                                     int depth = 2);

// ---- fuzzing -----------------------------------------------------------------

struct FuzzFailure {
  std::string model_file;
  std::string world;
  std::string formula;
  std::string detail;
};

struct FuzzReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t models = 0;
  std::size_t checks = 0;
  std::size_t failure_count = 0;
  std::vector<FuzzFailure> failures;  // at most FuzzOptions::max_failures
  double seconds = 0;

  nlohmann::ordered_json to_json() const;
  static FuzzReport from_json(const nlohmann::json& j);
};

struct FuzzOptions {
  // Counterexample models are written here when nonempty.
  std::filesystem::path out_dir;
  std::size_t instances_per_schema = 20;
  std::size_t max_failures = 20;
};

const std::vector<std::string>& suite_ids();

// Throws std::invalid_argument for an unknown suite.
FuzzReport fuzz_validities(const std::string& suite, std::size_t n_models, const GenSpec& spec,
                           const FuzzOptions& opts = {});

// Rebuilds ranks from the induced relations and compares relations.
bool rank_relation_roundtrip(const Model& m);

}  // namespace cogmodal
