#pragma once

// Abstract syntax for cognitive programs and formulas.
//
// Formula and Program are immutable handles over shared nodes. Copies are
// cheap, structural equality and hashing are precomputed per node, and the
// two types are mutually recursive (a test program carries a formula, a box
// carries a program).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cogmodal {

enum class Dim : std::uint8_t { P, D };
enum class Flavor : std::uint8_t { Radical, Conservative };

enum class AttitudeKind : std::uint8_t {
  Belief,
  StrongBelief,
  CondBelief,
  Desire,
  StrongDesire,
  CondDesire,
  PrefOpt,
  PrefPess,
  RealPrefOpt,
  RealPrefPess,
};

// Only meaningful for the four preference kinds.
enum class PrefForm : std::uint8_t { Weak, Strict, Monadic };

enum class ProgramKind : std::uint8_t { Eq, Le, Nle, Seq, Union, Inter, Conv, Test };

enum class FormulaKind : std::uint8_t {
  True,
  False,
  Atom,
  Nominal,
  Play,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Box,
  Diamond,
  Attitude,
  Dynamic,
};

struct FormulaNode;
struct ProgramNode;
struct RevisionOp;

class Formula {
 public:
  // The default formula is `true`.
  Formula();

  FormulaKind kind() const;
  // Atom or nominal name; action name for play atoms.
  const std::string& name() const;
  // Agent of play atoms, attitudes and revision operators.
  const std::string& agent() const;
  AttitudeKind attitude() const;
  PrefForm pref_form() const;
  Flavor flavor() const;
  Dim dim() const;
  // Not: {sub}; binary connectives: {lhs, rhs}; Box/Diamond: {body};
  // Attitude: {phi} or {psi, phi}; Dynamic: {input, body}.
  std::span<const Formula> args() const;
  const Formula& arg(std::size_t i) const;
  // Box and Diamond only.
  const class Program& program() const;
  // Dynamic only.
  RevisionOp revision() const;

  std::size_t hash() const;
  const FormulaNode* node() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

  static Formula make(FormulaNode node);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

class Program {
 public:
  // The default program is eq("") and is only useful as a placeholder.
  Program();

  ProgramKind kind() const;
  const std::string& agent() const;
  Dim dim() const;
  // Seq/Union/Inter: {lhs, rhs}; Conv: {sub}.
  std::span<const Program> args() const;
  const Program& arg(std::size_t i) const;
  // Test only.
  const Formula& test() const;

  bool is_atomic() const;
  std::size_t hash() const;
  const ProgramNode* node() const { return node_.get(); }

  friend bool operator==(const Program& a, const Program& b);

  static Program make(ProgramNode node);

 private:
  explicit Program(std::shared_ptr<const ProgramNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ProgramNode> node_;
};

struct FormulaNode {
  FormulaKind kind = FormulaKind::True;
  AttitudeKind attitude = AttitudeKind::Belief;
  PrefForm form = PrefForm::Weak;
  Flavor flavor = Flavor::Radical;
  Dim dim = Dim::P;
  std::string name;
  std::string agent;
  std::vector<Formula> args;
  std::optional<Program> program;
  std::size_t hash = 0;
};

struct ProgramNode {
  ProgramKind kind = ProgramKind::Eq;
  Dim dim = Dim::P;
  std::string agent;
  std::vector<Program> args;
  std::optional<Formula> test;
  std::size_t hash = 0;
};

struct RevisionOp {
  Flavor flavor = Flavor::Radical;
  Dim dim = Dim::P;
  std::string agent;
  Formula input;

  friend bool operator==(const RevisionOp&, const RevisionOp&) = default;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};
struct ProgramHash {
  std::size_t operator()(const Program& p) const { return p.hash(); }
};

// ---- program constructors -------------------------------------------------

Program eq(std::string agent);
Program le(std::string agent, Dim dim);
Program nle(std::string agent, Dim dim);
Program seq(Program a, Program b);
Program seq(std::initializer_list<Program> parts);
Program alt(Program a, Program b);
Program alt(std::initializer_list<Program> parts);
Program inter(Program a, Program b);
Program conv(Program a);
Program test(Formula f);

// Derived orderings, expanded to core programs on construction.
Program ge(std::string agent, Dim dim);   // at most as plausible/desirable as
Program gt(std::string agent, Dim dim);   // strictly less plausible/desirable than
Program nge(std::string agent, Dim dim);  // not at most as plausible/desirable as
Program lt(std::string agent, Dim dim);   // strictly more plausible/desirable than
Program sim(std::string agent, Dim dim);  // equally plausible/desirable

// ---- formula constructors -------------------------------------------------

Formula truth();
Formula falsity();
Formula atom(std::string name);
Formula nominal(std::string name);
Formula play(std::string agent, std::string action);
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula conj(std::initializer_list<Formula> parts);
Formula conj(std::span<const Formula> parts);
Formula disj(Formula a, Formula b);
Formula disj(std::span<const Formula> parts);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula box(Program p, Formula f);
Formula diamond(Program p, Formula f);
Formula dyn(RevisionOp op, Formula body);

Formula believes(std::string agent, Formula phi);
Formula strongly_believes(std::string agent, Formula phi);
Formula cond_believes(std::string agent, Formula psi, Formula phi);
Formula desires(std::string agent, Formula phi);
Formula strongly_desires(std::string agent, Formula phi);
Formula cond_desires(std::string agent, Formula psi, Formula phi);
// Dyadic preference "phi is at least as good as psi" (Weak) or "better than"
// (Strict). `kind` must be one of the four preference kinds.
Formula prefers(AttitudeKind kind, PrefForm form, std::string agent, Formula psi, Formula phi);
// Monadic preference for phi.
Formula prefers(AttitudeKind kind, std::string agent, Formula phi);

bool is_preference(AttitudeKind kind);
bool is_realistic(AttitudeKind kind);
bool is_optimistic(AttitudeKind kind);

// ---- structural utilities -------------------------------------------------

bool contains_dynamic(const Formula& f);
bool contains_dynamic(const Program& p);
bool contains_attitude(const Formula& f);
bool contains_attitude(const Program& p);
// Number of nodes in the tree view (shared subterms counted once per use).
std::size_t tree_size(const Formula& f);
// Rewrites Or/Implies/Iff/Diamond into Not/And/Box, recursively, including
// tests inside programs. Attitudes and revision operators are kept.
Formula to_core(const Formula& f);
Program to_core(const Program& p);
// True when f is built from atoms, true/false and the boolean connectives only.
bool is_propositional(const Formula& f);

std::string_view to_string(Dim d);
std::string_view to_string(AttitudeKind k);

}  // namespace cogmodal
