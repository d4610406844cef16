#include "cogmodal/syntax.hpp"

#include <functional>
#include <stdexcept>
#include <utility>

namespace cogmodal {
namespace {

void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t compute_hash(const FormulaNode& n) {
  std::size_t h = 0xf0;
  hash_mix(h, static_cast<std::size_t>(n.kind));
  hash_mix(h, static_cast<std::size_t>(n.attitude));
  hash_mix(h, static_cast<std::size_t>(n.form));
  hash_mix(h, static_cast<std::size_t>(n.flavor));
  hash_mix(h, static_cast<std::size_t>(n.dim));
  hash_mix(h, std::hash<std::string>{}(n.name));
  hash_mix(h, std::hash<std::string>{}(n.agent));
  for (const auto& a : n.args) hash_mix(h, a.hash());
  if (n.program) hash_mix(h, n.program->hash());
  return h;
}

std::size_t compute_hash(const ProgramNode& n) {
  std::size_t h = 0x0f;
  hash_mix(h, static_cast<std::size_t>(n.kind));
  hash_mix(h, static_cast<std::size_t>(n.dim));
  hash_mix(h, std::hash<std::string>{}(n.agent));
  for (const auto& a : n.args) hash_mix(h, a.hash());
  if (n.test) hash_mix(h, n.test->hash());
  return h;
}

FormulaNode formula_node(FormulaKind kind) {
  FormulaNode n;
  n.kind = kind;
  return n;
}

ProgramNode program_node(ProgramKind kind) {
  ProgramNode n;
  n.kind = kind;
  return n;
}

Formula binary(FormulaKind kind, Formula a, Formula b) {
  auto n = formula_node(kind);
  n.args = {std::move(a), std::move(b)};
  return Formula::make(std::move(n));
}

Formula attitude_node(AttitudeKind kind, PrefForm form, std::string agent, std::vector<Formula> args) {
  auto n = formula_node(FormulaKind::Attitude);
  n.attitude = kind;
  n.form = form;
  n.agent = std::move(agent);
  n.args = std::move(args);
  return Formula::make(std::move(n));
}

}  // namespace

// ---- Formula ---------------------------------------------------------------

Formula::Formula() : Formula(truth()) {}

Formula Formula::make(FormulaNode node) {
  node.hash = compute_hash(node);
  return Formula(std::make_shared<const FormulaNode>(std::move(node)));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::string& Formula::agent() const { return node_->agent; }
AttitudeKind Formula::attitude() const { return node_->attitude; }
PrefForm Formula::pref_form() const { return node_->form; }
Flavor Formula::flavor() const { return node_->flavor; }
Dim Formula::dim() const { return node_->dim; }
std::span<const Formula> Formula::args() const { return node_->args; }
const Formula& Formula::arg(std::size_t i) const { return node_->args.at(i); }
std::size_t Formula::hash() const { return node_->hash; }

const Program& Formula::program() const {
  if (!node_->program) throw std::logic_error("formula has no program");
  return *node_->program;
}

RevisionOp Formula::revision() const {
  if (kind() != FormulaKind::Dynamic) throw std::logic_error("formula is not a revision operator");
  return RevisionOp{flavor(), dim(), agent(), arg(0)};
}

bool operator==(const Formula& a, const Formula& b) {
  const FormulaNode* x = a.node_.get();
  const FormulaNode* y = b.node_.get();
  if (x == y) return true;
  if (x->hash != y->hash || x->kind != y->kind) return false;
  return x->attitude == y->attitude && x->form == y->form && x->flavor == y->flavor &&
         x->dim == y->dim && x->name == y->name && x->agent == y->agent && x->args == y->args &&
         x->program == y->program;
}

// ---- Program ---------------------------------------------------------------

Program::Program() : Program(eq("")) {}

Program Program::make(ProgramNode node) {
  node.hash = compute_hash(node);
  return Program(std::make_shared<const ProgramNode>(std::move(node)));
}

ProgramKind Program::kind() const { return node_->kind; }
const std::string& Program::agent() const { return node_->agent; }
Dim Program::dim() const { return node_->dim; }
std::span<const Program> Program::args() const { return node_->args; }
const Program& Program::arg(std::size_t i) const { return node_->args.at(i); }
std::size_t Program::hash() const { return node_->hash; }

const Formula& Program::test() const {
  if (!node_->test) throw std::logic_error("program is not a test");
  return *node_->test;
}

bool Program::is_atomic() const {
  return kind() == ProgramKind::Eq || kind() == ProgramKind::Le || kind() == ProgramKind::Nle;
}

bool operator==(const Program& a, const Program& b) {
  const ProgramNode* x = a.node_.get();
  const ProgramNode* y = b.node_.get();
  if (x == y) return true;
  if (x->hash != y->hash || x->kind != y->kind) return false;
  return x->dim == y->dim && x->agent == y->agent && x->args == y->args && x->test == y->test;
}

// ---- program constructors ------------------------------------------------

Program eq(std::string agent) {
  auto n = program_node(ProgramKind::Eq);
  n.agent = std::move(agent);
  return Program::make(std::move(n));
}

Program le(std::string agent, Dim dim) {
  auto n = program_node(ProgramKind::Le);
  n.agent = std::move(agent);
  n.dim = dim;
  return Program::make(std::move(n));
}

Program nle(std::string agent, Dim dim) {
  auto n = program_node(ProgramKind::Nle);
  n.agent = std::move(agent);
  n.dim = dim;
  return Program::make(std::move(n));
}

Program seq(Program a, Program b) {
  auto n = program_node(ProgramKind::Seq);
  n.args = {std::move(a), std::move(b)};
  return Program::make(std::move(n));
}

Program seq(std::initializer_list<Program> parts) {
  if (parts.size() == 0) throw std::invalid_argument("empty sequence");
  auto it = parts.begin();
  Program acc = *it++;
  for (; it != parts.end(); ++it) acc = seq(acc, *it);
  return acc;
}

Program alt(Program a, Program b) {
  auto n = program_node(ProgramKind::Union);
  n.args = {std::move(a), std::move(b)};
  return Program::make(std::move(n));
}

Program alt(std::initializer_list<Program> parts) {
  if (parts.size() == 0) throw std::invalid_argument("empty union");
  auto it = parts.begin();
  Program acc = *it++;
  for (; it != parts.end(); ++it) acc = alt(acc, *it);
  return acc;
}

Program inter(Program a, Program b) {
  auto n = program_node(ProgramKind::Inter);
  n.args = {std::move(a), std::move(b)};
  return Program::make(std::move(n));
}

Program conv(Program a) {
  auto n = program_node(ProgramKind::Conv);
  n.args = {std::move(a)};
  return Program::make(std::move(n));
}

Program test(Formula f) {
  auto n = program_node(ProgramKind::Test);
  n.test = std::move(f);
  return Program::make(std::move(n));
}

Program ge(std::string agent, Dim dim) { return conv(le(std::move(agent), dim)); }

Program nge(std::string agent, Dim dim) { return conv(nle(std::move(agent), dim)); }

Program gt(std::string agent, Dim dim) { return inter(ge(agent, dim), nle(agent, dim)); }

Program lt(std::string agent, Dim dim) { return inter(le(agent, dim), nge(agent, dim)); }

Program sim(std::string agent, Dim dim) { return inter(le(agent, dim), ge(agent, dim)); }

// ---- formula constructors ------------------------------------------------

Formula truth() {
  static const Formula t = Formula::make(formula_node(FormulaKind::True));
  return t;
}

Formula falsity() {
  static const Formula f = Formula::make(formula_node(FormulaKind::False));
  return f;
}

Formula atom(std::string name) {
  auto n = formula_node(FormulaKind::Atom);
  n.name = std::move(name);
  return Formula::make(std::move(n));
}

Formula nominal(std::string name) {
  auto n = formula_node(FormulaKind::Nominal);
  n.name = std::move(name);
  return Formula::make(std::move(n));
}

Formula play(std::string agent, std::string action) {
  auto n = formula_node(FormulaKind::Play);
  n.agent = std::move(agent);
  n.name = std::move(action);
  return Formula::make(std::move(n));
}

Formula neg(Formula f) {
  auto n = formula_node(FormulaKind::Not);
  n.args = {std::move(f)};
  return Formula::make(std::move(n));
}

Formula conj(Formula a, Formula b) { return binary(FormulaKind::And, std::move(a), std::move(b)); }

Formula conj(std::span<const Formula> parts) {
  if (parts.empty()) return truth();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula conj(std::initializer_list<Formula> parts) {
  return conj(std::span<const Formula>(parts.begin(), parts.size()));
}

Formula disj(Formula a, Formula b) { return binary(FormulaKind::Or, std::move(a), std::move(b)); }

Formula disj(std::span<const Formula> parts) {
  if (parts.empty()) return falsity();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Formula implies(Formula a, Formula b) { return binary(FormulaKind::Implies, std::move(a), std::move(b)); }

Formula iff(Formula a, Formula b) { return binary(FormulaKind::Iff, std::move(a), std::move(b)); }

Formula box(Program p, Formula f) {
  auto n = formula_node(FormulaKind::Box);
  n.program = std::move(p);
  n.args = {std::move(f)};
  return Formula::make(std::move(n));
}

Formula diamond(Program p, Formula f) {
  auto n = formula_node(FormulaKind::Diamond);
  n.program = std::move(p);
  n.args = {std::move(f)};
  return Formula::make(std::move(n));
}

Formula dyn(RevisionOp op, Formula body) {
  auto n = formula_node(FormulaKind::Dynamic);
  n.flavor = op.flavor;
  n.dim = op.dim;
  n.agent = std::move(op.agent);
  n.args = {std::move(op.input), std::move(body)};
  return Formula::make(std::move(n));
}

Formula believes(std::string agent, Formula phi) {
  return attitude_node(AttitudeKind::Belief, PrefForm::Weak, std::move(agent), {std::move(phi)});
}

Formula strongly_believes(std::string agent, Formula phi) {
  return attitude_node(AttitudeKind::StrongBelief, PrefForm::Weak, std::move(agent), {std::move(phi)});
}

Formula cond_believes(std::string agent, Formula psi, Formula phi) {
  return attitude_node(AttitudeKind::CondBelief, PrefForm::Weak, std::move(agent),
                       {std::move(psi), std::move(phi)});
}

Formula desires(std::string agent, Formula phi) {
  return attitude_node(AttitudeKind::Desire, PrefForm::Weak, std::move(agent), {std::move(phi)});
}

Formula strongly_desires(std::string agent, Formula phi) {
  return attitude_node(AttitudeKind::StrongDesire, PrefForm::Weak, std::move(agent), {std::move(phi)});
}

Formula cond_desires(std::string agent, Formula psi, Formula phi) {
  return attitude_node(AttitudeKind::CondDesire, PrefForm::Weak, std::move(agent),
                       {std::move(psi), std::move(phi)});
}

Formula prefers(AttitudeKind kind, PrefForm form, std::string agent, Formula psi, Formula phi) {
  if (!is_preference(kind)) throw std::invalid_argument("not a preference kind");
  if (form == PrefForm::Monadic) throw std::invalid_argument("monadic preference takes one argument");
  return attitude_node(kind, form, std::move(agent), {std::move(psi), std::move(phi)});
}

Formula prefers(AttitudeKind kind, std::string agent, Formula phi) {
  if (!is_preference(kind)) throw std::invalid_argument("not a preference kind");
  return attitude_node(kind, PrefForm::Monadic, std::move(agent), {std::move(phi)});
}

bool is_preference(AttitudeKind kind) {
  switch (kind) {
    case AttitudeKind::PrefOpt:
    case AttitudeKind::PrefPess:
    case AttitudeKind::RealPrefOpt:
    case AttitudeKind::RealPrefPess:
      return true;
    default:
      return false;
  }
}

bool is_realistic(AttitudeKind kind) {
  return kind == AttitudeKind::RealPrefOpt || kind == AttitudeKind::RealPrefPess;
}

bool is_optimistic(AttitudeKind kind) {
  return kind == AttitudeKind::PrefOpt || kind == AttitudeKind::RealPrefOpt;
}

// ---- structural utilities ------------------------------------------------

bool contains_dynamic(const Program& p) {
  if (p.kind() == ProgramKind::Test) return contains_dynamic(p.test());
  for (const auto& a : p.args())
    if (contains_dynamic(a)) return true;
  return false;
}

bool contains_dynamic(const Formula& f) {
  if (f.kind() == FormulaKind::Dynamic) return true;
  if (f.kind() == FormulaKind::Box || f.kind() == FormulaKind::Diamond) {
    if (contains_dynamic(f.program())) return true;
  }
  for (const auto& a : f.args())
    if (contains_dynamic(a)) return true;
  return false;
}

bool contains_attitude(const Program& p) {
  if (p.kind() == ProgramKind::Test) return contains_attitude(p.test());
  for (const auto& a : p.args())
    if (contains_attitude(a)) return true;
  return false;
}

bool contains_attitude(const Formula& f) {
  if (f.kind() == FormulaKind::Attitude) return true;
  if (f.kind() == FormulaKind::Box || f.kind() == FormulaKind::Diamond) {
    if (contains_attitude(f.program())) return true;
  }
  for (const auto& a : f.args())
    if (contains_attitude(a)) return true;
  return false;
}

namespace {
std::size_t program_tree_size(const Program& p);

std::size_t formula_tree_size(const Formula& f) {
  std::size_t n = 1;
  if (f.kind() == FormulaKind::Box || f.kind() == FormulaKind::Diamond) n += program_tree_size(f.program());
  for (const auto& a : f.args()) n += formula_tree_size(a);
  return n;
}

std::size_t program_tree_size(const Program& p) {
  std::size_t n = 1;
  if (p.kind() == ProgramKind::Test) n += formula_tree_size(p.test());
  for (const auto& a : p.args()) n += program_tree_size(a);
  return n;
}
}  // namespace

std::size_t tree_size(const Formula& f) { return formula_tree_size(f); }

Program to_core(const Program& p) {
  switch (p.kind()) {
    case ProgramKind::Eq:
    case ProgramKind::Le:
    case ProgramKind::Nle:
      return p;
    case ProgramKind::Seq:
      return seq(to_core(p.arg(0)), to_core(p.arg(1)));
    case ProgramKind::Union:
      return alt(to_core(p.arg(0)), to_core(p.arg(1)));
    case ProgramKind::Inter:
      return inter(to_core(p.arg(0)), to_core(p.arg(1)));
    case ProgramKind::Conv:
      return conv(to_core(p.arg(0)));
    case ProgramKind::Test:
      return test(to_core(p.test()));
  }
  return p;
}

Formula to_core(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom:
    case FormulaKind::Nominal:
    case FormulaKind::Play:
      return f;
    case FormulaKind::Not:
      return neg(to_core(f.arg(0)));
    case FormulaKind::And:
      return conj(to_core(f.arg(0)), to_core(f.arg(1)));
    case FormulaKind::Or:
      return neg(conj(neg(to_core(f.arg(0))), neg(to_core(f.arg(1)))));
    case FormulaKind::Implies:
      return neg(conj(to_core(f.arg(0)), neg(to_core(f.arg(1)))));
    case FormulaKind::Iff: {
      Formula a = to_core(f.arg(0));
      Formula b = to_core(f.arg(1));
      return conj(neg(conj(a, neg(b))), neg(conj(b, neg(a))));
    }
    case FormulaKind::Box:
      return box(to_core(f.program()), to_core(f.arg(0)));
    case FormulaKind::Diamond:
      return neg(box(to_core(f.program()), neg(to_core(f.arg(0)))));
    case FormulaKind::Attitude: {
      FormulaNode n = *f.node();
      for (auto& a : n.args) a = to_core(a);
      return Formula::make(std::move(n));
    }
    case FormulaKind::Dynamic: {
      RevisionOp op = f.revision();
      op.input = to_core(op.input);
      return dyn(std::move(op), to_core(f.arg(1)));
    }
  }
  return f;
}

bool is_propositional(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom:
      return true;
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      for (const auto& a : f.args())
        if (!is_propositional(a)) return false;
      return true;
    default:
      return false;
  }
}

std::string_view to_string(Dim d) { return d == Dim::P ? "P" : "D"; }

std::string_view to_string(AttitudeKind k) {
  switch (k) {
    case AttitudeKind::Belief: return "B";
    case AttitudeKind::StrongBelief: return "SB";
    case AttitudeKind::CondBelief: return "CB";
    case AttitudeKind::Desire: return "D";
    case AttitudeKind::StrongDesire: return "SD";
    case AttitudeKind::CondDesire: return "CD";
    case AttitudeKind::PrefOpt: return "Popt";
    case AttitudeKind::PrefPess: return "Ppes";
    case AttitudeKind::RealPrefOpt: return "RPopt";
    case AttitudeKind::RealPrefPess: return "RPpes";
  }
  return "?";
}

}  // namespace cogmodal
