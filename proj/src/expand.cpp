#include "cogmodal/expand.hpp"

#include <stdexcept>

namespace cogmodal {

Formula most_plausible(const std::string& agent) { return box(lt(agent, Dim::P), falsity()); }

namespace {

// Weak dyadic preference "phi at least as good as psi".
Formula weak_pref(AttitudeKind kind, const std::string& i, const Formula& psi, const Formula& phi) {
  switch (kind) {
    case AttitudeKind::PrefOpt:
      return box(seq(eq(i), test(psi)), diamond(le(i, Dim::D), phi));
    case AttitudeKind::PrefPess:
      return box(seq(eq(i), test(phi)), diamond(ge(i, Dim::D), psi));
    case AttitudeKind::RealPrefOpt: {
      Program best = seq(eq(i), test(most_plausible(i)));
      return box(seq({eq(i), test(most_plausible(i)), test(psi)}),
                 diamond(inter(le(i, Dim::D), best), phi));
    }
    case AttitudeKind::RealPrefPess: {
      Program best = seq(eq(i), test(most_plausible(i)));
      return box(seq({eq(i), test(most_plausible(i)), test(phi)}),
                 diamond(inter(ge(i, Dim::D), best), psi));
    }
    default:
      throw std::logic_error("not a preference");
  }
}

}  // namespace

Formula expand_attitude_once(const Formula& f) {
  const std::string& i = f.agent();
  switch (f.attitude()) {
    case AttitudeKind::Belief:
      return box(seq(eq(i), test(most_plausible(i))), f.arg(0));
    case AttitudeKind::StrongBelief:
      return box(seq({eq(i), test(f.arg(0)), le(i, Dim::P)}), f.arg(0));
    case AttitudeKind::CondBelief: {
      const Formula& psi = f.arg(0);
      return box(seq(eq(i), test(conj(psi, box(lt(i, Dim::P), neg(psi))))), f.arg(1));
    }
    case AttitudeKind::Desire:
      return box(seq(eq(i), test(box(gt(i, Dim::D), falsity()))), neg(f.arg(0)));
    case AttitudeKind::StrongDesire:
      return box(seq({eq(i), test(f.arg(0)), le(i, Dim::D)}), f.arg(0));
    case AttitudeKind::CondDesire: {
      const Formula& psi = f.arg(0);
      return box(seq(eq(i), test(conj(neg(psi), box(gt(i, Dim::D), psi)))), neg(f.arg(1)));
    }
    default:
      break;
  }
  switch (f.pref_form()) {
    case PrefForm::Weak:
      return weak_pref(f.attitude(), i, f.arg(0), f.arg(1));
    case PrefForm::Strict:
      return neg(weak_pref(f.attitude(), i, f.arg(1), f.arg(0)));
    case PrefForm::Monadic:
      return neg(weak_pref(f.attitude(), i, f.arg(0), neg(f.arg(0))));
  }
  throw std::logic_error("unreachable");
}

namespace {
Program expand_program(const Program& p);
}

Formula expand_attitudes(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom:
    case FormulaKind::Nominal:
    case FormulaKind::Play:
      return f;
    case FormulaKind::Not:
      return neg(expand_attitudes(f.arg(0)));
    case FormulaKind::And:
      return conj(expand_attitudes(f.arg(0)), expand_attitudes(f.arg(1)));
    case FormulaKind::Or:
      return disj(expand_attitudes(f.arg(0)), expand_attitudes(f.arg(1)));
    case FormulaKind::Implies:
      return implies(expand_attitudes(f.arg(0)), expand_attitudes(f.arg(1)));
    case FormulaKind::Iff:
      return iff(expand_attitudes(f.arg(0)), expand_attitudes(f.arg(1)));
    case FormulaKind::Box:
      return box(expand_program(f.program()), expand_attitudes(f.arg(0)));
    case FormulaKind::Diamond:
      return diamond(expand_program(f.program()), expand_attitudes(f.arg(0)));
    case FormulaKind::Attitude:
      return expand_attitudes(expand_attitude_once(f));
    case FormulaKind::Dynamic:
      throw std::invalid_argument("expand_attitudes: revision operator present; reduce first");
  }
  return f;
}

namespace {
Program expand_program(const Program& p) {
  switch (p.kind()) {
    case ProgramKind::Seq: return seq(expand_program(p.arg(0)), expand_program(p.arg(1)));
    case ProgramKind::Union: return alt(expand_program(p.arg(0)), expand_program(p.arg(1)));
    case ProgramKind::Inter: return inter(expand_program(p.arg(0)), expand_program(p.arg(1)));
    case ProgramKind::Conv: return conv(expand_program(p.arg(0)));
    case ProgramKind::Test: return test(expand_attitudes(p.test()));
    default: return p;
  }
}
}  // namespace

}  // namespace cogmodal
