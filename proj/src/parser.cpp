#include "cogmodal/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cogmodal {

namespace {

std::string describe(const std::vector<std::string>& expected, const std::string& found, int line, int col) {
  std::ostringstream os;
  os << line << ":" << col << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", found " << found;
  return os.str();
}

enum class Tok { Ident, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view s) {
  static const char* const symbols[] = {"<->", "<=", "->", "<", ">", "[", "]", "(", ")", "{", "}",
                                        "!",   "&",  "|",  ";", "-", "?", ",", "@"};
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    bool matched = false;
    for (const char* sym : symbols) {
      std::string_view sv(sym);
      if (s.substr(i, sv.size()) == sv) {
        t.kind = Tok::Sym;
        t.text = std::string(sv);
        advance(sv.size());
        out.push_back(std::move(t));
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(line, col, {"a token"}, "'" + std::string(1, c) + "'");
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

const char* const kAttitudes[] = {"B", "SB", "CB", "D", "SD", "CD", "Popt", "Ppes", "RPopt", "RPpes"};
const char* const kDynamics[] = {"radB", "radD", "conB", "conD"};

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : toks_(tokenize(text)), opts_(opts) {}

  Formula whole_formula() {
    Formula f = formula();
    expect_end({"'&'", "'|'", "'->'", "'<->'"});
    return f;
  }

  Program whole_program() {
    Program p = program();
    expect_end({"';'", "'|'", "'&'"});
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is_sym(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_ident(std::size_t k = 0) const { return peek(k).kind == Tok::Ident; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, std::move(expected), found);
  }

  void expect_sym(const char* s) {
    if (!is_sym(s)) fail({std::string("'") + s + "'"});
    take();
  }

  void expect_end(std::vector<std::string> more) {
    if (peek().kind != Tok::End) {
      more.insert(more.begin(), "end of input");
      fail(std::move(more));
    }
  }

  std::string ident(const char* what) {
    if (!is_ident()) fail({what});
    return take().text;
  }

  std::string braced_agent() {
    expect_sym("{");
    std::string a = ident("agent id");
    expect_sym("}");
    return a;
  }

  // ---- formulas ----------------------------------------------------------

  Formula formula() {
    Formula f = implication();
    while (is_sym("<->")) {
      take();
      f = iff(f, implication());
    }
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    if (is_sym("->")) {
      take();
      return implies(f, implication());
    }
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (is_sym("|")) {
      take();
      f = disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (is_sym("&")) {
      take();
      f = conj(f, unary());
    }
    return f;
  }

  bool keyword_follows(const char* const* begin, const char* const* end) const {
    if (!is_ident() || !is_sym("{", 1)) return false;
    return std::find(begin, end, peek().text) != end;
  }

  Formula unary() {
    if (is_sym("!")) {
      take();
      return neg(unary());
    }
    if (is_sym("[")) {
      take();
      if (keyword_follows(std::begin(kDynamics), std::end(kDynamics))) {
        std::string kw = take().text;
        RevisionOp op;
        op.flavor = kw[0] == 'r' ? Flavor::Radical : Flavor::Conservative;
        op.dim = kw.back() == 'B' ? Dim::P : Dim::D;
        op.agent = braced_agent();
        op.input = formula();
        expect_sym("]");
        return dyn(std::move(op), unary());
      }
      Program p = program();
      expect_sym("]");
      return box(std::move(p), unary());
    }
    if (is_sym("<")) {
      take();
      Program p = program();
      expect_sym(">");
      return diamond(std::move(p), unary());
    }
    if (is_sym("(")) {
      take();
      Formula f = formula();
      expect_sym(")");
      return f;
    }
    if (is_sym("@")) {
      take();
      return nominal(ident("nominal name"));
    }
    if (!is_ident())
      fail({"'!'", "'['", "'<'", "'('", "'@'", "'true'", "'false'", "atom", "attitude", "'play'"});
    if (keyword_follows(std::begin(kAttitudes), std::end(kAttitudes))) return attitude();
    std::string name = take().text;
    if (name == "true") return truth();
    if (name == "false") return falsity();
    if (name == "play" && is_sym("(")) {
      take();
      std::string agent = ident("agent id");
      expect_sym(",");
      std::string action = ident("action name");
      expect_sym(")");
      return play(std::move(agent), std::move(action));
    }
    return atom(std::move(name));
  }

  Formula attitude() {
    std::string kw = take().text;
    std::string agent = braced_agent();
    if (kw == "B") return believes(agent, unary());
    if (kw == "SB") return strongly_believes(agent, unary());
    if (kw == "D") return desires(agent, unary());
    if (kw == "SD") return strongly_desires(agent, unary());
    if (kw == "CB" || kw == "CD") {
      expect_sym("(");
      Formula psi = formula();
      expect_sym(",");
      Formula phi = formula();
      expect_sym(")");
      return kw == "CB" ? cond_believes(agent, psi, phi) : cond_desires(agent, psi, phi);
    }
    AttitudeKind kind = kw == "Popt"    ? AttitudeKind::PrefOpt
                        : kw == "Ppes"  ? AttitudeKind::PrefPess
                        : kw == "RPopt" ? AttitudeKind::RealPrefOpt
                                        : AttitudeKind::RealPrefPess;
    if (!is_sym("(")) return prefers(kind, agent, unary());
    take();
    Formula first = formula();
    if (is_sym(")")) {
      take();
      return prefers(kind, agent, first);
    }
    PrefForm form;
    if (is_sym("<=")) {
      form = PrefForm::Weak;
    } else if (is_sym("<")) {
      form = PrefForm::Strict;
    } else {
      fail({"'<='", "'<'", "')'"});
    }
    take();
    Formula second = formula();
    expect_sym(")");
    return prefers(kind, form, agent, first, second);
  }

  // ---- programs ----------------------------------------------------------

  Program program() {
    Program p = sequence();
    while (is_sym("|")) {
      take();
      p = alt(p, sequence());
    }
    return p;
  }

  Program sequence() {
    Program p = intersection();
    while (is_sym(";")) {
      take();
      p = seq(p, intersection());
    }
    return p;
  }

  Program intersection() {
    Program p = program_unary();
    while (is_sym("&")) {
      take();
      p = inter(p, program_unary());
    }
    return p;
  }

  Program program_unary() {
    if (is_sym("-")) {
      take();
      return conv(program_unary());
    }
    if (is_sym("?")) {
      take();
      expect_sym("(");
      Formula f = formula();
      expect_sym(")");
      return test(std::move(f));
    }
    if (is_sym("(")) {
      take();
      Program p = program();
      expect_sym(")");
      return p;
    }
    static const std::vector<std::string> expected = {"'-'", "'?'", "'('", "'eq'", "'le'", "'nle'",
                                                       "'ge'", "'lt'", "'gt'", "'nge'", "'sim'"};
    if (!is_ident()) fail(expected);
    const std::string& name = peek().text;
    bool sugar = name == "ge" || name == "lt" || name == "gt" || name == "nge" || name == "sim";
    if (name != "eq" && name != "le" && name != "nle" && !sugar) fail(expected);
    if (sugar && opts_.core_only) fail({"'-'", "'?'", "'('", "'eq'", "'le'", "'nle'"});
    std::string kw = take().text;
    expect_sym("(");
    std::string agent = ident("agent id");
    if (kw == "eq") {
      expect_sym(")");
      return eq(agent);
    }
    expect_sym(",");
    if (!is_ident() || (peek().text != "P" && peek().text != "D")) fail({"'P'", "'D'"});
    Dim d = take().text == "P" ? Dim::P : Dim::D;
    expect_sym(")");
    if (kw == "le") return le(agent, d);
    if (kw == "nle") return nle(agent, d);
    if (kw == "ge") return ge(agent, d);
    if (kw == "lt") return lt(agent, d);
    if (kw == "gt") return gt(agent, d);
    if (kw == "nge") return nge(agent, d);
    return sim(agent, d);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseOptions opts_;
};

// ---- rendering -----------------------------------------------------------

int formula_prec(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    default: return 5;
  }
}

int program_prec(const Program& p) {
  switch (p.kind()) {
    case ProgramKind::Union: return 1;
    case ProgramKind::Seq: return 2;
    case ProgramKind::Inter: return 3;
    default: return 4;
  }
}

void emit(std::string& out, const Formula& f, int min_prec);

void emit(std::string& out, const Program& p, int min_prec) {
  bool paren = program_prec(p) < min_prec;
  if (paren) out += '(';
  switch (p.kind()) {
    case ProgramKind::Eq:
      out += "eq(" + p.agent() + ")";
      break;
    case ProgramKind::Le:
    case ProgramKind::Nle:
      out += p.kind() == ProgramKind::Le ? "le(" : "nle(";
      out += p.agent();
      out += ',';
      out += to_string(p.dim());
      out += ')';
      break;
    case ProgramKind::Union:
      emit(out, p.arg(0), 1);
      out += " | ";
      emit(out, p.arg(1), 2);
      break;
    case ProgramKind::Seq:
      emit(out, p.arg(0), 2);
      out += "; ";
      emit(out, p.arg(1), 3);
      break;
    case ProgramKind::Inter:
      emit(out, p.arg(0), 3);
      out += " & ";
      emit(out, p.arg(1), 4);
      break;
    case ProgramKind::Conv:
      out += '-';
      emit(out, p.arg(0), 4);
      break;
    case ProgramKind::Test:
      out += "?(";
      emit(out, p.test(), 1);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

void emit(std::string& out, const Formula& f, int min_prec) {
  bool paren = formula_prec(f) < min_prec;
  if (paren) out += '(';
  switch (f.kind()) {
    case FormulaKind::True: out += "true"; break;
    case FormulaKind::False: out += "false"; break;
    case FormulaKind::Atom: out += f.name(); break;
    case FormulaKind::Nominal: out += "@" + f.name(); break;
    case FormulaKind::Play: out += "play(" + f.agent() + "," + f.name() + ")"; break;
    case FormulaKind::Not:
      out += '!';
      emit(out, f.arg(0), 5);
      break;
    case FormulaKind::And:
      emit(out, f.arg(0), 4);
      out += " & ";
      emit(out, f.arg(1), 5);
      break;
    case FormulaKind::Or:
      emit(out, f.arg(0), 3);
      out += " | ";
      emit(out, f.arg(1), 4);
      break;
    case FormulaKind::Implies:
      emit(out, f.arg(0), 3);
      out += " -> ";
      emit(out, f.arg(1), 2);
      break;
    case FormulaKind::Iff:
      emit(out, f.arg(0), 1);
      out += " <-> ";
      emit(out, f.arg(1), 2);
      break;
    case FormulaKind::Box:
    case FormulaKind::Diamond: {
      bool b = f.kind() == FormulaKind::Box;
      out += b ? '[' : '<';
      emit(out, f.program(), 1);
      out += b ? "] " : "> ";
      emit(out, f.arg(0), 5);
      break;
    }
    case FormulaKind::Dynamic:
      out += f.flavor() == Flavor::Radical ? "[rad" : "[con";
      out += f.dim() == Dim::P ? "B{" : "D{";
      out += f.agent() + "} ";
      emit(out, f.arg(0), 1);
      out += "] ";
      emit(out, f.arg(1), 5);
      break;
    case FormulaKind::Attitude: {
      out += to_string(f.attitude());
      out += "{" + f.agent() + "}";
      if (f.args().size() == 1) {
        out += ' ';
        emit(out, f.arg(0), 5);
      } else {
        out += '(';
        emit(out, f.arg(0), 1);
        if (is_preference(f.attitude()))
          out += f.pref_form() == PrefForm::Strict ? " < " : " <= ";
        else
          out += ", ";
        emit(out, f.arg(1), 1);
        out += ')';
      }
      break;
    }
  }
  if (paren) out += ')';
}

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected, const std::string& found)
    : std::runtime_error(describe(expected, found, line, column)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

Formula parse_formula(std::string_view text, const ParseOptions& opts) {
  return Parser(text, opts).whole_formula();
}

Program parse_program(std::string_view text, const ParseOptions& opts) {
  return Parser(text, opts).whole_program();
}

std::string render(const Formula& f) {
  std::string out;
  emit(out, f, 1);
  return out;
}

std::string render(const Program& p) {
  std::string out;
  emit(out, p, 1);
  return out;
}

}  // namespace cogmodal
