#pragma once

// Recursive-descent parser for the ASCII concrete syntax.
//
// Identifiers are propositions unless they are declared nominals or occur in
// a nominal position somewhere in the input (after @ or down, as the speaker
// or addressee of a sugar form, inside C{...}, cutF(...), kbar(...)).
// Classification is done by a first pass over the whole input.

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "efl/error.hpp"
#include "efl/social.hpp"
#include "efl/syntax.hpp"

namespace efl {

using NominalSet = std::set<std::string>;

namespace detail {

struct Token {
  enum class Kind { ident, internal, sym, end };
  Kind kind = Kind::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline std::vector<Token> lex(std::string_view src) {
  static const char* const symbols[] = {"<->", "<!!", "!!>", "<!", "!>", "->", "??", ":=", "~", "&", "|", "(", ")",
                                        "[",   "]",   "<",   ">",  "@",  ".",  "?",  ";",  "*", ",", ":", "{", "}", "="};
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::size_t k = j;
      while (k < src.size() && src[k] == '\'') ++k;
      t.kind = k > j ? Token::Kind::internal : Token::Kind::ident;
      t.text = std::string(src.substr(i, k - i));
      advance(k - i);
      out.push_back(std::move(t));
      continue;
    }
    bool matched = false;
    for (const char* s : symbols) {
      const std::string_view sv(s);
      if (src.substr(i, sv.size()) == sv) {
        t.kind = Token::Kind::sym;
        t.text = std::string(sv);
        advance(sv.size());
        out.push_back(std::move(t));
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  Token end;
  end.kind = Token::Kind::end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, NominalSet nominals) : toks_(std::move(tokens)), noms_(std::move(nominals)) {}

  Formula parse_formula_all() {
    return run([&] { return formula(); });
  }
  Program parse_program_all() {
    return run([&] { return program_expr(); });
  }

  /// Identifiers seen in nominal positions during the last parse.
  const NominalSet& seen_nominals() const { return seen_; }

 private:
  struct Fail {};

  template <class F>
  auto run(F&& f) -> decltype(f()) {
    try {
      auto r = f();
      if (peek().kind != Token::Kind::end) fail("end of input");
      return r;
    } catch (const Fail&) {
      const Token& t = toks_[std::min(far_pos_, toks_.size() - 1)];
      std::string msg = "syntax error: expected ";
      bool first = true;
      for (const auto& e : far_expected_) {
        msg += (first ? "" : ", ") + e;
        first = false;
      }
      msg += t.kind == Token::Kind::end ? " but found end of input" : " but found '" + t.text + "'";
      throw ParseError(msg, t.line, t.column);
    }
  }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool is_sym(const char* s, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Token::Kind::sym && t.text == s;
  }
  bool is_word(const char* s, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Token::Kind::ident && t.text == s;
  }

  [[noreturn]] void fail(const std::string& expected) {
    if (pos_ > far_pos_ || far_expected_.empty()) {
      if (pos_ > far_pos_) far_expected_.clear();
      far_pos_ = pos_;
    }
    if (pos_ == far_pos_) far_expected_.insert(expected);
    throw Fail{};
  }
  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(std::string("'") + s + "'");
    ++pos_;
  }
  std::string ident() {
    if (peek().kind != Token::Kind::ident) fail("identifier");
    return toks_[pos_++].text;
  }
  std::string nominal() {
    std::string n = ident();
    seen_.insert(n);
    return n;
  }

  static std::optional<Modality> modality_of(const Token& t) {
    if (t.kind != Token::Kind::ident || t.text.size() != 1) return std::nullopt;
    switch (t.text[0]) {
      case 'K': return Modality::K;
      case 'F': return Modality::F;
      case 'A': return Modality::A;
      case 'D': return Modality::D;
      default: return std::nullopt;
    }
  }

  Formula formula() {
    const Token& t = peek();
    if (is_sym("~")) {
      ++pos_;
      return neg(formula());
    }
    if (is_sym("(")) {
      ++pos_;
      Formula a = formula();
      std::string op;
      for (const char* s : {"&", "|", "->", "<->"}) {
        if (is_sym(s)) op = s;
      }
      if (op.empty()) fail("binary connective");
      ++pos_;
      Formula b = formula();
      expect_sym(")");
      if (op == "&") return conj(a, b);
      if (op == "|") return disj(a, b);
      if (op == "->") return implies(a, b);
      return iff(a, b);
    }
    if (auto m = modality_of(t)) {
      ++pos_;
      return box(*m, formula());
    }
    if (is_sym("<")) {
      ++pos_;
      auto m = modality_of(peek());
      if (!m) fail("modality K, F, A or D");
      ++pos_;
      expect_sym(">");
      return diamond(*m, formula());
    }
    if (is_sym("@")) {
      ++pos_;
      std::string n = nominal();
      return at(n, formula());
    }
    if (is_word("down")) {
      ++pos_;
      std::string n = nominal();
      expect_sym(".");
      return down(n, formula());
    }
    if (is_word("true")) {
      ++pos_;
      return top();
    }
    if (is_word("false")) {
      ++pos_;
      return bottom();
    }
    if (is_word("C") && is_sym("{", 1)) {
      pos_ += 2;
      std::vector<std::string> group;
      group.push_back(nominal());
      while (is_sym(",")) {
        ++pos_;
        group.push_back(nominal());
      }
      expect_sym("}");
      return group_common(std::move(group), formula());
    }
    if (is_sym("[")) return bracketed();
    if (t.kind == Token::Kind::ident) {
      ++pos_;
      return noms_.count(t.text) ? nom(t.text) : prop(t.text);
    }
    fail("formula");
  }

  bool sugar_op_ahead() const {
    for (const char* s : {"<!", "<!!", "!>", "!!>", "?", "??"})
      if (is_sym(s, 1)) return true;
    return false;
  }

  Formula bracketed() {
    expect_sym("[");
    if (is_sym("[")) {
      ++pos_;
      Program p = program_expr();
      expect_sym("]");
      expect_sym("]");
      return pbox(p, formula());
    }
    const bool keyword_head = peek().kind == Token::Kind::ident && !is_sym(":=", 1) && !is_sym(",", 1);
    if (keyword_head && is_word("gddl")) return gddl();
    if (is_word("I") && is_sym("]", 1)) {
      pos_ += 2;
      return dyn(identity_transformation(), formula());
    }
    if (keyword_head && (is_word("delF") || is_word("addF"))) {
      SugarForm s;
      s.kind = is_word("delF") ? SugarKind::del_friend : SugarKind::add_friend;
      ++pos_;
      s.n = nominal();
      s.m = nominal();
      expect_sym("]");
      s.cont = formula();
      return sugar(std::move(s));
    }
    if (keyword_head && is_word("request")) {
      ++pos_;
      SugarForm s;
      s.kind = SugarKind::friend_request;
      if (is_word("private") && peek(1).kind == Token::Kind::ident) {
        ++pos_;
        s.is_private = true;
      }
      s.m = nominal();
      expect_sym("]");
      s.cont = formula();
      return sugar(std::move(s));
    }
    if (keyword_head && is_word("CK")) {
      ++pos_;
      SugarForm s;
      s.kind = SugarKind::common_know;
      s.theta = formula();
      expect_sym("]");
      s.cont = formula();
      return sugar(std::move(s));
    }
    if (keyword_head && is_word("Kbar")) {
      ++pos_;
      SugarForm s;
      s.kind = SugarKind::kbar;
      s.n = nominal();
      expect_sym("]");
      s.cont = formula();
      return sugar(std::move(s));
    }
    if (peek().kind == Token::Kind::ident && sugar_op_ahead()) {
      SugarForm s;
      s.n = nominal();
      const std::string op = toks_[pos_++].text;
      s.psi = formula();
      expect_sym(":");
      if (op == "?" || op == "??") {
        s.kind = SugarKind::ask;
        s.m = nominal();
      } else {
        s.kind = (op == "<!" || op == "<!!") ? SugarKind::sender_announce : SugarKind::receiver_announce;
        s.theta = formula();
      }
      s.is_private = op == "<!!" || op == "!!>" || op == "??";
      expect_sym("]");
      s.cont = formula();
      return sugar(std::move(s));
    }
    Transformation t = assignments("]");
    expect_sym("]");
    return dyn(std::move(t), formula());
  }

  Transformation assignments(const char* closer) {
    Transformation t;
    if (is_sym(closer)) return t;
    t.assignments.push_back(assignment());
    while (is_sym(",")) {
      ++pos_;
      t.assignments.push_back(assignment());
    }
    return t;
  }

  Assignment assignment() {
    const Token& t = peek();
    if (t.kind != Token::Kind::ident) fail("assignment target");
    ++pos_;
    const std::string name = t.text;
    expect_sym(":=");
    if (name == "K") return assign_k(program_expr());
    if (name == "F") return assign_f(program_expr());
    if (name == "D") return assign_d(program_expr());
    if (name == "A") fail("assignable target (K, F, D, proposition or nominal)");
    if (noms_.count(name)) return assign_nominal(name, formula());
    return assign_prop(name, formula());
  }

  Formula gddl() {
    ++pos_;  // gddl
    GddlOperator op;
    while (is_word("action")) {
      ++pos_;
      GddlOperator::Action a;
      a.id = ident();
      expect_sym("{");
      a.effect = assignments("}");
      expect_sym("}");
      op.actions.push_back(std::move(a));
    }
    if (op.actions.empty()) fail("'action'");
    if (!is_word("actual")) fail("'actual'");
    ++pos_;
    op.actual = ident();
    while (peek().kind == Token::Kind::internal) {
      GddlOperator::InternalRelation r;
      r.token = toks_[pos_++].text;
      expect_sym("=");
      expect_sym("{");
      while (is_sym("(")) {
        ++pos_;
        std::string x = ident();
        expect_sym(",");
        std::string y = ident();
        expect_sym(")");
        r.pairs.emplace_back(std::move(x), std::move(y));
        if (!is_sym(",")) break;
        ++pos_;
      }
      expect_sym("}");
      op.internal.push_back(std::move(r));
    }
    if (!is_word("integrate")) fail("'integrate'");
    ++pos_;
    expect_sym("{");
    op.integrate = assignments("}");
    expect_sym("}");
    expect_sym("]");
    return dyn(std::move(op), formula());
  }

  Program program_expr() {
    Program p = program_seq();
    while (is_sym("|")) {
      ++pos_;
      p = choice(p, program_seq());
    }
    return p;
  }
  Program program_seq() {
    Program p = program_postfix();
    while (is_sym(";")) {
      ++pos_;
      p = seq(p, program_postfix());
    }
    return p;
  }
  Program program_postfix() {
    Program p = program_atom();
    while (is_sym("*")) {
      ++pos_;
      p = star(p);
    }
    return p;
  }

  Program program_atom() {
    const std::size_t start = pos_;
    if (!failed_tests_.count(start)) {
      try {
        Formula f = formula();
        expect_sym("?");
        return test(f);
      } catch (const Fail&) {
        failed_tests_.insert(start);
        pos_ = start;
      }
    }
    const Token& t = peek();
    if (t.kind == Token::Kind::internal) {
      ++pos_;
      return internal(t.text);
    }
    if (auto m = modality_of(t)) {
      ++pos_;
      return base(*m);
    }
    if (t.kind == Token::Kind::ident && is_sym("(", 1)) {
      if (t.text == "cutK") {
        pos_ += 2;
        Formula f = formula();
        expect_sym(")");
        return cut_k(f);
      }
      if (t.text == "ck") {
        pos_ += 2;
        Formula f = formula();
        expect_sym(")");
        return ck(f);
      }
      if (t.text == "cutF") {
        pos_ += 2;
        std::string n = nominal();
        expect_sym(",");
        std::string m = nominal();
        expect_sym(")");
        return cut_f(n, m);
      }
      if (t.text == "kbar") {
        pos_ += 2;
        std::string n = nominal();
        expect_sym(")");
        return kbar(n);
      }
    }
    if (is_sym("(")) {
      ++pos_;
      Program p = program_expr();
      expect_sym(")");
      return p;
    }
    fail("program");
  }

  std::vector<Token> toks_;
  NominalSet noms_;
  NominalSet seen_;
  std::set<std::size_t> failed_tests_;
  std::size_t pos_ = 0;
  std::size_t far_pos_ = 0;
  std::set<std::string> far_expected_;
};

/// Nominal positions found by a first pass; errors are left to the second pass.
inline NominalSet collect_nominals(const std::vector<Token>& toks, NominalSet declared, bool as_program) {
  Parser first(toks, declared);
  try {
    if (as_program)
      first.parse_program_all();
    else
      first.parse_formula_all();
  } catch (const ParseError&) {
  }
  for (const auto& n : first.seen_nominals()) declared.insert(n);
  return declared;
}

}  // namespace detail

inline Formula parse_formula(std::string_view text, const NominalSet& nominals = {}) {
  auto toks = detail::lex(text);
  auto all = detail::collect_nominals(toks, nominals, false);
  detail::Parser p(std::move(toks), std::move(all));
  return p.parse_formula_all();
}

inline Program parse_program(std::string_view text, const NominalSet& nominals = {}) {
  auto toks = detail::lex(text);
  auto all = detail::collect_nominals(toks, nominals, true);
  detail::Parser p(std::move(toks), std::move(all));
  return p.parse_program_all();
}

}  // namespace efl
