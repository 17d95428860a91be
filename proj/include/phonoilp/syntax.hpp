#ifndef PHONOILP_SYNTAX_HPP
#define PHONOILP_SYNTAX_HPP

// Textual clause syntax: `head :- lit1, lit2.` with `[a,b|T]` lists,
// uppercase variables, lowercase/quoted/symbolic constants, `%` comments
// and infix `=` in literal position.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phonoilp/term.hpp"

namespace phonoilp {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Variable names to ids for one clause (or one interactive session).
class VarScope {
 public:
  VarId lookup(std::string_view name) {
    if (name == "_") return next_++;
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    ids_.emplace(std::string(name), next_);
    return next_++;
  }
  VarId fresh() { return next_++; }
  void clear() {
    ids_.clear();
    next_ = 0;
  }
  VarId size() const { return next_; }

 private:
  std::unordered_map<std::string, VarId> ids_;
  VarId next_ = 0;
};

namespace detail {

inline bool is_symbol_char(char c) {
  switch (c) {
    case '+': case '-': case '*': case '/': case '\\': case '^': case '<':
    case '>': case '=': case '~': case ':': case '?': case '@': case '#':
    case '&': case '$':
      return true;
    default:
      return false;
  }
}

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Token {
  enum class Kind { Var, Atom, Punct, End, Eof } kind = Kind::Eof;
  std::string text;
  bool quoted = false;
  int line = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_layout();
    Token t;
    t.line = line_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (c == '.') {
      char n = pos_ + 1 < src_.size() ? src_[pos_ + 1] : ' ';
      if (std::isspace(static_cast<unsigned char>(n)) || n == '%') {
        ++pos_;
        t.kind = Token::Kind::End;
        t.text = ".";
        return t;
      }
      throw ParseError("unexpected '.'", line_);
    }
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|') {
      ++pos_;
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      if (c == '[' && pos_ < src_.size() && src_[pos_] == ']') {
        ++pos_;
        t.kind = Token::Kind::Atom;
        t.text = "[]";
      }
      return t;
    }
    if (c == '\'') return quoted();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
          std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
        ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
      t.kind = Token::Kind::Atom;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Token::Kind::Var
                                                                          : Token::Kind::Atom;
      return t;
    }
    if (is_symbol_char(c)) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && is_symbol_char(src_[pos_])) ++pos_;
      t.kind = Token::Kind::Atom;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_);
  }

 private:
  void skip_layout() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Token quoted() {
    Token t;
    t.line = line_;
    t.kind = Token::Kind::Atom;
    t.quoted = true;
    ++pos_;
    while (true) {
      if (pos_ >= src_.size()) throw ParseError("unterminated quoted atom", t.line);
      char c = src_[pos_++];
      if (c == '\'') {
        if (pos_ < src_.size() && src_[pos_] == '\'') {
          t.text += '\'';
          ++pos_;
          continue;
        }
        break;
      }
      if (c == '\n') ++line_;
      t.text += c;
    }
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, VarScope& scope) : lexer_(src), scope_(scope) { advance(); }

  bool at_eof() const { return tok_.kind == Token::Kind::Eof; }
  bool at_end() const { return tok_.kind == Token::Kind::End; }

  /// A primary term optionally followed by infix `=`.
  Term term() {
    Term lhs = primary();
    if (tok_.kind == Token::Kind::Atom && !tok_.quoted && tok_.text == "=") {
      advance();
      return Term::compound(sym::equals(), {lhs, primary()});
    }
    return lhs;
  }

  Term primary() {
    Token t = tok_;
    switch (t.kind) {
      case Token::Kind::Var:
        advance();
        return Term::variable(scope_.lookup(t.text));
      case Token::Kind::Punct:
        if (t.text == "[") {
          advance();
          return list_tail_or_items();
        }
        if (t.text == "(") {
          advance();
          Term inner = term();
          expect(")");
          return inner;
        }
        throw ParseError("unexpected '" + t.text + "'", t.line);
      case Token::Kind::Atom: {
        advance();
        if (!t.quoted && (t.text == "+" || t.text == "-" || t.text == "#") &&
            (tok_.kind == Token::Kind::Atom || tok_.kind == Token::Kind::Var)) {
          return Term::compound(t.text, {primary()});
        }
        if (is_punct("(")) {
          advance();
          std::vector<Term> args;
          args.push_back(term());
          while (is_punct(",")) {
            advance();
            args.push_back(term());
          }
          expect(")");
          return Term::compound(t.text, std::move(args));
        }
        return Term::constant(t.text);
      }
      default:
        throw ParseError("unexpected end of input", t.line);
    }
  }

  Literal literal() {
    int line = tok_.line;
    Term lhs = term();
    if (lhs.is_variable()) throw ParseError("variable in literal position", line);
    Literal l;
    l.predicate = lhs.symbol();
    l.args.assign(lhs.args().begin(), lhs.args().end());
    return l;
  }

  Clause clause() {
    if (is_atom(":-")) advance();
    Clause c(literal());
    if (is_atom(":-")) {
      advance();
      c.body.push_back(literal());
      while (is_punct(",")) {
        advance();
        c.body.push_back(literal());
      }
    }
    if (!at_end() && !at_eof()) throw ParseError("expected '.' after clause, got '" + tok_.text + "'", tok_.line);
    if (at_end()) advance();
    return c;
  }

  void expect_eof() {
    if (at_end()) advance();
    if (!at_eof()) throw ParseError("trailing input '" + tok_.text + "'", tok_.line);
  }

 private:
  Term list_tail_or_items() {
    std::vector<Term> items;
    items.push_back(term());
    while (is_punct(",")) {
      advance();
      items.push_back(term());
    }
    Term tail = nil();
    if (is_punct("|")) {
      advance();
      tail = term();
    }
    expect("]");
    return make_list(std::span<const Term>(items), tail);
  }

  bool is_punct(std::string_view p) const { return tok_.kind == Token::Kind::Punct && tok_.text == p; }
  bool is_atom(std::string_view a) const {
    return tok_.kind == Token::Kind::Atom && !tok_.quoted && tok_.text == a;
  }
  void expect(std::string_view p) {
    if (!is_punct(p)) throw ParseError("expected '" + std::string(p) + "', got '" + tok_.text + "'", tok_.line);
    advance();
  }
  void advance() { tok_ = lexer_.next(); }

  Lexer lexer_;
  VarScope& scope_;
  Token tok_;
};

}  // namespace detail

inline Term parse_term(std::string_view src, VarScope& scope) {
  detail::Parser p(src, scope);
  Term t = p.term();
  p.expect_eof();
  return t;
}
inline Term parse_term(std::string_view src) {
  VarScope scope;
  return parse_term(src, scope);
}

inline Literal parse_literal(std::string_view src, VarScope& scope) {
  detail::Parser p(src, scope);
  Literal l = p.literal();
  p.expect_eof();
  return l;
}
inline Literal parse_literal(std::string_view src) {
  VarScope scope;
  return parse_literal(src, scope);
}

inline Clause parse_clause(std::string_view src, VarScope& scope) {
  detail::Parser p(src, scope);
  Clause c = p.clause();
  p.expect_eof();
  return c;
}
inline Clause parse_clause(std::string_view src) {
  VarScope scope;
  return parse_clause(src, scope);
}

/// Parse a sequence of clauses; each clause gets its own variable scope.
inline std::vector<Clause> parse_program(std::string_view src) {
  std::vector<Clause> out;
  VarScope scope;
  detail::Parser p(src, scope);
  while (!p.at_eof()) {
    scope.clear();
    out.push_back(p.clause());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

/// Names variables A..Z, A1..Z1, ... in order of first appearance.
class VarNamer {
 public:
  std::string name(VarId v) {
    auto it = names_.find(v);
    if (it != names_.end()) return it->second;
    std::size_t n = names_.size();
    std::string s(1, static_cast<char>('A' + n % 26));
    if (n >= 26) s += std::to_string(n / 26);
    names_.emplace(v, s);
    return s;
  }

 private:
  std::unordered_map<VarId, std::string> names_;
};

namespace detail {

inline bool is_plain_atom(const std::string& s) {
  if (s.empty()) return false;
  if (s == "[]") return true;
  if (std::islower(static_cast<unsigned char>(s[0]))) {
    for (char c : s)
      if (!is_ident_char(c)) return false;
    return true;
  }
  if (std::isdigit(static_cast<unsigned char>(s[0]))) {
    bool dot = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '.') {
        if (dot || i + 1 == s.size()) return false;
        dot = true;
      } else if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        return false;
      }
    }
    return true;
  }
  return false;
}

inline bool is_symbol_atom(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_symbol_char(c)) return false;
  return s != ":-";
}

inline void write_atom(std::string& out, const std::string& s, bool quote_symbolic) {
  if (is_plain_atom(s) || (!quote_symbolic && is_symbol_atom(s))) {
    out += s;
    return;
  }
  out += '\'';
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
}

inline void write_term(std::string& out, const Term& t, VarNamer& names, bool quote_symbolic = false) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      out += names.name(t.var());
      return;
    case Term::Kind::Constant:
      write_atom(out, symbol_name(t.symbol()), quote_symbolic);
      return;
    case Term::Kind::Compound:
      break;
  }
  if (is_cons(t)) {
    out += '[';
    const Term* cur = &t;
    bool first = true;
    while (is_cons(*cur)) {
      if (!first) out += ',';
      first = false;
      write_term(out, cur->args()[0], names);
      cur = &cur->args()[1];
    }
    if (!is_nil(*cur)) {
      out += '|';
      write_term(out, *cur, names);
    }
    out += ']';
    return;
  }
  const std::string& f = symbol_name(t.symbol());
  if (t.arity() == 1 && (f == "+" || f == "-" || f == "#")) {
    out += f;
    write_term(out, t.args()[0], names);
    return;
  }
  write_atom(out, f, true);
  out += '(';
  bool first = true;
  for (const auto& a : t.args()) {
    if (!first) out += ',';
    first = false;
    write_term(out, a, names);
  }
  out += ')';
}

inline void write_literal(std::string& out, const Literal& l, VarNamer& names) {
  if (l.is_equality()) {
    std::string lhs, rhs;
    write_term(lhs, l.args[0], names, true);
    write_term(rhs, l.args[1], names, true);
    // Keep `=` from fusing with neighbouring symbol characters.
    bool spaced = is_symbol_char(lhs.back()) || is_symbol_char(rhs.front());
    out += lhs;
    out += spaced ? " = " : "=";
    out += rhs;
    return;
  }
  write_atom(out, symbol_name(l.predicate), true);
  if (l.args.empty()) return;
  out += '(';
  bool first = true;
  for (const auto& a : l.args) {
    if (!first) out += ',';
    first = false;
    write_term(out, a, names);
  }
  out += ')';
}

}  // namespace detail

inline std::string to_string(const Term& t, VarNamer& names) {
  std::string out;
  detail::write_term(out, t, names);
  return out;
}
inline std::string to_string(const Term& t) {
  VarNamer names;
  return to_string(t, names);
}

inline std::string to_string(const Literal& l, VarNamer& names) {
  std::string out;
  detail::write_literal(out, l, names);
  return out;
}
inline std::string to_string(const Literal& l) {
  VarNamer names;
  return to_string(l, names);
}

/// `head :- b1, b2.` including the terminating period.
inline std::string to_string(const Clause& c) {
  VarNamer names;
  std::string out;
  detail::write_literal(out, c.head, names);
  if (!c.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) out += ", ";
      detail::write_literal(out, c.body[i], names);
    }
  }
  out += '.';
  return out;
}

}  // namespace phonoilp

#endif  // PHONOILP_SYNTAX_HPP
