#ifndef PHONOILP_MODES_HPP
#define PHONOILP_MODES_HPP

// Progol-style mode declarations:
//   modeh(Recall, prefix(+phone,+context,+context)).
//   modeb(Recall, manner(#value,+phone)).
// `+T` input, `-T` output, `#T` constant of type T. Recall is a positive
// integer or `*` (unbounded); the one-argument form means `*`.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phonoilp/syntax.hpp"

namespace phonoilp {

class ModeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ArgRole { input, output, constant, fixed };

struct ArgMode {
  ArgRole role = ArgRole::input;
  Symbol type = 0;
  /// Literal term for `fixed` positions (schema constants such as '^').
  Term fixed;
};

struct ModeDeclaration {
  enum class Kind { head, body };

  Kind kind = Kind::body;
  Symbol predicate = 0;
  std::vector<ArgMode> args;
  /// nullopt means unbounded (`*`).
  std::optional<std::size_t> recall;

  std::size_t arity() const { return args.size(); }
  std::size_t recall_limit() const { return recall.value_or(static_cast<std::size_t>(-1)); }
};

inline ModeDeclaration mode_from_literal(const Literal& decl) {
  const std::string& name = symbol_name(decl.predicate);
  ModeDeclaration m;
  if (name == "modeh") {
    m.kind = ModeDeclaration::Kind::head;
  } else if (name == "modeb") {
    m.kind = ModeDeclaration::Kind::body;
  } else {
    throw ModeError("not a mode declaration: " + to_string(decl));
  }
  const Term* schema = nullptr;
  if (decl.args.size() == 1) {
    schema = &decl.args[0];
  } else if (decl.args.size() == 2) {
    const Term& r = decl.args[0];
    if (!r.is_constant()) throw ModeError("bad recall in " + to_string(decl));
    const std::string& rs = symbol_name(r.symbol());
    if (rs != "*") {
      std::size_t n = 0;
      try {
        n = std::stoul(rs);
      } catch (const std::logic_error&) {
        throw ModeError("bad recall '" + rs + "'");
      }
      if (n == 0) throw ModeError("recall must be positive");
      m.recall = n;
    }
    schema = &decl.args[1];
  } else {
    throw ModeError("mode declaration takes 1 or 2 arguments: " + to_string(decl));
  }
  if (schema->is_variable()) throw ModeError("mode schema must be a literal");
  m.predicate = schema->symbol();
  for (const auto& a : schema->args()) {
    ArgMode am;
    const std::string& f = a.is_variable() ? std::string() : symbol_name(a.symbol());
    if (a.is_compound() && a.arity() == 1 && (f == "+" || f == "-" || f == "#")) {
      const Term& type = a.args()[0];
      if (!type.is_constant()) throw ModeError("mode type must be a constant in " + to_string(decl));
      am.role = f == "+" ? ArgRole::input : f == "-" ? ArgRole::output : ArgRole::constant;
      am.type = type.symbol();
    } else if (a.is_ground()) {
      am.role = ArgRole::fixed;
      am.fixed = a;
    } else {
      throw ModeError("argument without a role in " + to_string(decl));
    }
    m.args.push_back(std::move(am));
  }
  return m;
}

inline ModeDeclaration parse_mode(std::string_view text) { return mode_from_literal(parse_literal(text)); }

/// Parses a mode file: one declaration per clause, optionally written as a
/// `:- modeb(...)` directive.
inline std::vector<ModeDeclaration> parse_modes(std::string_view text) {
  std::vector<ModeDeclaration> out;
  for (const auto& c : parse_program(text)) {
    if (!c.body.empty()) throw ModeError("mode declarations cannot have bodies");
    out.push_back(mode_from_literal(c.head));
  }
  return out;
}

inline std::string to_string(const ModeDeclaration& m) {
  std::string out = m.kind == ModeDeclaration::Kind::head ? "modeh(" : "modeb(";
  out += m.recall ? std::to_string(*m.recall) : "*";
  out += ", ";
  std::vector<Term> args;
  for (const auto& a : m.args) {
    switch (a.role) {
      case ArgRole::input: args.push_back(Term::compound("+", {Term::constant(a.type)})); break;
      case ArgRole::output: args.push_back(Term::compound("-", {Term::constant(a.type)})); break;
      case ArgRole::constant: args.push_back(Term::compound("#", {Term::constant(a.type)})); break;
      case ArgRole::fixed: args.push_back(a.fixed); break;
    }
  }
  Literal schema(m.predicate, std::move(args));
  out += to_string(schema);
  out += ").";
  return out;
}

}  // namespace phonoilp

#endif  // PHONOILP_MODES_HPP
