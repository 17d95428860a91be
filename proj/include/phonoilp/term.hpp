#ifndef PHONOILP_TERM_HPP
#define PHONOILP_TERM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "phonoilp/symbol.hpp"

namespace phonoilp {

using VarId = std::uint32_t;

/// First-order term: variable, constant, or compound. Immutable; copies
/// share argument storage.
class Term {
 public:
  enum class Kind : std::uint8_t { Variable, Constant, Compound };

  Term() : kind_(Kind::Constant), value_(sym::nil()) {}

  static Term variable(VarId id) { return Term(Kind::Variable, id, nullptr); }
  static Term constant(Symbol name) { return Term(Kind::Constant, name, nullptr); }
  static Term constant(std::string_view name) { return constant(intern(name)); }
  static Term compound(Symbol functor, std::vector<Term> args) {
    if (args.empty()) return constant(functor);
    return Term(Kind::Compound, functor,
                std::make_shared<const std::vector<Term>>(std::move(args)));
  }
  static Term compound(std::string_view functor, std::vector<Term> args) {
    return compound(intern(functor), std::move(args));
  }

  Kind kind() const { return kind_; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  bool is_compound() const { return kind_ == Kind::Compound; }

  VarId var() const { return value_; }
  /// Constant name or compound functor.
  Symbol symbol() const { return value_; }
  std::span<const Term> args() const {
    if (!args_) return {};
    return {args_->data(), args_->size()};
  }
  std::size_t arity() const { return args_ ? args_->size() : 0; }

  bool is_ground() const {
    if (is_variable()) return false;
    for (const auto& a : args())
      if (!a.is_ground()) return false;
    return true;
  }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.kind_ != b.kind_ || a.value_ != b.value_) return false;
    if (a.args_ == b.args_) return true;
    if (a.arity() != b.arity()) return false;
    auto x = a.args();
    auto y = b.args();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!(x[i] == y[i])) return false;
    return true;
  }

  friend bool operator<(const Term& a, const Term& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    if (a.value_ != b.value_) return a.value_ < b.value_;
    auto x = a.args();
    auto y = b.args();
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < y[i]) return true;
      if (y[i] < x[i]) return false;
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = (static_cast<std::size_t>(kind_) << 32) ^ value_;
    for (const auto& a : args()) h = h * 1000003u ^ a.hash();
    return h;
  }

 private:
  Term(Kind k, std::uint32_t v, std::shared_ptr<const std::vector<Term>> args)
      : kind_(k), value_(v), args_(std::move(args)) {}

  Kind kind_;
  std::uint32_t value_;
  std::shared_ptr<const std::vector<Term>> args_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Lists are built from '.'/2 cells terminated by '[]'.
inline Term nil() { return Term::constant(sym::nil()); }
inline Term cons(Term head, Term tail) {
  return Term::compound(sym::cons(), {std::move(head), std::move(tail)});
}
inline Term make_list(std::span<const Term> items, Term tail = nil()) {
  Term out = std::move(tail);
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons(*it, out);
  return out;
}
inline Term make_list(const std::vector<Term>& items) {
  return make_list(std::span<const Term>(items));
}
inline Term make_atom_list(const std::vector<std::string>& names) {
  std::vector<Term> items;
  items.reserve(names.size());
  for (const auto& n : names) items.push_back(Term::constant(n));
  return make_list(items);
}
inline bool is_cons(const Term& t) {
  return t.is_compound() && t.symbol() == sym::cons() && t.arity() == 2;
}
inline bool is_nil(const Term& t) { return t.is_constant() && t.symbol() == sym::nil(); }

/// Elements of a proper list, or nullopt when `t` is not nil-terminated.
inline std::optional<std::vector<Term>> list_elements(const Term& t) {
  std::vector<Term> out;
  const Term* cur = &t;
  while (is_cons(*cur)) {
    out.push_back(cur->args()[0]);
    cur = &cur->args()[1];
  }
  if (!is_nil(*cur)) return std::nullopt;
  return out;
}

struct Literal {
  Symbol predicate = 0;
  std::vector<Term> args;

  Literal() = default;
  Literal(Symbol p, std::vector<Term> a) : predicate(p), args(std::move(a)) {}
  Literal(std::string_view p, std::vector<Term> a) : predicate(intern(p)), args(std::move(a)) {}

  std::size_t arity() const { return args.size(); }
  bool is_ground() const {
    for (const auto& a : args)
      if (!a.is_ground()) return false;
    return true;
  }
  bool is_equality() const { return predicate == sym::equals() && args.size() == 2; }
  Term as_term() const { return Term::compound(predicate, args); }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend bool operator<(const Literal& a, const Literal& b) {
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    return a.args < b.args;
  }
  std::size_t hash() const {
    std::size_t h = predicate;
    for (const auto& a : args) h = h * 1000003u ^ a.hash();
    return h;
  }
};

struct LiteralHash {
  std::size_t operator()(const Literal& l) const { return l.hash(); }
};

/// Definite clause; a fact has an empty body.
struct Clause {
  Literal head;
  std::vector<Literal> body;

  Clause() = default;
  explicit Clause(Literal h, std::vector<Literal> b = {}) : head(std::move(h)), body(std::move(b)) {}

  bool is_fact() const { return body.empty(); }
  friend bool operator==(const Clause&, const Clause&) = default;
};

using Substitution = std::map<VarId, Term>;

inline Term substitute(const Substitution& s, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = s.find(t.var());
      return it == s.end() ? t : it->second;
    }
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Compound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const auto& a : t.args()) args.push_back(substitute(s, a));
      return Term::compound(t.symbol(), std::move(args));
    }
  }
  return t;
}

inline Literal substitute(const Substitution& s, const Literal& l) {
  Literal out;
  out.predicate = l.predicate;
  out.args.reserve(l.args.size());
  for (const auto& a : l.args) out.args.push_back(substitute(s, a));
  return out;
}

inline Clause substitute(const Substitution& s, const Clause& c) {
  Clause out(substitute(s, c.head));
  out.body.reserve(c.body.size());
  for (const auto& b : c.body) out.body.push_back(substitute(s, b));
  return out;
}

/// Visit every variable occurrence in order.
inline void for_each_var(const Term& t, const std::function<void(VarId)>& f) {
  if (t.is_variable()) {
    f(t.var());
    return;
  }
  for (const auto& a : t.args()) for_each_var(a, f);
}
inline void for_each_var(const Literal& l, const std::function<void(VarId)>& f) {
  for (const auto& a : l.args) for_each_var(a, f);
}
inline void for_each_var(const Clause& c, const std::function<void(VarId)>& f) {
  for_each_var(c.head, f);
  for (const auto& b : c.body) for_each_var(b, f);
}

/// One past the largest variable id in the clause (0 if ground).
inline VarId var_span(const Clause& c) {
  VarId n = 0;
  for_each_var(c, [&](VarId v) { n = std::max<VarId>(n, v + 1); });
  return n;
}

/// Renumber variables 0..n-1 by first occurrence.
inline Clause normalize_vars(const Clause& c) {
  Substitution s;
  VarId next = 0;
  for_each_var(c, [&](VarId v) {
    if (!s.contains(v)) s.emplace(v, Term::variable(next++));
  });
  return substitute(s, c);
}

}  // namespace phonoilp

template <>
struct std::hash<phonoilp::Term> {
  std::size_t operator()(const phonoilp::Term& t) const { return t.hash(); }
};
template <>
struct std::hash<phonoilp::Literal> {
  std::size_t operator()(const phonoilp::Literal& l) const { return l.hash(); }
};

#endif  // PHONOILP_TERM_HPP
