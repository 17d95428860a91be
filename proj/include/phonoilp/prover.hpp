#ifndef PHONOILP_PROVER_HPP
#define PHONOILP_PROVER_HPP

// Depth-bounded SLD resolution over definite programs. Goals are solved
// left to right, clauses tried in program order, and the depth bound counts
// resolution steps along a branch. Unification always performs the occurs
// check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "phonoilp/term.hpp"

namespace phonoilp {

/// Indexed, immutable-after-construction clause store.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Clause> clauses) {
    for (auto& c : clauses) add(std::move(c));
  }

  void add(Clause c) {
    auto idx = static_cast<std::uint32_t>(entries_.size());
    VarId span = var_span(c);
    entries_.push_back({std::move(c), span});
    const Literal& head = entries_.back().clause.head;
    auto& pi = preds_[pred_key(head.predicate, head.arity())];
    if (pi.by_arg.empty()) {
      pi.by_arg.resize(head.arity());
      pi.var_at_arg.resize(head.arity());
    }
    pi.all.push_back(idx);
    for (std::size_t j = 0; j < head.arity(); ++j) {
      auto key = index_key(head.args[j]);
      if (!key) {
        pi.var_at_arg[j].push_back(idx);
        for (auto& [k, list] : pi.by_arg[j]) list.push_back(idx);
      } else {
        auto it = pi.by_arg[j].find(*key);
        if (it == pi.by_arg[j].end()) it = pi.by_arg[j].emplace(*key, pi.var_at_arg[j]).first;
        it->second.push_back(idx);
      }
    }
  }

  std::size_t size() const { return entries_.size(); }
  const Clause& clause(std::uint32_t i) const { return entries_[i].clause; }
  VarId var_span_of(std::uint32_t i) const { return entries_[i].span; }

  std::vector<Clause> clauses() const {
    std::vector<Clause> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.clause);
    return out;
  }

  bool defines(Symbol pred, std::size_t arity) const { return preds_.contains(pred_key(pred, arity)); }

  /// Candidate clause indices for a call; `arg_keys[j]` is the index key of
  /// the (dereferenced) j-th goal argument, or nullopt when unbound.
  const std::vector<std::uint32_t>* candidates(Symbol pred, std::size_t arity,
                                               std::span<const std::optional<std::uint64_t>> arg_keys) const {
    auto it = preds_.find(pred_key(pred, arity));
    if (it == preds_.end()) return nullptr;
    const PredIndex& pi = it->second;
    const std::vector<std::uint32_t>* best = &pi.all;
    for (std::size_t j = 0; j < arg_keys.size(); ++j) {
      if (!arg_keys[j]) continue;
      auto kit = pi.by_arg[j].find(*arg_keys[j]);
      const std::vector<std::uint32_t>* list = kit == pi.by_arg[j].end() ? &pi.var_at_arg[j] : &kit->second;
      if (list->size() < best->size()) best = list;
    }
    return best;
  }

  static std::optional<std::uint64_t> index_key(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Variable:
        return std::nullopt;
      case Term::Kind::Constant:
        return (static_cast<std::uint64_t>(t.symbol()) << 2) | 1u;
      case Term::Kind::Compound:
        return (static_cast<std::uint64_t>(t.symbol()) << 34) | (static_cast<std::uint64_t>(t.arity()) << 2) | 2u;
    }
    return std::nullopt;
  }

 private:
  struct Entry {
    Clause clause;
    VarId span;
  };
  struct PredIndex {
    std::vector<std::uint32_t> all;
    std::vector<std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>> by_arg;
    std::vector<std::vector<std::uint32_t>> var_at_arg;
  };
  static std::uint64_t pred_key(Symbol p, std::size_t arity) {
    return (static_cast<std::uint64_t>(p) << 16) | static_cast<std::uint64_t>(arity);
  }

  std::vector<Entry> entries_;
  std::unordered_map<std::uint64_t, PredIndex> preds_;
};

enum class DeriveStatus { proved, not_proved, depth_exhausted };

struct DeriveResult {
  DeriveStatus status = DeriveStatus::not_proved;
  /// Bindings of the goal's variables in the first proof found.
  Substitution answer;

  bool proved() const { return status == DeriveStatus::proved; }
};

/// Resolution engine over a stack of program layers, searched in order.
/// Not thread-safe; create one per thread. Programs must outlive it.
class Prover {
 public:
  Prover(std::vector<const Program*> layers, int depth) : layers_(std::move(layers)), depth_(depth) {}

  DeriveResult derive(const Literal& goal) {
    DeriveResult result;
    auto status = solve_top(goal, [&](Prover& p) {
      result.answer = p.answer_for(goal);
      return true;
    });
    result.status = status;
    if (status != DeriveStatus::proved) result.answer.clear();
    return result;
  }

  bool proves(const Literal& goal) {
    return solve_top(goal, [](Prover&) { return true; }) == DeriveStatus::proved;
  }

  /// Enumerate answer substitutions (up to `limit`) in derivation order.
  /// Returns whether the depth bound was hit on some branch.
  bool for_each_answer(const Literal& goal, std::size_t limit,
                       const std::function<void(const Substitution&)>& f) {
    std::size_t seen = 0;
    if (limit == 0) return false;
    solve_top(goal, [&](Prover& p) {
      f(p.answer_for(goal));
      return ++seen >= limit;
    });
    return exhausted_;
  }

  int depth() const { return depth_; }

  // Low-level unification on the binding store, used by unify() below.
  bool unify_in_store(const Term* a, std::uint32_t ba, const Term* b, std::uint32_t bb) {
    return unify(a, ba, b, bb);
  }
  void reserve_slots(std::size_t n) {
    if (slots_.size() < n) slots_.resize(n);
  }
  Term resolve_slot_term(const Term& t, std::uint32_t base) const { return resolve(&t, base); }

 private:
  struct Binding {
    const Term* term = nullptr;
    std::uint32_t base = 0;
    bool bound = false;
  };
  struct GoalNode {
    const Literal* lit;
    std::uint32_t base;
    std::int32_t next;
  };

  template <class F>
  DeriveStatus solve_top(const Literal& goal, F&& on_solution) {
    slots_.clear();
    trail_.clear();
    arena_.clear();
    exhausted_ = false;
    VarId span = 0;
    for_each_var(goal, [&](VarId v) { span = std::max<VarId>(span, v + 1); });
    slots_.resize(span);
    arena_.push_back({&goal, 0, -1});
    std::function<bool(Prover&)> cb = std::forward<F>(on_solution);
    on_solution_ = &cb;
    bool found = solve(0, depth_);
    on_solution_ = nullptr;
    if (found || solutions_ > 0) {
      solutions_ = 0;
      return DeriveStatus::proved;
    }
    return exhausted_ ? DeriveStatus::depth_exhausted : DeriveStatus::not_proved;
  }

  bool solve(std::int32_t goals, int steps_left) {
    if (goals < 0) {
      ++solutions_;
      return (*on_solution_)(*this);
    }
    GoalNode node = arena_[goals];
    const Literal& lit = *node.lit;
    if (lit.is_equality()) {
      auto mark = trail_.size();
      if (unify(&lit.args[0], node.base, &lit.args[1], node.base) && solve(node.next, steps_left)) return true;
      undo(mark);
      return false;
    }
    if (steps_left == 0) {
      exhausted_ = true;
      return false;
    }
    constexpr std::size_t kMaxIndexed = 8;
    std::array<std::optional<std::uint64_t>, kMaxIndexed> key_store{};
    std::size_t nkeys = std::min(lit.arity(), kMaxIndexed);
    for (std::size_t j = 0; j < nkeys; ++j) {
      auto [t, b] = deref(&lit.args[j], node.base);
      key_store[j] = Program::index_key(*t);
    }
    std::span<const std::optional<std::uint64_t>> keys(key_store.data(), nkeys);
    for (const Program* layer : layers_) {
      const auto* cands = layer->candidates(lit.predicate, lit.arity(), keys);
      if (!cands) continue;
      for (std::uint32_t idx : *cands) {
        const Clause& c = layer->clause(idx);
        auto trail_mark = trail_.size();
        auto slot_mark = static_cast<std::uint32_t>(slots_.size());
        auto arena_mark = arena_.size();
        slots_.resize(slot_mark + layer->var_span_of(idx));
        bool ok = true;
        for (std::size_t j = 0; j < lit.arity() && ok; ++j)
          ok = unify(&lit.args[j], node.base, &c.head.args[j], slot_mark);
        if (ok) {
          std::int32_t g = node.next;
          for (auto it = c.body.rbegin(); it != c.body.rend(); ++it) {
            arena_.push_back({&*it, slot_mark, g});
            g = static_cast<std::int32_t>(arena_.size() - 1);
          }
          if (solve(g, steps_left - 1)) return true;
        }
        undo(trail_mark);
        slots_.resize(slot_mark);
        arena_.resize(arena_mark);
      }
    }
    return false;
  }

  std::pair<const Term*, std::uint32_t> deref(const Term* t, std::uint32_t base) const {
    while (t->is_variable()) {
      const Binding& b = slots_[base + t->var()];
      if (!b.bound) break;
      t = b.term;
      base = b.base;
    }
    return {t, base};
  }

  bool occurs(std::uint32_t slot, const Term* t, std::uint32_t base) const {
    auto [u, ub] = deref(t, base);
    if (u->is_variable()) return ub + u->var() == slot;
    for (const auto& a : u->args())
      if (occurs(slot, &a, ub)) return true;
    return false;
  }

  void bind(std::uint32_t slot, const Term* t, std::uint32_t base) {
    slots_[slot] = {t, base, true};
    trail_.push_back(slot);
  }

  bool unify(const Term* a, std::uint32_t ba, const Term* b, std::uint32_t bb) {
    std::tie(a, ba) = deref(a, ba);
    std::tie(b, bb) = deref(b, bb);
    if (a->is_variable()) {
      std::uint32_t sa = ba + a->var();
      if (b->is_variable() && bb + b->var() == sa) return true;
      if (occurs(sa, b, bb)) return false;
      bind(sa, b, bb);
      return true;
    }
    if (b->is_variable()) {
      std::uint32_t sb = bb + b->var();
      if (occurs(sb, a, ba)) return false;
      bind(sb, a, ba);
      return true;
    }
    if (a->kind() != b->kind() || a->symbol() != b->symbol() || a->arity() != b->arity()) return false;
    auto xs = a->args();
    auto ys = b->args();
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (!unify(&xs[i], ba, &ys[i], bb)) return false;
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      slots_[trail_.back()].bound = false;
      trail_.pop_back();
    }
  }

  Term resolve(const Term* t, std::uint32_t base) const {
    auto [u, ub] = deref(t, base);
    if (u->is_variable()) return Term::variable(ub + u->var());
    if (u->is_constant()) return *u;
    std::vector<Term> args;
    args.reserve(u->arity());
    for (const auto& a : u->args()) args.push_back(resolve(&a, ub));
    return Term::compound(u->symbol(), std::move(args));
  }

  Substitution answer_for(const Literal& goal) const {
    Substitution s;
    for_each_var(goal, [&](VarId v) {
      if (s.contains(v)) return;
      Term var = Term::variable(v);
      Term r = resolve(&var, 0);
      if (!(r == var)) s.emplace(v, r);
    });
    return s;
  }

  std::vector<const Program*> layers_;
  int depth_;
  std::vector<Binding> slots_;
  std::vector<std::uint32_t> trail_;
  std::vector<GoalNode> arena_;
  std::function<bool(Prover&)>* on_solution_ = nullptr;
  std::size_t solutions_ = 0;
  bool exhausted_ = false;
};

/// Depth-bounded derivation of `goal` from `program`.
inline DeriveResult derives(const Program& program, const Literal& goal, int depth) {
  Prover p({&program}, depth);
  return p.derive(goal);
}
inline DeriveResult derives(const std::vector<Clause>& program, const Literal& goal, int depth) {
  Program prog(program);
  return derives(prog, goal, depth);
}

/// Most general unifier of two terms sharing one variable namespace.
inline std::optional<Substitution> unify(const Term& a, const Term& b) {
  VarId span = 0;
  auto bump = [&](VarId v) { span = std::max<VarId>(span, v + 1); };
  for_each_var(a, bump);
  for_each_var(b, bump);
  Prover p({}, 1);
  p.reserve_slots(span);
  if (!p.unify_in_store(&a, 0, &b, 0)) return std::nullopt;
  Substitution s;
  auto collect = [&](VarId v) {
    if (s.contains(v)) return;
    Term var = Term::variable(v);
    Term r = p.resolve_slot_term(var, 0);
    if (!(r == var)) s.emplace(v, r);
  };
  for_each_var(a, collect);
  for_each_var(b, collect);
  return s;
}

}  // namespace phonoilp

#endif  // PHONOILP_PROVER_HPP
