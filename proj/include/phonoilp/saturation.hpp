#ifndef PHONOILP_SATURATION_HPP
#define PHONOILP_SATURATION_HPP

// Bottom-clause construction. Ground terms met while proving mode instances
// are mapped to clause variables by (term, type); a body literal enters at
// the first layer where all of its inputs are available.

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "phonoilp/modes.hpp"
#include "phonoilp/prover.hpp"
#include "phonoilp/search_params.hpp"

namespace phonoilp {

class RejectedSeed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ground term standing behind a bottom-clause variable.
struct TypedTerm {
  Term term;
  Symbol type = 0;
  /// Layer at which the term became available (0 for head terms).
  int depth = 0;
};

struct BottomLiteral {
  Literal literal;
  /// Saturation layer that produced the literal (1-based).
  int depth = 1;
  std::size_t mode_index = 0;
  std::vector<VarId> inputs;
  std::vector<VarId> outputs;
};

struct BottomClause {
  /// Head plus body literals in discovery order (layer, then mode order).
  Clause clause;
  Literal seed;
  std::vector<BottomLiteral> literals;
  /// Indexed by variable id.
  std::vector<TypedTerm> var_terms;
  std::vector<VarId> head_vars;

  std::size_t size() const { return literals.size(); }
};

namespace detail {

class Saturator {
 public:
  Saturator(const Literal& seed, const Program& background, std::span<const ModeDeclaration> modes,
            const SearchParams& params)
      : seed_(seed), background_(background), modes_(modes), params_(params) {}

  BottomClause run() {
    BottomClause out;
    out.seed = seed_;
    out.clause.head = make_head();
    out.head_vars = head_vars_;
    Program seed_program({Clause(seed_)});
    Prover prover({&background_, &seed_program}, params_.derivation_depth);

    for (int layer = 1; layer <= params_.variable_depth; ++layer) {
      std::size_t visible = terms_.size();
      for (std::size_t mi = 0; mi < modes_.size(); ++mi) {
        const ModeDeclaration& mode = modes_[mi];
        if (mode.kind != ModeDeclaration::Kind::body) continue;
        expand_mode(mi, mode, layer, visible, prover, out);
      }
    }
    out.var_terms = terms_;
    return out;
  }

 private:
  Literal make_head() {
    for (const auto& mode : modes_) {
      if (mode.kind != ModeDeclaration::Kind::head) continue;
      if (mode.predicate != seed_.predicate || mode.arity() != seed_.arity()) continue;
      bool ok = true;
      for (std::size_t i = 0; i < mode.arity() && ok; ++i) {
        const ArgMode& am = mode.args[i];
        if (am.role == ArgRole::fixed) ok = am.fixed == seed_.args[i];
      }
      if (!ok) continue;
      Literal head;
      head.predicate = seed_.predicate;
      for (std::size_t i = 0; i < mode.arity(); ++i) {
        const ArgMode& am = mode.args[i];
        const Term& t = seed_.args[i];
        if (am.role == ArgRole::input || am.role == ArgRole::output) {
          VarId v = var_for(t, am.type, 0);
          head.args.push_back(Term::variable(v));
          if (std::find(head_vars_.begin(), head_vars_.end(), v) == head_vars_.end()) head_vars_.push_back(v);
        } else {
          head.args.push_back(t);
        }
      }
      return head;
    }
    throw RejectedSeed("seed " + to_string(seed_) + " matches no head mode");
  }

  VarId var_for(const Term& t, Symbol type, int depth) {
    auto key = std::make_pair(t, type);
    auto it = vars_.find(key);
    if (it != vars_.end()) return it->second;
    auto v = static_cast<VarId>(terms_.size());
    terms_.push_back({t, type, depth});
    vars_.emplace(std::move(key), v);
    return v;
  }

  void expand_mode(std::size_t mi, const ModeDeclaration& mode, int layer, std::size_t visible,
                   Prover& prover, BottomClause& out) {
    // Candidate variables per input position.
    std::vector<std::size_t> input_pos;
    std::vector<std::vector<VarId>> choices;
    for (std::size_t i = 0; i < mode.arity(); ++i) {
      if (mode.args[i].role != ArgRole::input) continue;
      input_pos.push_back(i);
      std::vector<VarId> c;
      for (std::size_t v = 0; v < visible; ++v)
        if (terms_[v].type == mode.args[i].type) c.push_back(static_cast<VarId>(v));
      if (c.empty()) return;
      choices.push_back(std::move(c));
    }
    if (input_pos.empty()) {
      if (layer == 1) try_instance(mi, mode, {}, layer, prover, out);
      return;
    }
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      std::vector<VarId> chosen(choices.size());
      bool fresh = false;
      for (std::size_t k = 0; k < choices.size(); ++k) {
        chosen[k] = choices[k][pick[k]];
        if (terms_[chosen[k]].depth == layer - 1) fresh = true;
      }
      // Combinations of older terms were already tried in an earlier layer.
      if (fresh) try_instance(mi, mode, chosen, layer, prover, out);
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }

  void try_instance(std::size_t mi, const ModeDeclaration& mode, const std::vector<VarId>& chosen, int layer,
                    Prover& prover, BottomClause& out) {
    Literal goal;
    goal.predicate = mode.predicate;
    goal.args.resize(mode.arity());
    VarId next_var = 0;
    std::vector<VarId> slot_var(mode.arity(), 0);
    for (std::size_t i = 0, k = 0; i < mode.arity(); ++i) {
      const ArgMode& am = mode.args[i];
      switch (am.role) {
        case ArgRole::input:
          goal.args[i] = terms_[chosen[k++]].term;
          break;
        case ArgRole::fixed:
          goal.args[i] = am.fixed;
          break;
        default:
          slot_var[i] = next_var++;
          goal.args[i] = Term::variable(slot_var[i]);
      }
    }
    std::vector<Substitution> answers;
    prover.for_each_answer(goal, mode.recall_limit(), [&](const Substitution& s) { answers.push_back(s); });
    for (const auto& s : answers) {
      BottomLiteral bl;
      bl.literal.predicate = mode.predicate;
      bl.depth = layer;
      bl.mode_index = mi;
      bool ground = true;
      for (std::size_t i = 0; i < mode.arity(); ++i) {
        ArgRole r = mode.args[i].role;
        if (r != ArgRole::output && r != ArgRole::constant) continue;
        auto it = s.find(slot_var[i]);
        if (it == s.end() || !it->second.is_ground()) ground = false;
      }
      if (!ground) continue;
      for (std::size_t i = 0, k = 0; i < mode.arity(); ++i) {
        const ArgMode& am = mode.args[i];
        switch (am.role) {
          case ArgRole::input: {
            VarId v = chosen[k++];
            bl.literal.args.push_back(Term::variable(v));
            bl.inputs.push_back(v);
            break;
          }
          case ArgRole::fixed:
            bl.literal.args.push_back(am.fixed);
            break;
          case ArgRole::output:
          case ArgRole::constant: {
            auto it = s.find(slot_var[i]);
            if (am.role == ArgRole::constant) {
              bl.literal.args.push_back(it->second);
            } else {
              VarId v = var_for(it->second, am.type, layer);
              bl.literal.args.push_back(Term::variable(v));
              bl.outputs.push_back(v);
            }
            break;
          }
        }
      }
      if (!seen_.insert(bl.literal).second) continue;
      out.clause.body.push_back(bl.literal);
      out.literals.push_back(std::move(bl));
    }
  }

  const Literal& seed_;
  const Program& background_;
  std::span<const ModeDeclaration> modes_;
  const SearchParams& params_;
  std::vector<TypedTerm> terms_;
  std::map<std::pair<Term, Symbol>, VarId> vars_;
  std::vector<VarId> head_vars_;
  std::unordered_set<Literal> seen_;
};

}  // namespace detail

/// Most specific mode-conformant clause entailing `seed` within
/// `params.variable_depth` layers. Throws RejectedSeed when no head mode fits.
inline BottomClause saturate(const Literal& seed, const Program& background,
                             std::span<const ModeDeclaration> modes, const SearchParams& params) {
  if (!seed.is_ground()) throw RejectedSeed("seed " + to_string(seed) + " is not ground");
  return detail::Saturator(seed, background, modes, params).run();
}

}  // namespace phonoilp

#endif  // PHONOILP_SATURATION_HPP
