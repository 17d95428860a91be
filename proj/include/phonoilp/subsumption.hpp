#ifndef PHONOILP_SUBSUMPTION_HPP
#define PHONOILP_SUBSUMPTION_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "phonoilp/term.hpp"

namespace phonoilp {

class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// One-way matching: binds variables of `pattern` only; variables of
// `target` behave as constants.
inline bool match_term(const Term& pattern, const Term& target, Substitution& s) {
  if (pattern.is_variable()) {
    auto [it, inserted] = s.emplace(pattern.var(), target);
    return inserted || it->second == target;
  }
  if (pattern.kind() != target.kind() || pattern.symbol() != target.symbol() ||
      pattern.arity() != target.arity())
    return false;
  auto xs = pattern.args();
  auto ys = target.args();
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!match_term(xs[i], ys[i], s)) return false;
  return true;
}

inline bool match_literal(const Literal& pattern, const Literal& target, Substitution& s) {
  if (pattern.predicate != target.predicate || pattern.arity() != target.arity()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_term(pattern.args[i], target.args[i], s)) return false;
  return true;
}

class SubsumptionSearch {
 public:
  SubsumptionSearch(const Clause& c, const Clause& d, std::size_t budget)
      : c_(c), d_(d), budget_(budget), used_(c.body.size(), false) {}

  bool run() {
    Substitution s;
    if (!match_literal(c_.head, d_.head, s)) return false;
    return extend(s, c_.body.size());
  }

 private:
  bool extend(const Substitution& s, std::size_t remaining) {
    if (remaining == 0) return true;
    // First-fail: pick the pending literal with the fewest compatible targets.
    std::size_t best = c_.body.size();
    std::vector<Substitution> best_ext;
    for (std::size_t i = 0; i < c_.body.size(); ++i) {
      if (used_[i]) continue;
      std::vector<Substitution> ext;
      for (const auto& target : d_.body) {
        if (++steps_ > budget_) throw ResourceExhausted("theta-subsumption search budget exhausted");
        Substitution t = s;
        if (match_literal(c_.body[i], target, t)) ext.push_back(std::move(t));
      }
      if (ext.empty()) return false;
      if (best == c_.body.size() || ext.size() < best_ext.size()) {
        best = i;
        best_ext = std::move(ext);
        if (best_ext.size() == 1) break;
      }
    }
    used_[best] = true;
    for (const auto& t : best_ext) {
      if (extend(t, remaining - 1)) {
        used_[best] = false;
        return true;
      }
    }
    used_[best] = false;
    return false;
  }

  const Clause& c_;
  const Clause& d_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::vector<bool> used_;
};

}  // namespace detail

/// True iff some substitution maps `c`'s head onto `d`'s head and every body
/// literal of `c` onto a body literal of `d` (set semantics). Throws
/// ResourceExhausted if the backtracking search exceeds `budget` steps.
inline bool theta_subsumes(const Clause& c, const Clause& d, std::size_t budget = 10'000'000) {
  return detail::SubsumptionSearch(c, d, budget).run();
}

}  // namespace phonoilp

#endif  // PHONOILP_SUBSUMPTION_HPP
