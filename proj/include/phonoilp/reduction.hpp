#ifndef PHONOILP_REDUCTION_HPP
#define PHONOILP_REDUCTION_HPP

// Best-first search of the subsumption lattice between the head-only clause
// and a bottom clause. A node is a set of bottom-literal indices; refinement
// appends one bottom literal whose inputs are already bound. Coverage only
// shrinks under refinement, so children are tested against their parent's
// covered examples, and a node whose optimistic score cannot beat the
// incumbent is not expanded.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <vector>

#include "phonoilp/prover.hpp"
#include "phonoilp/saturation.hpp"
#include "phonoilp/score.hpp"
#include "phonoilp/search_params.hpp"

namespace phonoilp {

struct CoverageResult {
  /// Indices into the example list, ascending.
  std::vector<std::size_t> covered;
  std::size_t count() const { return covered.size(); }
};

/// Examples derivable from background plus this single clause.
inline CoverageResult clause_coverage(const Clause& clause, std::span<const Literal> examples,
                                      const Program& background, const SearchParams& params) {
  Program single({clause});
  Prover prover({&background, &single}, params.derivation_depth);
  CoverageResult out;
  for (std::size_t i = 0; i < examples.size(); ++i)
    if (prover.proves(examples[i])) out.covered.push_back(i);
  return out;
}

struct ScoredClause {
  Clause clause;
  /// Indices into the bottom clause's body, ascending.
  std::vector<std::size_t> body_indices;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
  Score score;
  /// Clauses evaluated during the search that produced this one.
  std::size_t nodes_evaluated = 0;
};

inline bool meets_accuracy(std::int64_t p, std::int64_t n, const Score& min_accuracy) {
  if (p < 1) return false;
  return Score(p, p + n) >= min_accuracy;
}

inline Clause clause_from_indices(const BottomClause& bottom, std::span<const std::size_t> indices) {
  Clause c(bottom.clause.head);
  for (auto i : indices) c.body.push_back(bottom.literals[i].literal);
  return c;
}

/// True if every input variable of every chosen literal is bound by the
/// head or by an output of another chosen literal.
inline bool is_mode_chained(const BottomClause& bottom, std::span<const std::size_t> indices) {
  std::set<VarId> bound(bottom.head_vars.begin(), bottom.head_vars.end());
  for (auto i : indices)
    for (VarId v : bottom.literals[i].outputs) bound.insert(v);
  for (auto i : indices)
    for (VarId v : bottom.literals[i].inputs)
      if (!bound.contains(v)) return false;
  return true;
}

namespace detail {

struct SearchNode {
  std::vector<std::size_t> lits;
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  Score score;
  std::size_t id = 0;
};

struct NodeOrder {
  // Max-heap: best score, then fewer literals, then earlier discovery.
  bool operator()(const SearchNode* a, const SearchNode* b) const {
    if (a->score != b->score) return a->score < b->score;
    if (a->lits.size() != b->lits.size()) return a->lits.size() > b->lits.size();
    return a->id > b->id;
  }
};

}  // namespace detail

/// Best acceptable clause between the head-only clause and `bottom`, or
/// nullopt when none reaches `params.min_accuracy` with P >= 1.
inline std::optional<ScoredClause> reduce(const BottomClause& bottom, std::span<const Literal> positives,
                                          std::span<const Literal> negatives, const Program& background,
                                          EvalFunction evalfn, const SearchParams& params) {
  using detail::SearchNode;
  std::vector<std::unique_ptr<SearchNode>> nodes;
  std::priority_queue<SearchNode*, std::vector<SearchNode*>, detail::NodeOrder> open;
  std::set<std::vector<std::size_t>> visited;
  const SearchNode* best = nullptr;
  std::size_t evaluated = 0;
  const auto max_body = static_cast<std::size_t>(std::max(0, params.max_clause_literals - 1));

  auto better = [](const SearchNode& a, const SearchNode& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.lits.size() != b.lits.size()) return a.lits.size() < b.lits.size();
    return a.id < b.id;
  };

  auto evaluate = [&](std::vector<std::size_t> lits, std::span<const std::size_t> pos_from,
                      std::span<const std::size_t> neg_from) {
    auto node = std::make_unique<SearchNode>();
    node->lits = std::move(lits);
    node->id = evaluated++;
    Clause c = clause_from_indices(bottom, node->lits);
    Program single({c});
    Prover prover({&background, &single}, params.derivation_depth);
    for (auto i : pos_from)
      if (prover.proves(positives[i])) node->pos.push_back(i);
    for (auto i : neg_from)
      if (prover.proves(negatives[i])) node->neg.push_back(i);
    auto p = static_cast<std::int64_t>(node->pos.size());
    auto n = static_cast<std::int64_t>(node->neg.size());
    node->score = score(evalfn, p, n);
    if (meets_accuracy(p, n, params.min_accuracy) && (!best || better(*node, *best))) best = node.get();
    nodes.push_back(std::move(node));
    return nodes.back().get();
  };

  // Whether refinements of `n` could still displace the incumbent.
  auto promising = [&](const SearchNode& n) {
    if (n.pos.empty() || n.lits.size() >= max_body) return false;
    if (!best) return true;
    Score bound = optimistic_score(evalfn, static_cast<std::int64_t>(n.pos.size()));
    if (bound != best->score) return bound > best->score;
    return n.lits.size() + 1 < best->lits.size();
  };

  std::vector<std::size_t> all_pos(positives.size()), all_neg(negatives.size());
  for (std::size_t i = 0; i < all_pos.size(); ++i) all_pos[i] = i;
  for (std::size_t i = 0; i < all_neg.size(); ++i) all_neg[i] = i;
  visited.insert({});
  open.push(evaluate({}, all_pos, all_neg));

  const auto budget = static_cast<std::size_t>(params.open_list_bound);
  std::set<VarId> bound_vars;
  while (!open.empty() && evaluated < budget) {
    SearchNode* node = open.top();
    open.pop();
    if (!promising(*node)) continue;
    bound_vars.clear();
    bound_vars.insert(bottom.head_vars.begin(), bottom.head_vars.end());
    for (auto i : node->lits)
      for (VarId v : bottom.literals[i].outputs) bound_vars.insert(v);
    for (std::size_t j = 0; j < bottom.literals.size() && evaluated < budget; ++j) {
      if (std::binary_search(node->lits.begin(), node->lits.end(), j)) continue;
      const auto& inputs = bottom.literals[j].inputs;
      if (!std::all_of(inputs.begin(), inputs.end(), [&](VarId v) { return bound_vars.contains(v); })) continue;
      std::vector<std::size_t> child = node->lits;
      child.insert(std::upper_bound(child.begin(), child.end(), j), j);
      if (!visited.insert(child).second) continue;
      SearchNode* c = evaluate(std::move(child), node->pos, node->neg);
      if (promising(*c)) open.push(c);
    }
  }

  if (!best) return std::nullopt;
  ScoredClause out;
  out.body_indices = best->lits;
  out.clause = clause_from_indices(bottom, best->lits);
  out.positives = static_cast<std::int64_t>(best->pos.size());
  out.negatives = static_cast<std::int64_t>(best->neg.size());
  out.score = best->score;
  out.nodes_evaluated = evaluated;
  return out;
}

}  // namespace phonoilp

#endif  // PHONOILP_REDUCTION_HPP
