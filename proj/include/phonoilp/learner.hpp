#ifndef PHONOILP_LEARNER_HPP
#define PHONOILP_LEARNER_HPP

// Greedy cover loop: saturate a seed, reduce, keep the clause, drop the
// positives it covers. Seeds that yield no acceptable clause are memorized
// as ground unit clauses so the loop always finishes.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "phonoilp/examples_io.hpp"
#include "phonoilp/modes.hpp"
#include "phonoilp/prover.hpp"
#include "phonoilp/reduction.hpp"
#include "phonoilp/saturation.hpp"
#include "phonoilp/score.hpp"
#include "phonoilp/search_params.hpp"

namespace phonoilp {

struct ClauseProvenance {
  Literal seed;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
  Score score;
  /// Ground unit clause added because reduction found nothing acceptable.
  bool memorized = false;
  /// Bottom-clause body size, 0 for memorized seeds.
  std::size_t bottom_size = 0;
};

struct Theory {
  Symbol target = 0;
  std::size_t target_arity = 0;
  std::vector<Clause> clauses;
  /// Parallel to `clauses`; empty for theories read back from text.
  std::vector<ClauseProvenance> provenance;
};

struct LearnResult {
  Theory theory;
  /// Rejected seeds and clauses that failed to re-cover their seed.
  /// Ordinary exception memorization is not a warning.
  std::vector<std::string> warnings;
  std::size_t iterations = 0;
};

namespace detail {

inline std::int64_t count_proved(const Clause& c, std::span<const Literal> examples, const Program& background,
                                 const SearchParams& params, std::vector<bool>* mask = nullptr) {
  Program single({c});
  Prover prover({&background, &single}, params.derivation_depth);
  std::int64_t n = 0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    bool ok = prover.proves(examples[i]);
    if (mask) (*mask)[i] = ok;
    n += ok;
  }
  return n;
}

}  // namespace detail

inline LearnResult learn(std::span<const Literal> positives, std::span<const Literal> negatives,
                         const Program& background, std::span<const ModeDeclaration> modes, EvalFunction evalfn,
                         const SearchParams& params) {
  params.validate();
  LearnResult result;
  Theory& theory = result.theory;
  if (!positives.empty()) {
    theory.target = positives.front().predicate;
    theory.target_arity = positives.front().arity();
  } else {
    for (const auto& m : modes)
      if (m.kind == ModeDeclaration::Kind::head) {
        theory.target = m.predicate;
        theory.target_arity = m.arity();
        break;
      }
  }
  for (const auto& e : positives)
    if (e.predicate != theory.target || e.arity() != theory.target_arity)
      throw std::invalid_argument("positive example " + to_string(e) + " is not of the target predicate");
  for (const auto& e : negatives)
    if (e.predicate != theory.target || e.arity() != theory.target_arity)
      throw std::invalid_argument("negative example " + to_string(e) + " is not of the target predicate");

  std::vector<std::size_t> order(positives.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (params.seed_order == SeedOrder::shuffled) {
    std::mt19937_64 rng(params.search_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  // Remaining positives in seed order.
  std::vector<Literal> remaining;
  remaining.reserve(order.size());
  for (auto i : order) remaining.push_back(positives[i]);

  auto memorize = [&](const Literal& seed) {
    Clause unit(seed);
    ClauseProvenance p;
    p.seed = seed;
    p.positives = std::count(remaining.begin(), remaining.end(), seed);
    p.negatives = std::count(negatives.begin(), negatives.end(), seed);
    p.score = score(evalfn, p.positives, p.negatives);
    p.memorized = true;
    theory.clauses.push_back(std::move(unit));
    theory.provenance.push_back(std::move(p));
  };

  const std::size_t limit = positives.size();
  while (!remaining.empty() && result.iterations < limit) {
    ++result.iterations;
    const Literal seed = remaining.front();
    std::optional<ScoredClause> found;
    std::size_t bottom_size = 0;
    try {
      BottomClause bottom = saturate(seed, background, modes, params);
      bottom_size = bottom.size();
      found = reduce(bottom, remaining, negatives, background, evalfn, params);
    } catch (const RejectedSeed& e) {
      result.warnings.push_back(std::string("rejected seed: ") + e.what());
    }

    std::vector<bool> covered(remaining.size(), false);
    if (found) {
      detail::count_proved(found->clause, remaining, background, params, &covered);
      ClauseProvenance p;
      p.seed = seed;
      p.positives = found->positives;
      p.negatives = found->negatives;
      p.score = found->score;
      p.bottom_size = bottom_size;
      theory.clauses.push_back(found->clause);
      theory.provenance.push_back(std::move(p));
      if (!covered.front()) {
        result.warnings.push_back("clause " + to_string(found->clause) + " does not cover its seed " +
                                  to_string(seed) + "; seed memorized");
        memorize(seed);
        for (std::size_t i = 0; i < remaining.size(); ++i) covered[i] = covered[i] || remaining[i] == seed;
      }
    } else {
      memorize(seed);
      for (std::size_t i = 0; i < remaining.size(); ++i) covered[i] = remaining[i] == seed;
    }
    std::vector<Literal> next;
    next.reserve(remaining.size());
    for (std::size_t i = 0; i < remaining.size(); ++i)
      if (!covered[i]) next.push_back(std::move(remaining[i]));
    remaining = std::move(next);
  }
  return result;
}

/// Positives of `examples` derivable from background plus the whole theory.
inline std::size_t theory_coverage(const Theory& theory, std::span<const Literal> examples,
                                   const Program& background, int derivation_depth) {
  Program prog(theory.clauses);
  Prover prover({&background, &prog}, derivation_depth);
  std::size_t n = 0;
  for (const auto& e : examples) n += prover.proves(e);
  return n;
}

/// One clause per line; provenance as a trailing comment.
inline std::string format_theory(const Theory& theory, std::span<const std::string> header = {}) {
  std::string out;
  for (const auto& h : header) out += "% " + h + "\n";
  out += "% target: " + symbol_name(theory.target) + "/" + std::to_string(theory.target_arity) + "\n";
  for (std::size_t i = 0; i < theory.clauses.size(); ++i) {
    out += to_string(theory.clauses[i]);
    if (i < theory.provenance.size()) {
      const auto& p = theory.provenance[i];
      out += " % P=" + std::to_string(p.positives) + " N=" + std::to_string(p.negatives) +
             " score=" + to_string(p.score) + " seed=" + to_string(p.seed);
      if (p.memorized) out += " memorized";
    }
    out += "\n";
  }
  return out;
}

inline Theory parse_theory(std::string_view text) {
  Theory t;
  t.clauses = parse_program(text);
  if (!t.clauses.empty()) {
    t.target = t.clauses.front().head.predicate;
    t.target_arity = t.clauses.front().head.arity();
  }
  // The target comment names the predicate even for an empty theory.
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("% target: ", 0) != 0) continue;
    std::string spec = line.substr(10);
    auto slash = spec.rfind('/');
    if (slash == std::string::npos) break;
    t.target = intern(spec.substr(0, slash));
    t.target_arity = std::stoul(spec.substr(slash + 1));
    break;
  }
  for (const auto& c : t.clauses)
    if (c.head.predicate != t.target || c.head.arity() != t.target_arity)
      throw ParseError("clause " + to_string(c) + " does not define the theory's target", 0);
  return t;
}

}  // namespace phonoilp

#endif  // PHONOILP_LEARNER_HPP
