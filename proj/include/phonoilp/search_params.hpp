#ifndef PHONOILP_SEARCH_PARAMS_HPP
#define PHONOILP_SEARCH_PARAMS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "phonoilp/score.hpp"

namespace phonoilp {

enum class SeedOrder { corpus, shuffled };

struct SearchParams {
  /// Clause length bound, head included.
  int max_clause_literals = 6;
  /// Saturation layers: how many input/output chaining steps away from the
  /// head a body literal's inputs may be.
  int variable_depth = 2;
  /// Resolution-step bound for every coverage test.
  int derivation_depth = 20;
  /// Minimum P/(P+N) for an accepted clause.
  Score min_accuracy{85, 100};
  /// Maximum number of clauses evaluated per reduction.
  int open_list_bound = 5000;
  SeedOrder seed_order = SeedOrder::corpus;
  std::uint64_t search_seed = 0;

  void validate() const {
    if (max_clause_literals < 1) throw std::invalid_argument("max_clause_literals must be >= 1");
    if (variable_depth < 1) throw std::invalid_argument("variable_depth must be >= 1");
    if (derivation_depth < 1) throw std::invalid_argument("derivation_depth must be >= 1");
    if (open_list_bound < 1) throw std::invalid_argument("open_list_bound must be >= 1");
    if (min_accuracy <= Score(0) || min_accuracy > Score(1))
      throw std::invalid_argument("min_accuracy must be in (0,1]");
  }
};

}  // namespace phonoilp

#endif  // PHONOILP_SEARCH_PARAMS_HPP
