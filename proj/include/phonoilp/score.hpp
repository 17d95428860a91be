#ifndef PHONOILP_SCORE_HPP
#define PHONOILP_SCORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace phonoilp {

/// Exact clause score; all comparisons during search are on rationals.
using Score = boost::rational<std::int64_t>;

enum class EvalFunction { laplace, coverage };

/// laplace: (P+1)/(P+N+2); coverage: P-N.
inline Score score(EvalFunction fn, std::int64_t positives, std::int64_t negatives) {
  if (positives < 0 || negatives < 0) throw std::invalid_argument("negative coverage count");
  switch (fn) {
    case EvalFunction::laplace:
      return Score(positives + 1, positives + negatives + 2);
    case EvalFunction::coverage:
      return Score(positives - negatives);
  }
  throw std::invalid_argument("unknown evaluation function");
}

/// Best score any specialization of a clause covering `positives` can reach:
/// specializations never gain positives, at best they shed every negative.
inline Score optimistic_score(EvalFunction fn, std::int64_t positives) { return score(fn, positives, 0); }

inline std::string to_string(EvalFunction fn) { return fn == EvalFunction::laplace ? "laplace" : "coverage"; }

inline EvalFunction parse_eval_function(std::string_view name) {
  if (name == "laplace") return EvalFunction::laplace;
  if (name == "coverage") return EvalFunction::coverage;
  throw std::invalid_argument("unknown evaluation function '" + std::string(name) + "'");
}

inline std::string to_string(const Score& s) {
  if (s.denominator() == 1) return std::to_string(s.numerator());
  return std::to_string(s.numerator()) + "/" + std::to_string(s.denominator());
}

/// Parses "0.85", "17/20" or "1" into an exact fraction.
inline Score parse_fraction(std::string_view text) {
  std::string s(text);
  try {
    if (auto slash = s.find('/'); slash != std::string::npos)
      return Score(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot == std::string::npos) return Score(std::stoll(s));
    std::string frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 12 || frac.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument(s);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t whole = dot == 0 ? 0 : std::stoll(s.substr(0, dot));
    return Score(whole * den + std::stoll(frac), den);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a fraction: '" + s + "'");
  }
}

}  // namespace phonoilp

#endif  // PHONOILP_SCORE_HPP
