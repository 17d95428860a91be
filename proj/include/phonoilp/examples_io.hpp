#ifndef PHONOILP_EXAMPLES_IO_HPP
#define PHONOILP_EXAMPLES_IO_HPP

// Example files: one ground atom per line, `+` or `-` in front.
//   + prefix(m,[],[a,:]).
//   - suffix(k,[t],[a]).
// `%` starts a comment; blank lines are ignored.

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "phonoilp/syntax.hpp"

namespace phonoilp {

struct ExampleSet {
  std::vector<Literal> positives;
  std::vector<Literal> negatives;
};

inline ExampleSet parse_examples(std::string_view text) {
  ExampleSet out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    char sign = line[first];
    if (sign != '+' && sign != '-') throw ParseError("example line must start with + or -", lineno);
    Clause c;
    try {
      c = parse_clause(std::string_view(line).substr(first + 1));
    } catch (const ParseError& e) {
      std::string msg = e.what();
      throw ParseError(msg.substr(msg.find(": ") + 2), lineno);
    }
    if (!c.body.empty() || !c.head.is_ground()) throw ParseError("example must be a ground atom", lineno);
    (sign == '+' ? out.positives : out.negatives).push_back(std::move(c.head));
  }
  return out;
}

inline std::string format_example(char sign, const Literal& atom) {
  return std::string(1, sign) + " " + to_string(atom) + ".";
}

inline std::string format_examples(const ExampleSet& set) {
  std::string out;
  for (const auto& l : set.positives) out += format_example('+', l) + "\n";
  for (const auto& l : set.negatives) out += format_example('-', l) + "\n";
  return out;
}

}  // namespace phonoilp

#endif  // PHONOILP_EXAMPLES_IO_HPP
