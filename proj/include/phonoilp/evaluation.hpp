#ifndef PHONOILP_EVALUATION_HPP
#define PHONOILP_EVALUATION_HPP

// Whole-word acceptance and recall/precision reports.

#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phonoilp/dataset.hpp"
#include "phonoilp/learner.hpp"
#include "phonoilp/prover.hpp"
#include "phonoilp/score.hpp"
#include "phonoilp/sonority.hpp"

namespace phonoilp {

struct WordVerdict {
  Word word;
  bool accepted = false;
  /// First required affixing that could not be proved.
  std::optional<AffixExample> failing;
  /// Set when the word does not fit the template, or by the baseline.
  std::string reason;
};

/// Accepts words whose every affixing step, carets included, is provable
/// from background plus the prefix and suffix theories.
class TheoryAcceptor {
 public:
  TheoryAcceptor(const Program& background, const Theory& prefix, const Theory& suffix, const Inventory& inv,
                 int derivation_depth)
      : background_(background), inv_(inv), depth_(derivation_depth) {
    for (const auto& c : prefix.clauses) theory_.add(c);
    for (const auto& c : suffix.clauses) theory_.add(c);
  }

  /// Whether a single affixing step is licensed.
  bool proves(const AffixExample& e) const {
    Prover prover({&background_, &theory_}, depth_);
    return prover.proves(e.to_literal());
  }

  WordVerdict operator()(const Word& w) const {
    WordVerdict v;
    v.word = w;
    SegmentedWord sw;
    try {
      sw = segment(w, inv_);
    } catch (const TemplateError&) {
      v.reason = "template";
      return v;
    }
    auto steps = positives_from_word(sw);
    Prover prover({&background_, &theory_}, depth_);
    for (const auto* side : {&steps.prefixes, &steps.suffixes})
      for (const auto& e : *side)
        if (!prover.proves(e.to_literal())) {
          v.failing = e;
          v.reason = to_string(e);
          return v;
        }
    v.accepted = true;
    return v;
  }

 private:
  const Program& background_;
  const Inventory& inv_;
  Program theory_;
  int depth_;
};

inline std::function<WordVerdict(const Word&)> sonority_acceptor(const SonorityModel& m, const Inventory& inv) {
  return [&m, &inv](const Word& w) {
    auto r = sonority_accepts(m, inv, w);
    return WordVerdict{w, r.accepted, std::nullopt, r.reason};
  };
}

struct EvaluationReport {
  std::string label;
  std::size_t positives_total = 0;
  std::size_t positives_accepted = 0;
  std::size_t negatives_total = 0;
  std::size_t negatives_accepted = 0;
  Score recall{0};
  Score precision{1};
  /// Nothing accepted: precision is reported as 1 by convention.
  bool precision_undefined = false;
  /// No test words at all.
  bool empty = false;
  std::size_t prefix_clauses = 0;
  std::size_t suffix_clauses = 0;
  std::vector<WordVerdict> positive_verdicts;
  std::vector<WordVerdict> negative_verdicts;
};

template <class Acceptor>
EvaluationReport evaluate(const Acceptor& accept, const std::vector<Word>& pos_words,
                          const std::vector<Word>& neg_words) {
  EvaluationReport r;
  for (const auto& w : pos_words) {
    r.positive_verdicts.push_back(accept(w));
    r.positives_accepted += r.positive_verdicts.back().accepted;
  }
  for (const auto& w : neg_words) {
    r.negative_verdicts.push_back(accept(w));
    r.negatives_accepted += r.negative_verdicts.back().accepted;
  }
  r.positives_total = pos_words.size();
  r.negatives_total = neg_words.size();
  r.empty = pos_words.empty() && neg_words.empty();
  auto n = [](std::size_t x) { return static_cast<std::int64_t>(x); };
  r.recall = r.positives_total ? Score(n(r.positives_accepted), n(r.positives_total)) : Score(0);
  std::size_t accepted = r.positives_accepted + r.negatives_accepted;
  r.precision_undefined = accepted == 0;
  r.precision = accepted ? Score(n(r.positives_accepted), n(accepted)) : Score(1);
  return r;
}

inline std::string percent(const Score& s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * boost::rational_cast<double>(s));
  return buf;
}

/// Three-row table: Recall, Precision, Num. Clauses.
inline std::string format_report_table(const EvaluationReport& r) {
  std::string col = r.label.empty() ? "result" : r.label;
  auto row = [&](const std::string& name, const std::string& value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-13s| %s\n", name.c_str(), value.c_str());
    return std::string(buf);
  };
  std::string out = row("", col);
  out += row("Recall", percent(r.recall));
  out += row("Precision", percent(r.precision) + (r.precision_undefined ? " (undefined: nothing accepted)" : ""));
  out += row("Num. Clauses", std::to_string(r.prefix_clauses) + "+" + std::to_string(r.suffix_clauses));
  if (r.empty) out += "(empty test sets)\n";
  return out;
}

/// key: value lines, then one line per rejected positive and accepted negative.
inline std::string format_report_keyvalue(const EvaluationReport& r, const std::vector<std::string>& header = {}) {
  std::string out;
  for (const auto& h : header) out += h + "\n";
  out += "label: " + r.label + "\n";
  out += "recall: " + to_string(r.recall) + "\n";
  out += "precision: " + to_string(r.precision) + "\n";
  out += "precision_undefined: " + std::string(r.precision_undefined ? "true" : "false") + "\n";
  out += "empty: " + std::string(r.empty ? "true" : "false") + "\n";
  out += "positives_total: " + std::to_string(r.positives_total) + "\n";
  out += "positives_accepted: " + std::to_string(r.positives_accepted) + "\n";
  out += "negatives_total: " + std::to_string(r.negatives_total) + "\n";
  out += "negatives_accepted: " + std::to_string(r.negatives_accepted) + "\n";
  out += "prefix_clauses: " + std::to_string(r.prefix_clauses) + "\n";
  out += "suffix_clauses: " + std::to_string(r.suffix_clauses) + "\n";
  for (const auto& v : r.positive_verdicts)
    if (!v.accepted) out += "rejected_positive: " + word_label(v.word) + " " + v.reason + "\n";
  for (const auto& v : r.negative_verdicts)
    if (v.accepted) out += "accepted_negative: " + word_label(v.word) + "\n";
  return out;
}

}  // namespace phonoilp

#endif  // PHONOILP_EVALUATION_HPP
