#ifndef PHONOILP_DATASET_HPP
#define PHONOILP_DATASET_HPP

// Affix examples from monosyllables.
//
// A word is built from its nucleus outwards: onset consonants are prefixed
// one at a time, coda consonants suffixed, and a caret closes each side.
// Every step is one example: the phone added, the consonants already on that
// side (most recently added first), and the nucleus (reversed for suffixes).
//   /ma:kt/ -> prefix(m,[],[a,:]) prefix(^,[m],[a,:])
//              suffix(k,[],[:,a]) suffix(t,[k],[:,a]) suffix(^,[t,k],[:,a])

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phonoilp/phonology.hpp"
#include "phonoilp/syntax.hpp"

namespace phonoilp {

using Word = std::vector<std::string>;

inline std::string word_to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

/// Slashed compact form for messages: /m a : k t/.
inline std::string word_label(const Word& w) { return "/" + word_to_string(w) + "/"; }

constexpr std::size_t max_onset = 3;
constexpr std::size_t max_coda = 5;
constexpr std::size_t max_nucleus = 2;

enum class TemplateReason { unknown_phoneme, no_vowel, multiple_nuclei, malformed_nucleus, onset_too_long, coda_too_long };

inline std::string to_string(TemplateReason r) {
  switch (r) {
    case TemplateReason::unknown_phoneme: return "unknown-phoneme";
    case TemplateReason::no_vowel: return "no-vowel";
    case TemplateReason::multiple_nuclei: return "multiple-nuclei";
    case TemplateReason::malformed_nucleus: return "malformed-nucleus";
    case TemplateReason::onset_too_long: return "onset-too-long";
    case TemplateReason::coda_too_long: return "coda-too-long";
  }
  return "?";
}

class TemplateError : public std::runtime_error {
 public:
  TemplateError(TemplateReason reason, const Word& w)
      : std::runtime_error(word_label(w) + ": " + phonoilp::to_string(reason)), reason_(reason) {}
  TemplateReason reason() const { return reason_; }

 private:
  TemplateReason reason_;
};

struct SegmentedWord {
  std::vector<std::string> onset;
  std::vector<std::string> nucleus;
  std::vector<std::string> coda;

  Word word() const {
    Word w = onset;
    w.insert(w.end(), nucleus.begin(), nucleus.end());
    w.insert(w.end(), coda.begin(), coda.end());
    return w;
  }
  friend bool operator==(const SegmentedWord&, const SegmentedWord&) = default;
};

inline SegmentedWord segment(const Word& w, const Inventory& inv) {
  std::size_t first = w.size(), last = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == boundary_symbol() || !inv.contains(w[i])) throw TemplateError(TemplateReason::unknown_phoneme, w);
    if (inv.is_vowel(w[i])) {
      if (first != w.size() && i != last + 1) throw TemplateError(TemplateReason::multiple_nuclei, w);
      if (first == w.size()) first = i;
      last = i;
    }
  }
  if (first == w.size()) throw TemplateError(TemplateReason::no_vowel, w);
  SegmentedWord sw;
  sw.onset.assign(w.begin(), w.begin() + first);
  sw.nucleus.assign(w.begin() + first, w.begin() + last + 1);
  sw.coda.assign(w.begin() + last + 1, w.end());
  if (sw.nucleus.size() > max_nucleus || inv.at(sw.nucleus.front()).diacritic)
    throw TemplateError(TemplateReason::malformed_nucleus, w);
  if (sw.onset.size() > max_onset) throw TemplateError(TemplateReason::onset_too_long, w);
  if (sw.coda.size() > max_coda) throw TemplateError(TemplateReason::coda_too_long, w);
  return sw;
}

enum class Direction { prefix, suffix };

inline std::string to_string(Direction d) { return d == Direction::prefix ? "prefix" : "suffix"; }

struct AffixExample {
  Direction direction = Direction::prefix;
  std::string phone;
  /// Consonants already affixed on this side, most recent first.
  std::vector<std::string> context;
  /// Nucleus symbols; reversed for suffixes.
  std::vector<std::string> nucleus_context;

  Literal to_literal() const {
    return Literal(intern(to_string(direction)), {Term::constant(intern(phone)), make_atom_list(context),
                                                   make_atom_list(nucleus_context)});
  }
  friend bool operator==(const AffixExample&, const AffixExample&) = default;
  friend auto operator<=>(const AffixExample&, const AffixExample&) = default;
};

inline std::string to_string(const AffixExample& e) { return to_string(e.to_literal()); }

inline std::optional<AffixExample> affix_from_literal(const Literal& l) {
  AffixExample e;
  const std::string& name = symbol_name(l.predicate);
  if (name == "prefix") e.direction = Direction::prefix;
  else if (name == "suffix") e.direction = Direction::suffix;
  else return std::nullopt;
  if (l.arity() != 3 || !l.args[0].is_constant()) return std::nullopt;
  e.phone = symbol_name(l.args[0].symbol());
  for (int k = 1; k <= 2; ++k) {
    auto elems = list_elements(l.args[k]);
    if (!elems) return std::nullopt;
    auto& dst = k == 1 ? e.context : e.nucleus_context;
    for (const auto& t : *elems) {
      if (!t.is_constant()) return std::nullopt;
      dst.push_back(symbol_name(t.symbol()));
    }
  }
  return e;
}

struct WordExamples {
  /// Innermost first, caret last.
  std::vector<AffixExample> prefixes;
  std::vector<AffixExample> suffixes;
};

inline WordExamples positives_from_word(const SegmentedWord& sw) {
  WordExamples out;
  std::vector<std::string> rev_nucleus(sw.nucleus.rbegin(), sw.nucleus.rend());
  std::vector<std::string> ctx;
  for (auto it = sw.onset.rbegin(); it != sw.onset.rend(); ++it) {
    out.prefixes.push_back({Direction::prefix, *it, ctx, sw.nucleus});
    ctx.insert(ctx.begin(), *it);
  }
  out.prefixes.push_back({Direction::prefix, boundary_symbol(), ctx, sw.nucleus});
  ctx.clear();
  for (const auto& c : sw.coda) {
    out.suffixes.push_back({Direction::suffix, c, ctx, rev_nucleus});
    ctx.insert(ctx.begin(), c);
  }
  out.suffixes.push_back({Direction::suffix, boundary_symbol(), ctx, rev_nucleus});
  return out;
}

/// Rebuilds the word from its affix examples, carets included, by replaying
/// them innermost-out. Returns nullopt if the examples do not chain.
inline std::optional<std::vector<std::string>> replay(const WordExamples& ex) {
  if (ex.prefixes.empty() || ex.suffixes.empty()) return std::nullopt;
  std::vector<std::string> nucleus = ex.prefixes.front().nucleus_context;
  std::vector<std::string> left, right;
  for (const auto& e : ex.prefixes) {
    if (e.direction != Direction::prefix || e.context != left || e.nucleus_context != nucleus) return std::nullopt;
    left.insert(left.begin(), e.phone);
  }
  std::vector<std::string> rev(nucleus.rbegin(), nucleus.rend());
  for (const auto& e : ex.suffixes) {
    std::vector<std::string> ctx(right.rbegin(), right.rend());
    if (e.direction != Direction::suffix || e.context != ctx || e.nucleus_context != rev) return std::nullopt;
    right.push_back(e.phone);
  }
  std::vector<std::string> out = left;
  out.insert(out.end(), nucleus.begin(), nucleus.end());
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

// ---- lexicon files ----

inline std::vector<Word> parse_lexicon(std::string_view text) {
  std::vector<Word> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ws(line);
    Word w;
    for (std::string s; ws >> s;) w.push_back(s);
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

inline std::string format_lexicon(const std::vector<Word>& words) {
  std::string out;
  for (const auto& w : words) out += word_to_string(w) + "\n";
  return out;
}

struct SegmentedLexicon {
  std::vector<Word> words;
  std::vector<SegmentedWord> segmented;
  std::vector<std::pair<Word, TemplateReason>> rejected;
  std::size_t duplicates = 0;
};

/// Keeps template-conformant words (first occurrence of each), logs the rest.
inline SegmentedLexicon segment_lexicon(const std::vector<Word>& words, const Inventory& inv) {
  SegmentedLexicon out;
  std::set<Word> seen;
  for (const auto& w : words) {
    if (!seen.insert(w).second) {
      ++out.duplicates;
      continue;
    }
    try {
      out.segmented.push_back(segment(w, inv));
      out.words.push_back(w);
    } catch (const TemplateError& e) {
      out.rejected.emplace_back(w, e.reason());
    }
  }
  return out;
}

// ---- random negative words ----

struct QuotaKey {
  enum class Side { both, onset, coda };
  Side side = Side::both;
  std::size_t length = 0;

  friend auto operator<=>(const QuotaKey&, const QuotaKey&) = default;
};

inline std::string to_string(const QuotaKey& k) {
  std::string l = std::to_string(k.length);
  switch (k.side) {
    case QuotaKey::Side::both: return l;
    case QuotaKey::Side::onset: return "onset:" + l;
    case QuotaKey::Side::coda: return "coda:" + l;
  }
  return l;
}

/// "3", "onset:2" or "coda:4".
inline QuotaKey parse_quota_key(std::string_view text) {
  QuotaKey k;
  std::string s(text);
  if (s.rfind("onset:", 0) == 0) {
    k.side = QuotaKey::Side::onset;
    s = s.substr(6);
  } else if (s.rfind("coda:", 0) == 0) {
    k.side = QuotaKey::Side::coda;
    s = s.substr(5);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad quota key '" + std::string(text) + "'");
  k.length = std::stoul(s);
  std::size_t cap = k.side == QuotaKey::Side::onset ? max_onset : max_coda;
  if (k.length > cap) throw std::invalid_argument("quota length out of template range: " + std::string(text));
  return k;
}

struct NegativeGenConfig {
  std::uint64_t rng_seed = 42;
  /// Explicit quotas. Empty means `default_per_length` words for every
  /// length 0..5, clamped to what the inventory allows.
  std::map<QuotaKey, std::size_t> quotas;
  std::size_t default_per_length = 0;
};

class QuotaUnsatisfiable : public std::runtime_error {
 public:
  QuotaUnsatisfiable(const QuotaKey& key, std::size_t wanted, std::size_t available)
      : std::runtime_error("negative quota for length " + to_string(key) + " is unsatisfiable: wanted " +
                           std::to_string(wanted) + ", only " + std::to_string(available) + " possible"),
        key_(key) {}
  const QuotaKey& key() const { return key_; }

 private:
  QuotaKey key_;
};

namespace detail {

inline std::vector<std::pair<std::size_t, std::size_t>> shapes_for(const QuotaKey& k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  switch (k.side) {
    case QuotaKey::Side::onset: out.emplace_back(k.length, 0); break;
    case QuotaKey::Side::coda: out.emplace_back(0, k.length); break;
    case QuotaKey::Side::both:
      for (std::size_t o = 0; o <= max_onset; ++o)
        for (std::size_t c = 0; c <= max_coda; ++c)
          if (std::max(o, c) == k.length) out.emplace_back(o, c);
  }
  return out;
}

inline std::seed_seq make_seed_seq(std::uint64_t seed, std::string_view salt) {
  std::vector<std::uint32_t> v = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (unsigned char ch : salt) v.push_back(ch);
  return std::seed_seq(v.begin(), v.end());
}

/// Enumerate the whole candidate space below this size; sample above it.
constexpr double enumeration_limit = 20000;

}  // namespace detail

/// Random template-conformant words absent from `positive_words`, unique,
/// with exact per-length counts. Nuclei are drawn from the positive lexicon
/// (falling back to single inventory vowels); consonants from the inventory.
inline std::vector<Word> generate_negative_words(const NegativeGenConfig& cfg, const Inventory& inv,
                                                 const std::vector<Word>& positive_words) {
  std::set<Word> positives(positive_words.begin(), positive_words.end());
  std::set<std::vector<std::string>> nucleus_set;
  for (const auto& w : positive_words) {
    try {
      nucleus_set.insert(segment(w, inv).nucleus);
    } catch (const TemplateError&) {
    }
  }
  if (nucleus_set.empty())
    for (const auto& v : inv.symbols(PhoneClass::vowel))
      if (!inv.at(v).diacritic) nucleus_set.insert({v});
  std::vector<std::vector<std::string>> nuclei(nucleus_set.begin(), nucleus_set.end());
  std::vector<std::string> cons = inv.symbols(PhoneClass::consonant);
  if (nuclei.empty()) throw std::invalid_argument("inventory has no vowels");

  std::map<QuotaKey, std::size_t> quotas = cfg.quotas;
  const bool clamp = quotas.empty();
  if (clamp)
    for (std::size_t l = 0; l <= max_coda; ++l) quotas[{QuotaKey::Side::both, l}] = cfg.default_per_length;

  std::set<Word> emitted;
  std::vector<Word> out;
  for (const auto& [key, wanted] : quotas) {
    if (wanted == 0) continue;
    auto shapes = detail::shapes_for(key);
    auto seq = detail::make_seed_seq(cfg.rng_seed, "negative-words/" + to_string(key));
    std::mt19937_64 rng(seq);

    double space = 0;
    for (auto [o, c] : shapes)
      space += static_cast<double>(nuclei.size()) * std::pow(cons.size(), o) * std::pow(cons.size(), c);

    auto build = [&](std::size_t o, std::size_t c, std::size_t nucleus, std::vector<std::size_t> idx) {
      Word w;
      for (std::size_t i = 0; i < o; ++i) w.push_back(cons[idx[i]]);
      w.insert(w.end(), nuclei[nucleus].begin(), nuclei[nucleus].end());
      for (std::size_t i = 0; i < c; ++i) w.push_back(cons[idx[o + i]]);
      return w;
    };
    auto usable = [&](const Word& w) { return !positives.contains(w) && !emitted.contains(w); };

    std::vector<Word> picked;
    if (space <= detail::enumeration_limit) {
      std::vector<Word> pool;
      for (auto [o, c] : shapes) {
        std::vector<std::size_t> idx(o + c, 0);
        for (std::size_t n = 0; n < nuclei.size(); ++n) {
          std::fill(idx.begin(), idx.end(), 0);
          while (true) {
            Word w = build(o, c, n, idx);
            if (usable(w)) pool.push_back(std::move(w));
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == cons.size()) idx[k++] = 0;
            if (k == idx.size()) break;
          }
        }
      }
      if (pool.size() < wanted && !clamp) throw QuotaUnsatisfiable(key, wanted, pool.size());
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(std::min(pool.size(), wanted));
      picked = std::move(pool);
    } else {
      std::uniform_int_distribution<std::size_t> pick_shape(0, shapes.size() - 1);
      std::uniform_int_distribution<std::size_t> pick_nucleus(0, nuclei.size() - 1);
      std::uniform_int_distribution<std::size_t> pick_cons(0, cons.size() - 1);
      std::set<Word> local;
      std::size_t attempts = 0;
      while (picked.size() < wanted) {
        if (++attempts > wanted * 1000 + 100000) {
          if (clamp) break;
          throw QuotaUnsatisfiable(key, wanted, picked.size());
        }
        auto [o, c] = shapes[pick_shape(rng)];
        std::size_t n = pick_nucleus(rng);
        std::vector<std::size_t> idx(o + c);
        for (auto& i : idx) i = pick_cons(rng);
        Word w = build(o, c, n, idx);
        if (usable(w) && local.insert(w).second) picked.push_back(std::move(w));
      }
    }
    for (auto& w : picked) {
      emitted.insert(w);
      out.push_back(std::move(w));
    }
  }
  return out;
}

// ---- negative examples ----

struct NegativeDerivation {
  std::vector<AffixExample> examples;
  /// One entry per disproved word: the example that rejects it.
  std::vector<std::pair<Word, AffixExample>> reasons;
  std::vector<std::string> warnings;
};

/// For each word, the innermost affixing on each side that the positives do
/// not license; emits it, or a seeded coin flip between the two sides when
/// both fail. Words the positives fully license are skipped with a warning.
inline NegativeDerivation derive_negative_examples(const std::vector<Word>& neg_words,
                                                   const std::set<AffixExample>& positives,
                                                   std::uint64_t rng_seed, const Inventory& inv) {
  NegativeDerivation out;
  std::set<AffixExample> emitted;
  for (const auto& w : neg_words) {
    SegmentedWord sw;
    try {
      sw = segment(w, inv);
    } catch (const TemplateError& e) {
      out.warnings.push_back(std::string("skipping negative word ") + e.what());
      continue;
    }
    auto steps = positives_from_word(sw);
    auto first_failure = [&](const std::vector<AffixExample>& side) -> std::optional<AffixExample> {
      for (const auto& e : side)
        if (!positives.contains(e)) return e;
      return std::nullopt;
    };
    auto pre = first_failure(steps.prefixes);
    auto suf = first_failure(steps.suffixes);
    std::optional<AffixExample> chosen;
    if (pre && suf) {
      auto seq = detail::make_seed_seq(rng_seed, word_to_string(w));
      std::mt19937_64 rng(seq);
      chosen = std::bernoulli_distribution(0.5)(rng) ? pre : suf;
    } else {
      chosen = pre ? pre : suf;
    }
    if (!chosen) {
      out.warnings.push_back("negative word " + word_label(w) + " is fully licensed by the positives; skipped");
      continue;
    }
    out.reasons.emplace_back(w, *chosen);
    if (emitted.insert(*chosen).second) out.examples.push_back(*chosen);
  }
  return out;
}

// ---- train/eval split ----

struct Split {
  std::vector<Word> train;
  std::vector<Word> eval;
};

/// `eval` words drawn at random (seeded); both halves keep corpus order.
inline Split split_words(const std::vector<Word>& words, std::size_t eval, std::uint64_t seed) {
  if (eval > words.size()) throw std::invalid_argument("eval split larger than the lexicon");
  std::vector<std::size_t> idx(words.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto seq = detail::make_seed_seq(seed, "split");
  std::mt19937_64 rng(seq);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<bool> in_eval(words.size(), false);
  for (std::size_t i = 0; i < eval; ++i) in_eval[idx[i]] = true;
  Split s;
  for (std::size_t i = 0; i < words.size(); ++i) (in_eval[i] ? s.eval : s.train).push_back(words[i]);
  return s;
}

/// "597" is a count; "0.2" or "1/10" a fraction of `total` (rounded down).
inline std::size_t parse_eval_split(std::string_view text, std::size_t total) {
  std::string s(text);
  if (s.find_first_of("./") == std::string::npos) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad eval split '" + s + "'");
    return std::stoul(s);
  }
  Score f = parse_fraction(s);
  if (f < Score(0) || f > Score(1)) throw std::invalid_argument("eval fraction must be in [0,1]");
  return static_cast<std::size_t>(f.numerator() * static_cast<std::int64_t>(total) / f.denominator());
}

}  // namespace phonoilp

#endif  // PHONOILP_DATASET_HPP
