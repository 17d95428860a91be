#ifndef PHONOILP_PHONOLOGY_HPP
#define PHONOILP_PHONOLOGY_HPP

// Phoneme inventories and the three background feature systems.
//
// Inventory file, one phoneme per line:
//   p  class=consonant manner=plosive place=bilabial voiced=minus sonority=1 b.consonantal=plu ...
// `class` is consonant or vowel; `diacritic=yes` marks nucleus symbols such
// as the length mark `:`. Keys with a `b.` prefix belong to the feature
// geometry system. `#` starts a comment line.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phonoilp/modes.hpp"
#include "phonoilp/score.hpp"
#include "phonoilp/syntax.hpp"

namespace phonoilp {

class InventoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PhoneClass { consonant, vowel, boundary };

struct Phoneme {
  std::string symbol;
  PhoneClass cls = PhoneClass::consonant;
  bool diacritic = false;
  std::map<std::string, std::string> features;

  std::optional<std::string> feature(const std::string& key) const {
    auto it = features.find(key);
    if (it == features.end()) return std::nullopt;
    return it->second;
  }
};

inline const std::string& boundary_symbol() {
  static const std::string caret = "^";
  return caret;
}

class Inventory {
 public:
  Inventory() { add({boundary_symbol(), PhoneClass::boundary, false, {}}); }

  void add(Phoneme p) {
    if (index_.contains(p.symbol)) throw InventoryError("duplicate phoneme '" + p.symbol + "'");
    index_.emplace(p.symbol, phonemes_.size());
    phonemes_.push_back(std::move(p));
  }

  /// All phonemes, boundary first, then file order.
  const std::vector<Phoneme>& phonemes() const { return phonemes_; }
  bool contains(const std::string& s) const { return index_.contains(s); }

  const Phoneme& at(const std::string& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw InventoryError("unknown phoneme '" + s + "'");
    return phonemes_[it->second];
  }

  bool is_consonant(const std::string& s) const { return contains(s) && at(s).cls == PhoneClass::consonant; }
  bool is_vowel(const std::string& s) const { return contains(s) && at(s).cls == PhoneClass::vowel; }

  std::vector<std::string> symbols(PhoneClass c) const {
    std::vector<std::string> out;
    for (const auto& p : phonemes_)
      if (p.cls == c) out.push_back(p.symbol);
    return out;
  }

  /// Sonority as an exact fraction, or nullopt for the boundary and unscaled symbols.
  std::optional<Score> sonority(const std::string& s) const {
    auto v = at(s).feature("sonority");
    if (!v) return std::nullopt;
    return parse_fraction(*v);
  }

 private:
  std::vector<Phoneme> phonemes_;
  std::map<std::string, std::size_t> index_;
};

inline Inventory parse_inventory(std::string_view text) {
  Inventory inv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    Phoneme p;
    if (!(fields >> p.symbol)) continue;
    auto where = [&] { return "inventory line " + std::to_string(lineno) + ": "; };
    if (p.symbol == boundary_symbol()) throw InventoryError(where() + "'^' is reserved for the word boundary");
    std::string kv;
    bool has_class = false;
    while (fields >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
        throw InventoryError(where() + "expected key=value, got '" + kv + "'");
      std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
      if (key == "class") {
        if (value == "consonant") p.cls = PhoneClass::consonant;
        else if (value == "vowel") p.cls = PhoneClass::vowel;
        else throw InventoryError(where() + "class must be consonant or vowel");
        has_class = true;
      } else if (key == "diacritic") {
        p.diacritic = value == "yes";
      } else if (!p.features.emplace(key, value).second) {
        throw InventoryError(where() + "duplicate key '" + key + "'");
      }
    }
    if (!has_class) throw InventoryError(where() + "missing class for '" + p.symbol + "'");
    try {
      inv.add(std::move(p));
    } catch (const InventoryError& e) {
      throw InventoryError(where() + e.what());
    }
  }
  return inv;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Inventory load_inventory(const std::string& path) { return parse_inventory(read_text_file(path)); }

enum class FeatureSystem { ipa, booij, sonority };

inline FeatureSystem parse_feature_system(std::string_view name) {
  if (name == "ipa") return FeatureSystem::ipa;
  if (name == "booij") return FeatureSystem::booij;
  if (name == "sonority") return FeatureSystem::sonority;
  throw std::invalid_argument("unknown feature system '" + std::string(name) + "'");
}

inline std::string to_string(FeatureSystem s) {
  switch (s) {
    case FeatureSystem::ipa: return "ipa";
    case FeatureSystem::booij: return "booij";
    case FeatureSystem::sonority: return "sonority";
  }
  return "?";
}

namespace features {

inline const std::map<std::string, std::set<std::string>>& ipa_consonant() {
  static const std::map<std::string, std::set<std::string>> dims = {
      {"manner", {"plosive", "nasal", "lateral", "trill", "fricative", "approximant"}},
      {"place", {"bilabial", "alveolar", "velar", "labiodental", "postalveolar", "palatal"}},
      {"voiced", {"plus", "minus"}},
  };
  return dims;
}

inline const std::map<std::string, std::set<std::string>>& ipa_vowel() {
  static const std::map<std::string, std::set<std::string>> dims = {
      {"place", {"front", "centre", "back"}},
      {"manner", {"open", "open_mid", "closed_mid", "closed"}},
      {"length", {"short", "long"}},
      {"round", {"plus", "minus"}},
  };
  return dims;
}

inline const std::vector<std::string>& booij_binary() {
  static const std::vector<std::string> f = {"consonantal", "sonorant", "continuant", "nasal",
                                             "lateral",     "voiced",   "aspirated",  "labial",
                                             "coronal",     "dorsal",   "round",      "anterior",
                                             "high",        "low",      "back",       "schwa"};
  return f;
}

inline const std::vector<std::string>& booij_unary() {
  static const std::vector<std::string> f = {"glide", "liquid", "approximant"};
  return f;
}

inline const std::map<std::string, std::vector<std::string>>& booij_classes() {
  static const std::map<std::string, std::vector<std::string>> c = {
      {"laryngeal", {"voiced", "aspirated"}},
      {"place", {"labial", "coronal", "dorsal", "round", "anterior", "high", "low", "back"}},
  };
  return c;
}

inline const std::set<std::string>& sonority_levels() {
  static const std::set<std::string> levels = {"1", "2", "2.25", "2.5", "2.75", "3", "4"};
  return levels;
}

}  // namespace features

/// Unique value of `feature` for `phoneme` in `system`; nullopt for the
/// boundary and for unspecified features. Throws on unknown phonemes.
inline std::optional<std::string> feature_lookup(const Inventory& inv, FeatureSystem system,
                                                 const std::string& phoneme, const std::string& feature) {
  const Phoneme& p = inv.at(phoneme);
  if (p.cls == PhoneClass::boundary) return std::nullopt;
  switch (system) {
    case FeatureSystem::ipa: return p.feature(feature);
    case FeatureSystem::booij: return p.feature("b." + feature);
    case FeatureSystem::sonority: return feature == "sonority" ? p.feature("sonority") : std::nullopt;
  }
  return std::nullopt;
}

/// Checks the per-system completeness rules; throws InventoryError naming
/// the first offending phoneme.
inline void validate_inventory(const Inventory& inv, FeatureSystem system) {
  auto fail = [](const Phoneme& p, const std::string& what) {
    throw InventoryError("phoneme '" + p.symbol + "': " + what);
  };
  for (const auto& p : inv.phonemes()) {
    if (p.cls == PhoneClass::boundary) continue;
    switch (system) {
      case FeatureSystem::ipa: {
        if (p.diacritic) {
          if (auto len = p.feature("length"); len && !features::ipa_vowel().at("length").contains(*len))
            fail(p, "bad length value '" + *len + "'");
          break;
        }
        const auto& dims = p.cls == PhoneClass::consonant ? features::ipa_consonant() : features::ipa_vowel();
        for (const auto& [dim, values] : dims) {
          auto v = p.feature(dim);
          if (!v) fail(p, "missing ipa " + dim);
          if (!values.contains(*v)) fail(p, "bad ipa " + dim + " value '" + *v + "'");
        }
        break;
      }
      case FeatureSystem::booij: {
        if (p.diacritic) break;
        for (const auto& f : features::booij_binary())
          if (auto v = p.feature("b." + f); v && *v != "plu" && *v != "min")
            fail(p, "booij " + f + " must be plu or min");
        for (const auto& f : features::booij_unary())
          if (auto v = p.feature("b." + f); v && *v != "yes") fail(p, "booij " + f + " must be yes");
        if (p.feature("b.schwa") == "plu") {
          for (const auto& [k, v] : p.features)
            if (k.starts_with("b.") && k != "b.schwa") fail(p, "schwa carries only the schwa feature");
          break;
        }
        auto cons = p.feature("b.consonantal"), son = p.feature("b.sonorant");
        if (!cons || !son) fail(p, "missing booij consonantal/sonorant");
        if (*cons == "min" && *son == "min") fail(p, "[consonantal min, sonorant min] is not a valid segment");
        if (p.cls == PhoneClass::vowel && (*cons != "min" || *son != "plu"))
          fail(p, "vowels must be [consonantal min, sonorant plu]");
        if (p.cls == PhoneClass::consonant && *cons != "plu") fail(p, "consonants must be consonantal plu");
        break;
      }
      case FeatureSystem::sonority: {
        auto v = p.feature("sonority");
        if (!v) fail(p, "missing sonority");
        if (!features::sonority_levels().contains(*v)) fail(p, "sonority '" + *v + "' is not on the scale");
        if (p.cls == PhoneClass::vowel && *v != "4") fail(p, "vowels have sonority 4");
        if (p.cls == PhoneClass::consonant && *v == "4") fail(p, "consonants cannot have sonority 4");
        break;
      }
    }
  }
}

struct Background {
  FeatureSystem system = FeatureSystem::ipa;
  std::vector<Clause> clauses;
  std::vector<ModeDeclaration> modes;
};

inline std::vector<Clause> list_theory() { return parse_program("head([H|_],H). rest([_|T],T)."); }

/// Mode declarations shared by all systems: both heads, list access, and
/// equality with individual phonemes and contexts.
inline std::vector<ModeDeclaration> common_modes() {
  return parse_modes(
      "modeh(*, prefix(+phone,+context,+context)).\n"
      "modeh(*, suffix(+phone,+context,+context)).\n"
      "modeb(1, head(+context,-phone)).\n"
      "modeb(1, rest(+context,-context)).\n"
      "modeb(1, +phone = #phone).\n"
      "modeb(1, +context = #context).\n");
}

namespace detail {

inline Literal fact(const std::string& pred, std::vector<std::string> args) {
  std::vector<Term> ts;
  for (auto& a : args) ts.push_back(Term::constant(intern(a)));
  return Literal(intern(pred), std::move(ts));
}

}  // namespace detail

inline Background background(const Inventory& inv, FeatureSystem system) {
  validate_inventory(inv, system);
  Background bg;
  bg.system = system;
  bg.clauses = list_theory();
  bg.modes = common_modes();
  auto add = [&](const std::string& pred, std::vector<std::string> args) {
    bg.clauses.emplace_back(detail::fact(pred, std::move(args)));
  };
  auto real = [&] {
    std::vector<const Phoneme*> out;
    for (const auto& p : inv.phonemes())
      if (p.cls != PhoneClass::boundary) out.push_back(&p);
    return out;
  }();

  switch (system) {
    case FeatureSystem::ipa: {
      std::set<std::string> dims;
      for (const auto& [d, _] : features::ipa_consonant()) dims.insert(d);
      for (const auto& [d, _] : features::ipa_vowel()) dims.insert(d);
      // Dimension order is fixed so the fact list is stable.
      for (const std::string d : {"manner", "place", "voiced", "length", "round"})
        for (const auto* p : real)
          if (auto v = p->feature(d)) add(d, {*v, p->symbol});
      for (const std::string d : {"manner", "place", "voiced", "length", "round"})
        bg.modes.push_back(parse_mode("modeb(1, " + d + "(#value,+phone))"));
      break;
    }
    case FeatureSystem::booij: {
      for (const auto& f : features::booij_binary()) {
        bool used = false;
        for (const auto* p : real)
          if (auto v = p->feature("b." + f)) {
            add(f, {p->symbol, *v});
            used = true;
          }
        if (used) bg.modes.push_back(parse_mode("modeb(1, " + f + "(+phone,#value))"));
      }
      for (const auto& f : features::booij_unary()) {
        bool used = false;
        for (const auto* p : real)
          if (p->feature("b." + f)) {
            add(f, {p->symbol});
            used = true;
          }
        if (used) bg.modes.push_back(parse_mode("modeb(1, " + f + "(+phone))"));
      }
      for (const auto& [cls, members] : features::booij_classes()) {
        auto values = [&](const Phoneme& p) {
          std::vector<std::optional<std::string>> out;
          for (const auto& f : members) out.push_back(p.feature("b." + f));
          return out;
        };
        auto specified = [&](const Phoneme& p) {
          auto v = values(p);
          return std::any_of(v.begin(), v.end(), [](const auto& x) { return x.has_value(); });
        };
        for (const auto* a : real) {
          if (!specified(*a)) continue;
          for (const auto* b : real)
            if (specified(*b) && values(*a) == values(*b)) add("same_class_values", {cls, a->symbol, b->symbol});
        }
      }
      bg.modes.push_back(parse_mode("modeb(*, same_class_values(#class,+phone,+phone))"));
      break;
    }
    case FeatureSystem::sonority: {
      for (const auto* p : real) add("sonority", {*p->feature("sonority"), p->symbol});
      for (const auto* a : real)
        for (const auto* b : real)
          if (inv.sonority(a->symbol) < inv.sonority(b->symbol)) add("sonority_lt", {a->symbol, b->symbol});
      bg.modes.push_back(parse_mode("modeb(1, sonority(#value,+phone))"));
      bg.modes.push_back(parse_mode("modeb(*, sonority_lt(+phone,+phone))"));
      break;
    }
  }
  return bg;
}

/// Clause-syntax rendering of a background: modes as directives, then clauses.
inline std::string format_background(const Background& bg) {
  std::string out = "% feature system: " + to_string(bg.system) + "\n";
  for (const auto& m : bg.modes) out += ":- " + to_string(m) + "\n";
  for (const auto& c : bg.clauses) out += to_string(c) + "\n";
  return out;
}

/// Directory holding the bundled inventories and lexica.
inline std::string data_dir() {
#ifdef PHONOILP_DATA_DIR
  return PHONOILP_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace phonoilp

#endif  // PHONOILP_PHONOLOGY_HPP
