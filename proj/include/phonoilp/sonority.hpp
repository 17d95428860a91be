#ifndef PHONOILP_SONORITY_HPP
#define PHONOILP_SONORITY_HPP

// Hand-written syllable acceptor: sonority must fall strictly from the
// nucleus outwards on both sides, subject to filters, with licenses that
// override the progression.
//
// Model file (key = value, `#` comments):
//   scale.r = 2.75
//   license.s_onset = on
//   filter.left_sonority = on
//   filter.no_voiced_obstruent_coda = off

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "phonoilp/dataset.hpp"
#include "phonoilp/phonology.hpp"
#include "phonoilp/score.hpp"

namespace phonoilp {

struct SonorityModel {
  /// Overrides of the inventory's sonority values.
  std::map<std::string, Score> scale;
  /// Leftmost onset position may be /s/ whatever follows it.
  bool s_license = true;
  bool filter_left_sonority = true;
  bool filter_no_voiced_obstruent_coda = true;

  std::size_t prefix_rules() const { return 1 + s_license + filter_left_sonority; }
  std::size_t suffix_rules() const { return 1 + filter_no_voiced_obstruent_coda; }
};

inline SonorityModel parse_sonority_model(std::string_view text) {
  SonorityModel m;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    auto where = "sonority model line " + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw std::invalid_argument(where + "expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    auto flag = [&] {
      if (value == "on" || value == "true" || value == "1") return true;
      if (value == "off" || value == "false" || value == "0") return false;
      throw std::invalid_argument(where + "expected on or off for " + key);
    };
    if (key.rfind("scale.", 0) == 0 && key.size() > 6) {
      m.scale[key.substr(6)] = parse_fraction(value);
    } else if (key == "license.s_onset") {
      m.s_license = flag();
    } else if (key == "filter.left_sonority") {
      m.filter_left_sonority = flag();
    } else if (key == "filter.no_voiced_obstruent_coda") {
      m.filter_no_voiced_obstruent_coda = flag();
    } else {
      throw std::invalid_argument(where + "unknown key '" + key + "'");
    }
  }
  return m;
}

inline Score sonority_of(const SonorityModel& m, const Inventory& inv, const std::string& phone) {
  if (auto it = m.scale.find(phone); it != m.scale.end()) return it->second;
  auto s = inv.sonority(phone);
  if (!s) throw InventoryError("phoneme '" + phone + "' has no sonority value");
  return *s;
}

/// Passes unless some onset position has sonority 4 or more.
inline bool filter_left_sonority(const SegmentedWord& sw, const SonorityModel& m, const Inventory& inv) {
  for (const auto& c : sw.onset)
    if (sonority_of(m, inv, c) >= Score(4)) return false;
  return true;
}

/// Passes unless a coda segment is a voiced obstruent (sonority 1, voiced).
inline bool filter_no_voiced_obstruent_coda(const SegmentedWord& sw, const SonorityModel& m, const Inventory& inv) {
  for (const auto& c : sw.coda)
    if (sonority_of(m, inv, c) == Score(1) && inv.at(c).feature("voiced") == "plus") return false;
  return true;
}

struct SonorityVerdict {
  bool accepted = false;
  /// "template", "sonority", "left-sonority" or "no-voiced-obstruent-coda".
  std::string reason;
};

inline SonorityVerdict sonority_accepts(const SonorityModel& m, const Inventory& inv, const Word& w) {
  SegmentedWord sw;
  try {
    sw = segment(w, inv);
  } catch (const TemplateError&) {
    return {false, "template"};
  }
  auto son = [&](const std::string& p) { return sonority_of(m, inv, p); };
  Score left_peak = son(sw.nucleus.front());
  Score right_peak = son(sw.nucleus.back());

  const std::size_t licensed = (m.s_license && sw.onset.size() >= 2 && sw.onset.front() == "s") ? 1 : 0;
  Score inner = left_peak;
  for (std::size_t i = sw.onset.size(); i-- > licensed;) {
    Score s = son(sw.onset[i]);
    if (!(s < inner)) return {false, "sonority"};
    inner = s;
  }
  inner = right_peak;
  for (const auto& c : sw.coda) {
    Score s = son(c);
    if (!(s < inner)) return {false, "sonority"};
    inner = s;
  }
  if (m.filter_left_sonority && !filter_left_sonority(sw, m, inv)) return {false, "left-sonority"};
  if (m.filter_no_voiced_obstruent_coda && !filter_no_voiced_obstruent_coda(sw, m, inv))
    return {false, "no-voiced-obstruent-coda"};
  return {true, ""};
}

}  // namespace phonoilp

#endif  // PHONOILP_SONORITY_HPP
