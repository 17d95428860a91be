#ifndef PHONOILP_PIPELINE_HPP
#define PHONOILP_PIPELINE_HPP

// File-level steps behind the command line: generate, learn, evaluate,
// baseline, export-background. Each writes into an output directory and
// returns 0, 1 (finished with warnings) or throws PipelineError.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "phonoilp/dataset.hpp"
#include "phonoilp/evaluation.hpp"
#include "phonoilp/examples_io.hpp"
#include "phonoilp/learner.hpp"
#include "phonoilp/phonology.hpp"
#include "phonoilp/sonority.hpp"

namespace phonoilp {

/// Usage or I/O failure.
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> warnings;
  /// Human-readable summary for stdout.
  std::string summary;
};

namespace detail {

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw PipelineError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw PipelineError("cannot write " + p.string());
  out << text;
  if (!out) throw PipelineError("write failed: " + p.string());
}

inline void ensure_dir(const std::filesystem::path& p) {
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw PipelineError("cannot create " + p.string() + ": " + ec.message());
}

inline Inventory load_inventory_or_fail(const std::string& path) {
  try {
    return parse_inventory(read_file(path));
  } catch (const InventoryError& e) {
    throw PipelineError(path + ": " + e.what());
  }
}

inline std::string header(char comment, const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += std::string(1, comment) + " " + l + "\n";
  return out;
}

/// `% key: value` lines at the top of a file.
inline std::vector<std::string> seed_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || (line[0] != '%' && line[0] != '#')) break;
    if (line.find("seed:") != std::string::npos) out.push_back(line.substr(2));
  }
  return out;
}

/// Value of a `% key: value` header line, if present.
inline std::optional<std::string> header_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line, prefix = "% " + key + ": ";
  while (std::getline(in, line)) {
    if (line.empty() || line[0] != '%') break;
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return std::nullopt;
}

}  // namespace detail

// ---- generate ----

struct GenerateConfig {
  std::string lexicon;
  std::string inventory = data_dir() + "/dutch.inventory";
  std::string out_dir = "out";
  /// Count ("597") or fraction ("0.2") of lexicon words held out.
  std::string eval_split = "0";
  std::uint64_t neg_seed = 42;
  /// Explicit quotas ("2=50", "onset:1=10"); empty means balanced defaults.
  std::vector<std::string> neg_quota;
  /// Words per length for the default quotas; 0 means lexicon size / 6, rounded up.
  std::size_t neg_per_length = 0;
};

struct TaskExamples {
  std::vector<Literal> positives;
  std::vector<Literal> negatives;
  std::size_t positive_instances = 0;
};

inline RunResult cmd_generate(const GenerateConfig& cfg) {
  namespace fs = std::filesystem;
  RunResult res;
  Inventory inv = detail::load_inventory_or_fail(cfg.inventory);
  auto lexicon_words = parse_lexicon(detail::read_file(cfg.lexicon));
  auto seg = segment_lexicon(lexicon_words, inv);
  for (const auto& [w, why] : seg.rejected)
    res.warnings.push_back("lexicon word " + word_label(w) + " excluded: " + to_string(why));

  std::size_t n_eval = 0;
  try {
    n_eval = parse_eval_split(cfg.eval_split, seg.words.size());
  } catch (const std::invalid_argument& e) {
    throw PipelineError(e.what());
  }
  if (n_eval > seg.words.size()) throw PipelineError("eval split larger than the lexicon");
  Split split = split_words(seg.words, n_eval, cfg.neg_seed);

  NegativeGenConfig ncfg;
  ncfg.rng_seed = cfg.neg_seed;
  ncfg.default_per_length =
      cfg.neg_per_length ? cfg.neg_per_length : std::max<std::size_t>(1, (seg.words.size() + 5) / 6);
  for (const auto& q : cfg.neg_quota) {
    auto eq = q.find('=');
    if (eq == std::string::npos) throw PipelineError("bad --neg-quota '" + q + "', expected LEN=COUNT");
    try {
      ncfg.quotas[parse_quota_key(q.substr(0, eq))] = std::stoul(q.substr(eq + 1));
    } catch (const std::logic_error& e) {
      throw PipelineError("bad --neg-quota '" + q + "': " + e.what());
    }
  }
  std::vector<Word> neg_words;
  try {
    neg_words = generate_negative_words(ncfg, inv, seg.words);
  } catch (const QuotaUnsatisfiable& e) {
    throw PipelineError(e.what());
  }
  // Hold out negatives in the same proportion as positives.
  std::size_t neg_eval = seg.words.empty() ? 0 : neg_words.size() * n_eval / seg.words.size();
  Split neg_split = split_words(neg_words, neg_eval, cfg.neg_seed + 1);

  std::map<Direction, TaskExamples> tasks;
  std::set<AffixExample> positive_set;
  std::map<Direction, std::set<AffixExample>> seen;
  for (const auto& w : split.train) {
    auto ex = positives_from_word(segment(w, inv));
    for (const auto* side : {&ex.prefixes, &ex.suffixes})
      for (const auto& e : *side) {
        auto& t = tasks[e.direction];
        ++t.positive_instances;
        positive_set.insert(e);
        if (seen[e.direction].insert(e).second) t.positives.push_back(e.to_literal());
      }
  }
  auto derived = derive_negative_examples(neg_split.train, positive_set, cfg.neg_seed, inv);
  for (const auto& e : derived.examples) tasks[e.direction].negatives.push_back(e.to_literal());
  for (const auto& wmsg : derived.warnings) res.warnings.push_back(wmsg);

  fs::path out(cfg.out_dir);
  detail::ensure_dir(out);
  std::vector<std::string> hdr = {"neg-seed: " + std::to_string(cfg.neg_seed)};
  detail::write_file(out / "train.lexicon", detail::header('#', hdr) + format_lexicon(split.train));
  detail::write_file(out / "eval.lexicon", detail::header('#', hdr) + format_lexicon(split.eval));
  detail::write_file(out / "train.neg.lexicon", detail::header('#', hdr) + format_lexicon(neg_split.train));
  detail::write_file(out / "eval.neg.lexicon", detail::header('#', hdr) + format_lexicon(neg_split.eval));
  for (Direction d : {Direction::prefix, Direction::suffix}) {
    auto& t = tasks[d];
    ExampleSet set{t.positives, t.negatives};
    detail::write_file(out / (to_string(d) + ".examples"), detail::header('%', hdr) + format_examples(set));
  }

  std::ostringstream m;
  m << "# neg-seed: " << cfg.neg_seed << "\n";
  m << "lexicon_words: " << lexicon_words.size() << "\n";
  m << "template_words: " << seg.words.size() << "\n";
  m << "duplicate_words: " << seg.duplicates << "\n";
  m << "excluded_words: " << seg.rejected.size() << "\n";
  m << "train_words: " << split.train.size() << "\n";
  m << "eval_words: " << split.eval.size() << "\n";
  m << "negative_words: " << neg_words.size() << "\n";
  m << "train_negative_words: " << neg_split.train.size() << "\n";
  m << "eval_negative_words: " << neg_split.eval.size() << "\n";
  for (Direction d : {Direction::prefix, Direction::suffix}) {
    auto& t = tasks[d];
    m << to_string(d) << "_positive_instances: " << t.positive_instances << "\n";
    m << to_string(d) << "_positive_unique: " << t.positives.size() << "\n";
    m << to_string(d) << "_negative_unique: " << t.negatives.size() << "\n";
  }
  for (const auto& [w, why] : seg.rejected) m << "excluded: " << word_label(w) << " " << to_string(why) << "\n";
  for (const auto& wmsg : derived.warnings) m << "warning: " << wmsg << "\n";
  detail::write_file(out / "manifest.txt", m.str());

  res.summary = m.str();
  res.exit_code = 0;
  return res;
}

// ---- learn ----

struct LearnConfig {
  /// Directory holding prefix.examples and suffix.examples.
  std::string data_dir = "out";
  std::string inventory = phonoilp::data_dir() + "/dutch.inventory";
  std::string background = "ipa";
  std::string eval_function = "laplace";
  SearchParams params;
  std::string out_dir = "out";
};

inline Background load_background(const std::string& inventory, const std::string& system) {
  Inventory inv = detail::load_inventory_or_fail(inventory);
  try {
    return background(inv, parse_feature_system(system));
  } catch (const InventoryError& e) {
    throw PipelineError(inventory + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw PipelineError(e.what());
  }
}

inline std::vector<std::string> learn_header(const LearnConfig& cfg, const std::vector<std::string>& upstream) {
  std::vector<std::string> h = upstream;
  h.push_back("search-seed: " + std::to_string(cfg.params.search_seed));
  h.push_back("background: " + cfg.background);
  h.push_back("eval: " + cfg.eval_function);
  h.push_back("min-accuracy: " + to_string(cfg.params.min_accuracy));
  h.push_back("max-clause-literals: " + std::to_string(cfg.params.max_clause_literals));
  h.push_back("variable-depth: " + std::to_string(cfg.params.variable_depth));
  h.push_back("derivation-depth: " + std::to_string(cfg.params.derivation_depth));
  h.push_back("open-list-bound: " + std::to_string(cfg.params.open_list_bound));
  h.push_back(std::string("seed-order: ") + (cfg.params.seed_order == SeedOrder::shuffled ? "shuffled" : "corpus"));
  return h;
}

inline RunResult cmd_learn(const LearnConfig& cfg) {
  namespace fs = std::filesystem;
  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& e) {
    throw PipelineError(e.what());
  }
  EvalFunction evalfn;
  try {
    evalfn = parse_eval_function(cfg.eval_function);
  } catch (const std::invalid_argument& e) {
    throw PipelineError(e.what());
  }
  Background bg = load_background(cfg.inventory, cfg.background);
  Program bg_prog(bg.clauses);

  struct Session {
    Direction direction;
    std::string text;
    ExampleSet examples;
    LearnResult result;
  };
  std::vector<Session> sessions(2);
  sessions[0].direction = Direction::prefix;
  sessions[1].direction = Direction::suffix;
  for (auto& s : sessions) {
    s.text = detail::read_file(fs::path(cfg.data_dir) / (to_string(s.direction) + ".examples"));
    try {
      s.examples = parse_examples(s.text);
    } catch (const ParseError& e) {
      throw PipelineError(to_string(s.direction) + ".examples: " + e.what());
    }
  }
  // Modes of the other direction would never fire; keep only this head.
  auto modes_for = [&](Direction d) {
    std::vector<ModeDeclaration> out;
    for (const auto& m : bg.modes)
      if (m.kind == ModeDeclaration::Kind::body || symbol_name(m.predicate) == to_string(d)) out.push_back(m);
    return out;
  };
  std::vector<std::future<LearnResult>> jobs;
  for (auto& s : sessions)
    jobs.push_back(std::async(std::launch::async, [&, d = s.direction, ex = &s.examples] {
      auto modes = modes_for(d);
      return learn(ex->positives, ex->negatives, bg_prog, modes, evalfn, cfg.params);
    }));
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    try {
      sessions[i].result = jobs[i].get();
    } catch (const std::invalid_argument& e) {
      throw PipelineError(to_string(sessions[i].direction) + " session: " + e.what());
    }
  }

  fs::path out(cfg.out_dir);
  detail::ensure_dir(out);
  RunResult res;
  std::ostringstream log;
  for (auto& s : sessions) {
    auto hdr = learn_header(cfg, detail::seed_lines(s.text));
    auto& theory = s.result.theory;
    if (theory.target == 0) {
      theory.target = intern(to_string(s.direction));
      theory.target_arity = 3;
    }
    detail::write_file(out / (to_string(s.direction) + ".theory"), format_theory(theory, hdr));
    std::size_t memorized = 0;
    for (const auto& p : theory.provenance) memorized += p.memorized;
    log << to_string(s.direction) << ": " << theory.clauses.size() << " clauses (" << memorized
        << " memorized), " << s.result.iterations << " iterations, " << s.examples.positives.size()
        << " positives, " << s.examples.negatives.size() << " negatives\n";
    for (std::size_t i = 0; i < theory.clauses.size(); ++i) {
      const auto& p = theory.provenance[i];
      log << "  seed=" << to_string(p.seed) << " P=" << p.positives << " N=" << p.negatives
          << " score=" << to_string(p.score) << " bottom=" << p.bottom_size << (p.memorized ? " memorized" : "")
          << "\n    " << to_string(theory.clauses[i]) << "\n";
    }
    for (const auto& w : s.result.warnings) {
      res.warnings.push_back(to_string(s.direction) + ": " + w);
      log << "  warning: " << w << "\n";
    }
  }
  std::string log_text = detail::header('%', learn_header(cfg, detail::seed_lines(sessions[0].text))) + log.str();
  detail::write_file(out / "learn.log", log_text);
  res.summary = log.str();
  res.exit_code = res.warnings.empty() ? 0 : 1;
  return res;
}

// ---- evaluate / baseline ----

struct EvaluateConfig {
  /// Theory files; clauses are routed by head predicate.
  std::vector<std::string> theories;
  std::string pos;
  std::string neg;
  std::string inventory = phonoilp::data_dir() + "/dutch.inventory";
  std::string background = "ipa";
  /// 0: take it from the theory headers (as learned), else 20.
  int derivation_depth = 0;
  std::string label;
  std::string out_dir = "out";
};

inline void write_report(const EvaluationReport& r, const std::string& out_dir, const std::vector<std::string>& hdr,
                         RunResult& res) {
  namespace fs = std::filesystem;
  fs::path out(out_dir);
  detail::ensure_dir(out);
  std::string table = format_report_table(r);
  std::vector<std::string> kv_header;
  for (const auto& h : hdr) kv_header.push_back("# " + h);
  detail::write_file(out / "report.txt", detail::header('#', hdr) + table);
  detail::write_file(out / "report.kv", format_report_keyvalue(r, kv_header));
  res.summary = table;
}

inline std::vector<Word> read_words(const std::string& path) {
  if (path.empty()) return {};
  return parse_lexicon(detail::read_file(path));
}

inline RunResult cmd_evaluate(const EvaluateConfig& cfg) {
  RunResult res;
  Theory prefix, suffix;
  prefix.target = intern("prefix");
  suffix.target = intern("suffix");
  prefix.target_arity = suffix.target_arity = 3;
  std::vector<std::string> hdr;
  int depth = cfg.derivation_depth;
  for (const auto& path : cfg.theories) {
    std::string text = detail::read_file(path);
    if (auto d = detail::header_value(text, "derivation-depth"); d && cfg.derivation_depth == 0) {
      try {
        depth = std::max(depth, std::stoi(*d));
      } catch (const std::logic_error&) {
        throw PipelineError(path + ": bad derivation-depth header");
      }
    }
    std::vector<Clause> clauses;
    try {
      clauses = parse_program(text);
    } catch (const ParseError& e) {
      throw PipelineError(path + ": " + e.what());
    }
    for (auto& c : clauses) {
      const std::string& name = symbol_name(c.head.predicate);
      if (name == "prefix") prefix.clauses.push_back(std::move(c));
      else if (name == "suffix") suffix.clauses.push_back(std::move(c));
      else throw PipelineError(path + ": clause for " + name + " is neither prefix nor suffix");
    }
    for (auto& l : detail::seed_lines(text))
      if (std::find(hdr.begin(), hdr.end(), l) == hdr.end()) hdr.push_back(l);
  }
  Background bg = load_background(cfg.inventory, cfg.background);
  Inventory inv = detail::load_inventory_or_fail(cfg.inventory);
  Program bg_prog(bg.clauses);
  if (depth <= 0) depth = 20;
  TheoryAcceptor acc(bg_prog, prefix, suffix, inv, depth);
  auto r = evaluate(acc, read_words(cfg.pos), read_words(cfg.neg));
  r.label = cfg.label.empty() ? cfg.background : cfg.label;
  r.prefix_clauses = prefix.clauses.size();
  r.suffix_clauses = suffix.clauses.size();
  hdr.push_back("background: " + cfg.background);
  write_report(r, cfg.out_dir, hdr, res);
  return res;
}

struct BaselineConfig {
  std::string lexicon;
  std::string negatives;
  std::string inventory = phonoilp::data_dir() + "/dutch.inventory";
  /// Optional model file; defaults enable every rule.
  std::string model;
  std::string out_dir = "out";
};

inline RunResult cmd_baseline(const BaselineConfig& cfg) {
  RunResult res;
  Inventory inv = detail::load_inventory_or_fail(cfg.inventory);
  SonorityModel model;
  if (!cfg.model.empty()) {
    try {
      model = parse_sonority_model(detail::read_file(cfg.model));
    } catch (const std::invalid_argument& e) {
      throw PipelineError(cfg.model + ": " + e.what());
    }
  }
  try {
    validate_inventory(inv, FeatureSystem::sonority);
  } catch (const InventoryError& e) {
    throw PipelineError(cfg.inventory + ": " + e.what());
  }
  auto pos = read_words(cfg.lexicon);
  auto neg = read_words(cfg.negatives);
  auto r = evaluate(sonority_acceptor(model, inv), pos, neg);
  r.label = "sonority";
  r.prefix_clauses = model.prefix_rules();
  r.suffix_clauses = model.suffix_rules();
  std::vector<std::string> hdr;
  for (const auto& path : {cfg.lexicon, cfg.negatives})
    if (!path.empty())
      for (auto& l : detail::seed_lines(detail::read_file(path)))
        if (std::find(hdr.begin(), hdr.end(), l) == hdr.end()) hdr.push_back(l);
  write_report(r, cfg.out_dir, hdr, res);
  return res;
}

// ---- export-background ----

struct ExportConfig {
  std::string inventory = phonoilp::data_dir() + "/dutch.inventory";
  std::string background = "ipa";
  /// Empty means return the text in the summary only.
  std::string out;
};

inline RunResult cmd_export_background(const ExportConfig& cfg) {
  RunResult res;
  Background bg = load_background(cfg.inventory, cfg.background);
  res.summary = format_background(bg);
  if (!cfg.out.empty()) detail::write_file(cfg.out, res.summary);
  return res;
}

}  // namespace phonoilp

#endif  // PHONOILP_PIPELINE_HPP
