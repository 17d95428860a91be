// phonoilp: generate examples, learn affixing theories, evaluate them and
// the sonority baseline.
//
// Exit status: 0 success, 1 finished with warnings, 2 usage or I/O error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "phonoilp/phonoilp.hpp"

namespace {

int finish(const phonoilp::RunResult& r) {
  std::cout << r.summary;
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  return r.warnings.empty() ? r.exit_code : 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace phonoilp;
  CLI::App app{"Learn phonotactic affixing rules with inductive logic programming"};
  app.set_config("--config", "", "Read options from a key = value file ([subcommand] sections)");
  app.require_subcommand(1);

  GenerateConfig gen;
  auto* g = app.add_subcommand("generate", "Build prefix/suffix example files and data splits from a lexicon");
  g->add_option("--lexicon", gen.lexicon, "Lexicon file, one space-separated word per line")->required();
  g->add_option("--inventory", gen.inventory, "Phoneme inventory")->capture_default_str();
  g->add_option("--eval-split", gen.eval_split, "Held-out words: count or fraction")->capture_default_str();
  g->add_option("--neg-seed", gen.neg_seed, "Seed for negatives and the split")->capture_default_str();
  g->add_option("--neg-quota", gen.neg_quota, "LEN=COUNT, onset:LEN=COUNT or coda:LEN=COUNT (repeatable)");
  g->add_option("--neg-per-length", gen.neg_per_length, "Default negatives per length (0: lexicon size / 6)");
  g->add_option("--out", gen.out_dir, "Output directory")->capture_default_str();

  LearnConfig lrn;
  std::string min_accuracy = "0.85";
  std::string seed_order = "corpus";
  auto* l = app.add_subcommand("learn", "Learn prefix and suffix theories from generated examples");
  l->add_option("--data", lrn.data_dir, "Directory with prefix.examples and suffix.examples")->capture_default_str();
  l->add_option("--inventory", lrn.inventory, "Phoneme inventory")->capture_default_str();
  l->add_option("--background", lrn.background, "ipa, booij or sonority")
      ->check(CLI::IsMember({"ipa", "booij", "sonority"}))
      ->capture_default_str();
  l->add_option("--eval", lrn.eval_function, "laplace or coverage")
      ->check(CLI::IsMember({"laplace", "coverage"}))
      ->capture_default_str();
  l->add_option("--max-clause-literals", lrn.params.max_clause_literals, "Clause length, head included")
      ->capture_default_str();
  l->add_option("--variable-depth", lrn.params.variable_depth)->capture_default_str();
  l->add_option("--derivation-depth", lrn.params.derivation_depth)->capture_default_str();
  l->add_option("--min-accuracy", min_accuracy, "Decimal or fraction")->capture_default_str();
  l->add_option("--open-list-bound", lrn.params.open_list_bound, "Clauses evaluated per reduction")
      ->capture_default_str();
  l->add_option("--seed-order", seed_order)->check(CLI::IsMember({"corpus", "shuffled"}))->capture_default_str();
  l->add_option("--search-seed", lrn.params.search_seed)->capture_default_str();
  l->add_option("--out", lrn.out_dir, "Output directory")->capture_default_str();

  EvaluateConfig ev;
  auto* e = app.add_subcommand("evaluate", "Score theories on held-out positive and negative words");
  e->add_option("--theory", ev.theories, "Theory file (repeatable)")->required();
  e->add_option("--pos", ev.pos, "Positive test lexicon");
  e->add_option("--neg", ev.neg, "Negative test lexicon");
  e->add_option("--inventory", ev.inventory)->capture_default_str();
  e->add_option("--background", ev.background)->check(CLI::IsMember({"ipa", "booij", "sonority"}))
      ->capture_default_str();
  e->add_option("--derivation-depth", ev.derivation_depth, "0: as recorded in the theory files");
  e->add_option("--label", ev.label, "Column label in the report table");
  e->add_option("--out", ev.out_dir)->capture_default_str();

  BaselineConfig bl;
  auto* b = app.add_subcommand("baseline", "Score the sonority acceptor");
  b->add_option("--lexicon", bl.lexicon, "Positive test lexicon");
  b->add_option("--negatives", bl.negatives, "Negative test lexicon");
  b->add_option("--inventory", bl.inventory)->capture_default_str();
  b->add_option("--model", bl.model, "Sonority model file");
  b->add_option("--out", bl.out_dir)->capture_default_str();

  ExportConfig ex;
  auto* x = app.add_subcommand("export-background", "Print the background knowledge and mode declarations");
  x->add_option("--inventory", ex.inventory)->capture_default_str();
  x->add_option("--background", ex.background)->check(CLI::IsMember({"ipa", "booij", "sonority"}))
      ->capture_default_str();
  x->add_option("--out", ex.out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*g) return finish(cmd_generate(gen));
    if (*l) {
      try {
        lrn.params.min_accuracy = parse_fraction(min_accuracy);
      } catch (const std::exception&) {
        throw PipelineError("bad --min-accuracy '" + min_accuracy + "'");
      }
      lrn.params.seed_order = seed_order == "shuffled" ? SeedOrder::shuffled : SeedOrder::corpus;
      return finish(cmd_learn(lrn));
    }
    if (*e) return finish(cmd_evaluate(ev));
    if (*b) return finish(cmd_baseline(bl));
    if (*x) {
      auto r = cmd_export_background(ex);
      if (!ex.out.empty()) r.summary.clear();
      return finish(r);
    }
  } catch (const PipelineError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
