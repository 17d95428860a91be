#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "phonoilp/pipeline.hpp"

using namespace phonoilp;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(PHONOILP_CLI) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string toy_inventory = data_dir() + "/toy.inventory";

}  // namespace

class PipelineTest : public ::testing::Test {
 protected:
  fs::path dir;

  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir = fs::temp_directory_path() / (std::string("phonoilp_") + info->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  GenerateConfig toy_generate(const std::string& lexicon_text, const std::string& out) {
    spit(dir / "lexicon", lexicon_text);
    GenerateConfig g;
    g.lexicon = (dir / "lexicon").string();
    g.inventory = toy_inventory;
    g.out_dir = (dir / out).string();
    return g;
  }

  LearnConfig toy_learn(const std::string& data, const std::string& out) {
    LearnConfig l;
    l.data_dir = (dir / data).string();
    l.inventory = toy_inventory;
    l.out_dir = (dir / out).string();
    return l;
  }
};

TEST_F(PipelineTest, GenerateCountsTinyLexicon) {
  auto r = cmd_generate(toy_generate("p a\nt a\np a t\nt a t\n", "g"));
  EXPECT_EQ(r.exit_code, 0);
  std::string m = slurp(dir / "g" / "manifest.txt");
  // pa, ta: two prefix steps each; pat, tat: same. Suffix: 1 + 1 + 2 + 2.
  EXPECT_NE(m.find("prefix_positive_instances: 8\n"), std::string::npos);
  EXPECT_NE(m.find("prefix_positive_unique: 4\n"), std::string::npos);
  EXPECT_NE(m.find("suffix_positive_instances: 6\n"), std::string::npos);
  EXPECT_NE(m.find("suffix_positive_unique: 3\n"), std::string::npos);
  auto ex = parse_examples(slurp(dir / "g" / "prefix.examples"));
  EXPECT_EQ(ex.positives.size(), 4u);
  EXPECT_EQ(slurp(dir / "g" / "prefix.examples").rfind("% neg-seed: 42\n", 0), 0u);
}

TEST_F(PipelineTest, GenerateIsDeterministic) {
  auto g = toy_generate("p a\nt a\np a t\nt a t\ns a\nm a l\n", "a");
  g.eval_split = "0.5";
  cmd_generate(g);
  g.out_dir = (dir / "b").string();
  cmd_generate(g);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    ++files;
    EXPECT_EQ(slurp(entry.path()), slurp(dir / "b" / entry.path().filename())) << entry.path();
  }
  EXPECT_EQ(files, 7u);
}

TEST_F(PipelineTest, MissingLexiconIsAnError) {
  GenerateConfig g;
  g.lexicon = (dir / "nope").string();
  g.inventory = toy_inventory;
  EXPECT_THROW(cmd_generate(g), PipelineError);
  EXPECT_EQ(run_cli("generate --lexicon " + (dir / "nope").string()), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("--help"), 0);
}

TEST_F(PipelineTest, UnsatisfiableQuotaIsAnError) {
  auto g = toy_generate("p a\n", "g");
  g.neg_quota = {"onset:1=1000"};
  EXPECT_THROW(cmd_generate(g), PipelineError);
  g.neg_quota = {"garbage"};
  EXPECT_THROW(cmd_generate(g), PipelineError);
}

TEST_F(PipelineTest, EmptyNegativesGiveMostGeneralTheories) {
  fs::create_directories(dir / "d");
  spit(dir / "d" / "prefix.examples", "+ prefix(p,[],[a]).\n+ prefix(t,[],[a]).\n");
  spit(dir / "d" / "suffix.examples", "+ suffix('^',[],[a]).\n");
  auto r = cmd_learn(toy_learn("d", "l"));
  EXPECT_EQ(r.exit_code, 0);
  auto p = parse_theory(slurp(dir / "l" / "prefix.theory"));
  auto s = parse_theory(slurp(dir / "l" / "suffix.theory"));
  ASSERT_EQ(p.clauses.size(), 1u);
  EXPECT_EQ(to_string(p.clauses[0]), "prefix(A,B,C).");
  ASSERT_EQ(s.clauses.size(), 1u);
  EXPECT_EQ(to_string(s.clauses[0]), "suffix(A,B,C).");
  EXPECT_NE(slurp(dir / "l" / "learn.log").find("seed=prefix(p,[],[a]) P=2 N=0 score=3/4"), std::string::npos);
}

TEST_F(PipelineTest, ContradictionAtFullAccuracyIsMemorized) {
  fs::create_directories(dir / "d");
  spit(dir / "d" / "prefix.examples", "+ prefix(p,[],[a]).\n- prefix(p,[],[a]).\n");
  spit(dir / "d" / "suffix.examples", "");
  auto l = toy_learn("d", "l");
  l.params.min_accuracy = Score(1);
  auto r = cmd_learn(l);
  EXPECT_EQ(r.exit_code, 0);
  auto p = parse_theory(slurp(dir / "l" / "prefix.theory"));
  ASSERT_EQ(p.clauses.size(), 1u);
  EXPECT_EQ(to_string(p.clauses[0]), "prefix(p,[],[a]).");
  EXPECT_NE(slurp(dir / "l" / "prefix.theory").find(" memorized"), std::string::npos);
  // Empty file still yields a (clause-free) theory for its target.
  EXPECT_EQ(parse_theory(slurp(dir / "l" / "suffix.theory")).clauses.size(), 0u);
}

TEST_F(PipelineTest, LearnWarningsExitOne) {
  fs::create_directories(dir / "d");
  spit(dir / "d" / "prefix.examples", "+ prefix(p,[],[a],extra).\n");
  spit(dir / "d" / "suffix.examples", "");
  auto r = cmd_learn(toy_learn("d", "l"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_EQ(run_cli("learn --inventory " + toy_inventory + " --data " + (dir / "d").string() + " --out " +
                    (dir / "l2").string()),
            1);
  spit(dir / "d" / "prefix.examples", "+ suffix(p,[],[a]).\n- prefix(p,[],[a]).\n");
  EXPECT_THROW(cmd_learn(toy_learn("d", "l3")), PipelineError);
  EXPECT_EQ(run_cli("learn --inventory " + toy_inventory + " --data " + (dir / "nowhere").string()), 2);
}

TEST_F(PipelineTest, ToyEndToEndAcceptsTrainingWords) {
  auto g = toy_generate("p a\nt a\np a t\nt a t\nk i\ns p a\nk i l\n", "g");
  g.neg_per_length = 20;
  cmd_generate(g);
  auto r = cmd_learn(toy_learn("g", "l"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_FALSE(parse_theory(slurp(dir / "l" / "prefix.theory")).clauses.empty());
  EXPECT_FALSE(parse_theory(slurp(dir / "l" / "suffix.theory")).clauses.empty());

  EvaluateConfig e;
  e.theories = {(dir / "l" / "prefix.theory").string(), (dir / "l" / "suffix.theory").string()};
  e.pos = (dir / "g" / "train.lexicon").string();
  e.neg = (dir / "g" / "train.neg.lexicon").string();
  e.inventory = toy_inventory;
  e.out_dir = (dir / "e").string();
  cmd_evaluate(e);
  std::string kv = slurp(dir / "e" / "report.kv");
  EXPECT_NE(kv.find("recall: 1\n"), std::string::npos) << kv;
  EXPECT_NE(kv.find("positives_total: 7\n"), std::string::npos);
  EXPECT_NE(kv.find("# search-seed: 0\n"), std::string::npos);
  EXPECT_NE(kv.find("# neg-seed: 42\n"), std::string::npos);
  EXPECT_NE(slurp(dir / "e" / "report.txt").find("Recall       | 100.0%"), std::string::npos);
}

TEST_F(PipelineTest, EvaluateEmptySetsIsFlagged) {
  spit(dir / "t.theory", "% target: prefix/3\nprefix(A,B,C).\n");
  EvaluateConfig e;
  e.theories = {(dir / "t.theory").string()};
  e.inventory = toy_inventory;
  e.out_dir = (dir / "e").string();
  auto r = cmd_evaluate(e);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(slurp(dir / "e" / "report.kv").find("empty: true\n"), std::string::npos);
  EXPECT_NE(slurp(dir / "e" / "report.txt").find("(empty test sets)"), std::string::npos);

  spit(dir / "bad.theory", "% target: q/1\nq(a).\n");
  e.theories = {(dir / "bad.theory").string()};
  EXPECT_THROW(cmd_evaluate(e), PipelineError);
}

TEST_F(PipelineTest, BaselineKarlKalr) {
  spit(dir / "pos", "k A r l\nk A l r\n");
  BaselineConfig b;
  b.lexicon = (dir / "pos").string();
  b.out_dir = (dir / "b").string();
  cmd_baseline(b);
  std::string kv = slurp(dir / "b" / "report.kv");
  EXPECT_NE(kv.find("positives_accepted: 1\n"), std::string::npos);
  EXPECT_NE(kv.find("rejected_positive: /k A l r/ sonority\n"), std::string::npos);

  spit(dir / "model", "filter.bogus = on\n");
  b.model = (dir / "model").string();
  EXPECT_THROW(cmd_baseline(b), PipelineError);
}

TEST_F(PipelineTest, ConfigFileFeedsSubcommand) {
  fs::create_directories(dir / "d");
  spit(dir / "d" / "prefix.examples", "+ prefix(p,[],[a]).\n");
  spit(dir / "d" / "suffix.examples", "+ suffix('^',[],[a]).\n");
  spit(dir / "cfg.ini", "[learn]\nsearch-seed = 7\nmin-accuracy = 9/10\ninventory = " + toy_inventory +
                            "\ndata = " + (dir / "d").string() + "\n");
  EXPECT_EQ(run_cli("--config " + (dir / "cfg.ini").string() + " learn --out " + (dir / "l").string()), 0);
  std::string t = slurp(dir / "l" / "prefix.theory");
  EXPECT_NE(t.find("% search-seed: 7\n"), std::string::npos);
  EXPECT_NE(t.find("% min-accuracy: 9/10\n"), std::string::npos);
}

TEST_F(PipelineTest, ExportBackground) {
  ExportConfig x;
  x.inventory = toy_inventory;
  x.background = "sonority";
  x.out = (dir / "bg.pl").string();
  auto r = cmd_export_background(x);
  EXPECT_EQ(slurp(dir / "bg.pl"), r.summary);
  EXPECT_NE(r.summary.find("sonority_lt(p,a)."), std::string::npos);
  x.background = "klingon";
  EXPECT_THROW(cmd_export_background(x), PipelineError);
}
