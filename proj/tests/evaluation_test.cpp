#include <gtest/gtest.h>

#include "phonoilp/evaluation.hpp"

using namespace phonoilp;

namespace {

const Inventory& toy() {
  static const Inventory inv = load_inventory(data_dir() + "/toy.inventory");
  return inv;
}

Word w(const std::string& spaced) { return parse_lexicon(spaced).at(0); }

Theory theory_of(const std::string& text) { return parse_theory(text); }

std::vector<Word> all_words(std::size_t max_onset_len, std::size_t max_coda_len) {
  std::vector<Word> out;
  auto cons = toy().symbols(PhoneClass::consonant);
  for (const auto& v : toy().symbols(PhoneClass::vowel)) {
    out.push_back({v});
    if (max_onset_len >= 1)
      for (const auto& c : cons) out.push_back({c, v});
    if (max_coda_len >= 1)
      for (const auto& c : cons) out.push_back({v, c});
    if (max_onset_len >= 1 && max_coda_len >= 1)
      for (const auto& a : cons)
        for (const auto& b : cons) out.push_back({a, v, b});
  }
  return out;
}

}  // namespace

class AcceptanceTest : public ::testing::Test {
 protected:
  Background bg = background(toy(), FeatureSystem::ipa);
  Program prog{bg.clauses};
};

TEST_F(AcceptanceTest, OneConsonantEachSide) {
  auto prefix = theory_of("prefix(A,[],C). prefix('^',B,C).");
  auto suffix = theory_of("suffix(A,[],C). suffix('^',B,C).");
  TheoryAcceptor acc(prog, prefix, suffix, toy(), 20);
  for (const auto& word : all_words(1, 1)) EXPECT_TRUE(acc(word).accepted) << word_label(word);
  auto v = acc(w("p t a"));
  EXPECT_FALSE(v.accepted);
  ASSERT_TRUE(v.failing);
  EXPECT_EQ(to_string(*v.failing), "prefix(p,[t],[a])");
}

TEST_F(AcceptanceTest, BareNucleusOnly) {
  auto prefix = theory_of("prefix('^',[],C).");
  auto suffix = theory_of("suffix('^',[],C).");
  TheoryAcceptor acc(prog, prefix, suffix, toy(), 20);
  for (const auto& word : all_words(1, 1)) EXPECT_EQ(acc(word).accepted, word.size() == 1) << word_label(word);
}

TEST_F(AcceptanceTest, EmptyTheoryRejectsAtFirstStep) {
  Theory none;
  TheoryAcceptor acc(prog, none, none, toy(), 20);
  auto v = acc(w("p a t"));
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(to_string(*v.failing), "prefix(p,[],[a])");
  EXPECT_EQ(to_string(*acc(w("a")).failing), "prefix(^,[],[a])");
  EXPECT_EQ(acc(w("p t")).reason, "template");
}

TEST_F(AcceptanceTest, RejectionReasonsReplay) {
  auto prefix = theory_of("prefix(A,[],C) :- manner(plosive,A). prefix('^',B,C).");
  auto suffix = theory_of("suffix('^',B,C). suffix(A,[],C) :- voiced(plus,A).");
  TheoryAcceptor acc(prog, prefix, suffix, toy(), 20);
  for (const auto& word : all_words(1, 1)) {
    auto v = acc(word);
    if (v.accepted) continue;
    ASSERT_TRUE(v.failing);
    EXPECT_FALSE(acc.proves(*v.failing));
  }
}

TEST_F(AcceptanceTest, ReportArithmetic) {
  auto everything = theory_of("prefix(A,B,C).");
  auto suffix = theory_of("suffix(A,B,C).");
  TheoryAcceptor acc(prog, everything, suffix, toy(), 20);
  std::vector<Word> pos = {w("p a"), w("t a")};
  std::vector<Word> neg = {w("s a"), w("m a"), w("l a")};
  auto r = evaluate(acc, pos, neg);
  EXPECT_EQ(r.recall, Score(1));
  EXPECT_EQ(r.precision, Score(2, 5));
  EXPECT_FALSE(r.precision_undefined);

  Theory none;
  TheoryAcceptor reject(prog, none, none, toy(), 20);
  auto z = evaluate(reject, pos, neg);
  EXPECT_EQ(z.recall, Score(0));
  EXPECT_EQ(z.precision, Score(1));
  EXPECT_TRUE(z.precision_undefined);

  auto empty = evaluate(acc, {}, {});
  EXPECT_TRUE(empty.empty);
  EXPECT_NE(format_report_table(empty).find("empty"), std::string::npos);
}

TEST_F(AcceptanceTest, ReportFormats) {
  auto prefix = theory_of("prefix(A,[],C). prefix('^',B,C).");
  auto suffix = theory_of("suffix('^',B,C).");
  TheoryAcceptor acc(prog, prefix, suffix, toy(), 20);
  auto r = evaluate(acc, {w("p a"), w("p a t")}, {w("t a"), w("a t")});
  r.label = "ipa";
  r.prefix_clauses = prefix.clauses.size();
  r.suffix_clauses = suffix.clauses.size();
  EXPECT_EQ(format_report_table(r),
            "             | ipa\n"
            "Recall       | 50.0%\n"
            "Precision    | 50.0%\n"
            "Num. Clauses | 2+1\n");
  auto kv = format_report_keyvalue(r, {"# neg-seed: 1"});
  EXPECT_NE(kv.find("recall: 1/2\n"), std::string::npos);
  EXPECT_NE(kv.find("rejected_positive: /p a t/ suffix(t,[],[a])\n"), std::string::npos);
  EXPECT_NE(kv.find("accepted_negative: /t a/\n"), std::string::npos);
  EXPECT_EQ(kv.rfind("# neg-seed: 1\n", 0), 0u);
}

TEST(BaselineEvaluation, KarlKalr) {
  auto dutch = load_inventory(data_dir() + "/dutch.inventory");
  SonorityModel m;
  auto r = evaluate(sonority_acceptor(m, dutch), {w("k A r l"), w("k A l r")}, {});
  EXPECT_EQ(r.positives_accepted, 1u);
  EXPECT_EQ(r.positive_verdicts[1].reason, "sonority");
}
