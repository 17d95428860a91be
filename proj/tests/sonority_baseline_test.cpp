#include <gtest/gtest.h>

#include "phonoilp/sonority.hpp"

using namespace phonoilp;

namespace {

const Inventory& dutch() {
  static const Inventory inv = load_inventory(data_dir() + "/dutch.inventory");
  return inv;
}

SonorityVerdict judge(const std::string& word, const SonorityModel& m = {}) {
  return sonority_accepts(m, dutch(), parse_lexicon(word).at(0));
}

}  // namespace

TEST(Sonority, KarlKalr) {
  EXPECT_TRUE(judge("k A r l").accepted);
  auto v = judge("k A l r");
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.reason, "sonority");
}

TEST(Sonority, VoicedObstruentCoda) {
  auto v = judge("A b");
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.reason, "no-voiced-obstruent-coda");
  SonorityModel off;
  off.filter_no_voiced_obstruent_coda = false;
  EXPECT_TRUE(judge("A b", off).accepted);
}

TEST(Sonority, SLicense) {
  EXPECT_TRUE(judge("s t r a k").accepted);
  SonorityModel strict;
  strict.s_license = false;
  EXPECT_EQ(judge("s t r a k", strict).reason, "sonority");
  // Only the outermost position is licensed.
  EXPECT_EQ(judge("t s r a k").reason, "sonority");
  EXPECT_TRUE(judge("s a").accepted);
}

TEST(Sonority, StrictDecrease) {
  EXPECT_EQ(judge("k t a").reason, "sonority");     // equal obstruents
  EXPECT_EQ(judge("m a : k t").reason, "sonority");  // k(1) then t(1)
  EXPECT_TRUE(judge("p l a n t").accepted);
  EXPECT_EQ(judge("n m a").reason, "sonority");  // n (2.25) outside m (2)
  EXPECT_TRUE(judge("m n a").accepted);
}

TEST(Sonority, TemplateFailure) { EXPECT_EQ(judge("p s t").reason, "template"); }

TEST(Sonority, LeftSonorityFilter) {
  SegmentedWord sw{{"s", "t", "r"}, {"a"}, {}};
  EXPECT_TRUE(filter_left_sonority(sw, {}, dutch()));
  EXPECT_TRUE(filter_left_sonority(SegmentedWord{{}, {"a"}, {}}, {}, dutch()));
  SonorityModel m;
  m.scale["r"] = Score(4);
  EXPECT_FALSE(filter_left_sonority(sw, m, dutch()));
  // With r raised to 4 the progression still holds (4 < vowel fails first).
  EXPECT_EQ(judge("s t r a", m).reason, "sonority");
}

TEST(Sonority, ModelFile) {
  auto m = parse_sonority_model("# comment\nscale.r = 2.5\nlicense.s_onset = off\nfilter.left_sonority=on\n");
  EXPECT_EQ(m.scale.at("r"), Score(5, 2));
  EXPECT_FALSE(m.s_license);
  EXPECT_TRUE(m.filter_left_sonority);
  EXPECT_EQ(judge("k A r l", m).reason, "sonority");  // l and r now equal
  EXPECT_THROW(parse_sonority_model("bogus = 1"), std::invalid_argument);
  EXPECT_THROW(parse_sonority_model("license.s_onset = maybe"), std::invalid_argument);
  EXPECT_THROW(parse_sonority_model("no equals sign"), std::invalid_argument);
}

TEST(Sonority, ScaleMonotonicity) {
  const auto& inv = dutch();
  auto s = [&](const std::string& p) { return *inv.sonority(p); };
  EXPECT_LT(s("t"), s("m"));
  EXPECT_LT(s("m"), s("n"));
  EXPECT_LT(s("n"), s("l"));
  EXPECT_LT(s("l"), s("r"));
  EXPECT_LT(s("r"), s("j"));
  EXPECT_LT(s("j"), s("a"));
}
