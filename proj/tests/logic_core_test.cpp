#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "phonoilp/prover.hpp"
#include "phonoilp/subsumption.hpp"
#include "phonoilp/syntax.hpp"

using namespace phonoilp;

namespace {

Clause clause(std::string_view s) { return parse_clause(s); }

}  // namespace

// ---------------------------------------------------------------------------
// Syntax

TEST(Syntax, ParsesListsAndSymbolAtoms) {
  Literal l = parse_literal("prefix( m, [], [a,:] )");
  EXPECT_EQ(to_string(l), "prefix(m,[],[a,:])");
  EXPECT_EQ(to_string(parse_literal("prefix('^',[m],[a,:])")), "prefix(^,[m],[a,:])");
  EXPECT_EQ(to_string(parse_literal("suffix(^,[t,k],[:,a])")), "suffix(^,[t,k],[:,a])");
}

TEST(Syntax, ClauseRoundTripKeepsEqualityQuoting) {
  std::string src = "prefix(A,B,C) :- head(B,D), manner(trill,D), A='^'.";
  Clause c = clause(src);
  ASSERT_EQ(c.body.size(), 3u);
  EXPECT_TRUE(c.body[2].is_equality());
  EXPECT_EQ(to_string(c), src);
  EXPECT_EQ(clause(to_string(c)), c);
}

TEST(Syntax, QuotesUppercaseConstantsAndKeepsNumbers) {
  Literal l(intern("sonority"), {Term::constant("2.5"), Term::constant("S")});
  EXPECT_EQ(to_string(l), "sonority(2.5,'S')");
  EXPECT_EQ(parse_literal(to_string(l)), l);
}

TEST(Syntax, ParsesModeSchemaPrefixOperators) {
  Literal l = parse_literal("modeb(*, head(+context,-phone))");
  EXPECT_EQ(to_string(l), "modeb(*,head(+context,-phone))");
  Literal eq = parse_literal("modeb(1, +phone = #phone)");
  EXPECT_EQ(eq.args.size(), 2u);
}

TEST(Syntax, ProgramWithCommentsAndTail) {
  auto prog = parse_program(
      "% list access\n"
      "head([H|_],H).\n"
      "rest([_|T],T). % trailing\n");
  ASSERT_EQ(prog.size(), 2u);
  EXPECT_EQ(to_string(prog[0]), "head([A|B],A).");
}

TEST(Syntax, RejectsMalformedInput) {
  EXPECT_THROW(parse_clause("p(a"), ParseError);
  EXPECT_THROW(parse_clause("p(a) :- ."), ParseError);
  EXPECT_THROW(parse_program("p(a). 'open"), ParseError);
}

// ---------------------------------------------------------------------------
// unify / apply

TEST(Unify, VariableConstant) {
  VarScope v;
  Term x = parse_term("X", v);
  auto s = unify(x, parse_term("a", v));
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, (Substitution{{v.lookup("X"), Term::constant("a")}}));
}

TEST(Unify, CompoundTerms) {
  VarScope v;
  auto s = unify(parse_term("f(X,b)", v), parse_term("f(a,Y)", v));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->size(), 2u);
  EXPECT_EQ(s->at(v.lookup("X")), Term::constant("a"));
  EXPECT_EQ(s->at(v.lookup("Y")), Term::constant("b"));
}

TEST(Unify, Failures) {
  EXPECT_FALSE(unify(parse_term("a"), parse_term("b")));
  EXPECT_FALSE(unify(parse_term("f(a)"), parse_term("f(a,b)")));
  VarScope v;
  EXPECT_FALSE(unify(parse_term("X", v), parse_term("f(X)", v))) << "occurs check";
}

TEST(Apply, Examples) {
  VarScope v;
  Literal p = parse_literal("p(X,Y)", v);
  Substitution s{{v.lookup("X"), Term::constant("a")}};
  EXPECT_EQ(substitute(s, p), parse_literal("p(a,Y)", v));
  EXPECT_EQ(substitute(Substitution{}, p), p);
  Substitution f{{v.lookup("X"), parse_term("f(Y)", v)}};
  EXPECT_EQ(substitute(f, parse_term("g(X)", v)), parse_term("g(f(Y))", v));
}

namespace {

// Random term over constants {a,b}, functors f/2, g/1, variables 0..2.
Term random_term(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 2);
  switch (pick(rng)) {
    case 0: return Term::variable(std::uniform_int_distribution<VarId>(0, 2)(rng));
    case 1: return Term::constant("a");
    case 2: return Term::constant("b");
    case 3: return Term::compound("g", {random_term(rng, depth - 1)});
    default: return Term::compound("f", {random_term(rng, depth - 1), random_term(rng, depth - 1)});
  }
}

// All ground unifiers over the constant alphabet {a,b}, by enumeration.
std::vector<Substitution> ground_unifiers(const Term& a, const Term& b) {
  std::vector<Substitution> out;
  const Term consts[] = {Term::constant("a"), Term::constant("b")};
  for (int mask = 0; mask < 8; ++mask) {
    Substitution s;
    for (VarId v = 0; v < 3; ++v) s.emplace(v, consts[(mask >> v) & 1]);
    if (substitute(s, a) == substitute(s, b)) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(Unify, MguPropertyAgainstBruteForce) {
  std::mt19937 rng(7);
  int unifiable = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    Term a = random_term(rng, 2);
    Term b = random_term(rng, 2);
    auto mgu = unify(a, b);
    auto ground = ground_unifiers(a, b);
    if (!ground.empty()) {
      ASSERT_TRUE(mgu) << to_string(a) << " vs " << to_string(b);
    }
    if (!mgu) continue;
    ++unifiable;
    EXPECT_EQ(substitute(*mgu, a), substitute(*mgu, b));
    // Idempotence.
    for (const auto& [v, t] : *mgu) EXPECT_EQ(substitute(*mgu, t), t);
    // Every ground unifier factors through the mgu: theta = mgu ; theta.
    for (const auto& theta : ground) {
      for (VarId v = 0; v < 3; ++v) {
        Term x = Term::variable(v);
        EXPECT_EQ(substitute(theta, substitute(*mgu, x)), substitute(theta, x));
      }
    }
  }
  EXPECT_GT(unifiable, 300);
}

// ---------------------------------------------------------------------------
// derives

TEST(Derives, ListHeadBindsAnswer) {
  auto prog = parse_program("head([H|T],H).");
  VarScope v;
  Literal goal = parse_literal("head([m],X)", v);
  auto r = derives(prog, goal, 5);
  ASSERT_EQ(r.status, DeriveStatus::proved);
  EXPECT_EQ(r.answer.at(v.lookup("X")), Term::constant("m"));
}

TEST(Derives, EmptyProgramProvesNothing) {
  auto r = derives(std::vector<Clause>{}, parse_literal("p(a)"), 5);
  EXPECT_EQ(r.status, DeriveStatus::not_proved);
}

TEST(Derives, InfiniteRecursionIsCutByDepth) {
  auto prog = parse_program("p(X) :- p(X).");
  EXPECT_EQ(derives(prog, parse_literal("p(a)"), 10).status, DeriveStatus::depth_exhausted);
}

TEST(Derives, EqualityBuiltinAndBacktracking) {
  auto prog = parse_program(
      "q(a). q(b). r(b).\n"
      "p(X) :- q(X), r(X).\n"
      "s(X) :- X = b.\n");
  EXPECT_TRUE(derives(prog, parse_literal("p(b)"), 5).proved());
  EXPECT_FALSE(derives(prog, parse_literal("p(a)"), 5).proved());
  VarScope v;
  auto r = derives(prog, parse_literal("p(Z)", v), 5);
  ASSERT_TRUE(r.proved());
  EXPECT_EQ(r.answer.at(v.lookup("Z")), Term::constant("b"));
  EXPECT_TRUE(derives(prog, parse_literal("s(b)"), 5).proved());
  EXPECT_FALSE(derives(prog, parse_literal("s(a)"), 5).proved());
}

TEST(Derives, EnumeratesAnswersInProgramOrder) {
  Program prog(parse_program("c(x). c(y). c(z)."));
  Prover p({&prog}, 4);
  VarScope v;
  Literal goal = parse_literal("c(A)", v);
  std::vector<std::string> seen;
  p.for_each_answer(goal, 2, [&](const Substitution& s) { seen.push_back(to_string(s.at(0))); });
  EXPECT_EQ(seen, (std::vector<std::string>{"x", "y"}));
}

TEST(Derives, MonotoneInDepth) {
  // Random chain programs: n(k+1) :- n(k) style with branching facts.
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::string src;
    int preds = 4;
    for (int i = 0; i < 8; ++i) {
      int a = rng() % preds, b = rng() % preds;
      char c1 = "abc"[rng() % 3];
      switch (rng() % 3) {
        case 0: src += "p" + std::to_string(a) + "(" + c1 + ").\n"; break;
        case 1: src += "p" + std::to_string(a) + "(X) :- p" + std::to_string(b) + "(X).\n"; break;
        default:
          src += "p" + std::to_string(a) + "(X) :- p" + std::to_string(b) + "(X), p" +
                 std::to_string(rng() % preds) + "(X).\n";
      }
    }
    Program prog(parse_program(src));
    for (int q = 0; q < preds; ++q) {
      for (char c : std::string("abc")) {
        Literal goal = parse_literal("p" + std::to_string(q) + "(" + c + ")");
        bool proved_before = false;
        for (int d = 1; d <= 8; ++d) {
          bool now = derives(prog, goal, d).proved();
          if (proved_before) {
            EXPECT_TRUE(now) << src << to_string(goal) << " depth " << d;
          }
          proved_before = proved_before || now;
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// theta-subsumption

TEST(Subsumption, Examples) {
  EXPECT_TRUE(theta_subsumes(clause("p(X) :- q(X)."), clause("p(a) :- q(a), r(a).")));
  EXPECT_FALSE(theta_subsumes(clause("p(a)."), clause("p(X).")));
  Clause c = clause("p(X,Y) :- q(X,Z), r(Z,Y).");
  EXPECT_TRUE(theta_subsumes(c, c));
  EXPECT_FALSE(theta_subsumes(clause("p(X) :- q(X,X)."), clause("p(a) :- q(a,b).")));
}

TEST(Subsumption, BudgetExhaustionIsReported) {
  // Many interchangeable literals make the search wide; a tiny budget trips it.
  Clause c = clause("p :- e(A,B), e(B,C), e(C,D), e(D,E), e(E,F), e(F,A).");
  Clause d = clause("p :- e(a,b), e(b,a), e(b,c), e(c,b), e(c,a), e(a,c).");
  EXPECT_THROW(theta_subsumes(c, d, 5), ResourceExhausted);
}

namespace {

Literal random_literal(std::mt19937& rng, VarId vars) {
  static const char* preds[] = {"q", "r"};
  std::string p = preds[rng() % 2];
  std::vector<Term> args;
  int arity = p == "q" ? 1 : 2;
  for (int i = 0; i < arity; ++i) {
    if (rng() % 4 == 0) {
      args.push_back(Term::constant(std::string(1, "ab"[rng() % 2])));
    } else {
      args.push_back(Term::variable(rng() % vars));
    }
  }
  return Literal(p, std::move(args));
}

Clause random_clause(std::mt19937& rng, int body, VarId vars) {
  Clause c(Literal("p", {Term::variable(0)}));
  for (int i = 0; i < body; ++i) c.body.push_back(random_literal(rng, vars));
  return c;
}

// A specialization: bind some variables, then append random literals.
Clause specialize(std::mt19937& rng, const Clause& c) {
  Substitution s;
  for (VarId v = 0; v < 4; ++v)
    if (rng() % 3 == 0) s.emplace(v, rng() % 2 ? Term::constant("a") : Term::variable(rng() % 4));
  Clause d = substitute(s, c);
  int extra = rng() % 3;
  for (int i = 0; i < extra; ++i) d.body.push_back(random_literal(rng, 4));
  return d;
}

}  // namespace

TEST(Subsumption, ReflexiveAndTransitive) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    Clause a = random_clause(rng, rng() % 4, 3);
    EXPECT_TRUE(theta_subsumes(a, a));
    Clause b = specialize(rng, a);
    Clause c = specialize(rng, b);
    ASSERT_TRUE(theta_subsumes(a, b));
    ASSERT_TRUE(theta_subsumes(b, c));
    EXPECT_TRUE(theta_subsumes(a, c));
    // Transitivity over arbitrary triples as well.
    Clause x = random_clause(rng, 2, 3), y = random_clause(rng, 3, 3), z = random_clause(rng, 4, 3);
    if (theta_subsumes(x, y) && theta_subsumes(y, z)) {
      EXPECT_TRUE(theta_subsumes(x, z));
    }
  }
}

TEST(Subsumption, GeneralClauseCoversEverythingSpecificOneCovers) {
  // Herbrand domain of <= 4 constants, random background, exhaustive ground queries.
  std::mt19937 rng(5);
  const std::vector<std::string> consts = {"a", "b", "c", "d"};
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Clause> background;
    for (const auto& x : consts) {
      if (rng() % 2) background.push_back(Clause(Literal("q", {Term::constant(x)})));
      for (const auto& y : consts) {
        if (rng() % 3 == 0) background.push_back(Clause(Literal("r", {Term::constant(x), Term::constant(y)})));
      }
    }
    Clause c = random_clause(rng, rng() % 3, 3);
    Clause d = specialize(rng, c);
    if (!theta_subsumes(c, d)) continue;
    ++checked;
    Program bg(background);
    Program pc({c});
    Program pd({d});
    Prover via_c({&bg, &pc}, 10);
    Prover via_d({&bg, &pd}, 10);
    for (const auto& x : consts) {
      Literal ex("p", {Term::constant(x)});
      if (via_d.proves(ex)) {
        EXPECT_TRUE(via_c.proves(ex)) << to_string(c) << " / " << to_string(d);
      }
    }
  }
  EXPECT_GT(checked, 250);
}
