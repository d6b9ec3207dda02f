#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace ppcalc;
using namespace testing_helpers;

TEST(Parse, DivisibilityEncoding) {
  const PpFormula f = left("2|x", Z());
  EXPECT_EQ(f.witnesses(), 1u);
  EXPECT_EQ(f.A(), IntMatrix{{Int(2)}});
  EXPECT_EQ(f.B(), IntMatrix{{Int(1)}});
  EXPECT_EQ(f.size(), 5u);
}

TEST(Parse, AnnihilationEncoding) {
  const PpFormula f = left("2 x = 0", Zn(4));
  EXPECT_TRUE(f.is_quantifier_free());
  EXPECT_EQ(f.B(), IntMatrix{{Int(2)}});
}

TEST(Parse, TopIsZeroRow) {
  const PpFormula f = left("x = x", Zn(6));
  EXPECT_TRUE(f.is_top());
  EXPECT_EQ(f.rows(), 1u);
  EXPECT_EQ(f.witnesses(), 0u);
  EXPECT_EQ(f.B(), IntMatrix{{Int(0)}});
  EXPECT_EQ(f, PpFormula::top(Zn(6), Side::Left));
}

TEST(Parse, MatrixForm) {
  const PpFormula f = left("[2 0; 0 3] | [1 0; 0 1] (x1, x2)", Z());
  EXPECT_EQ(f.arity(), 2u);
  EXPECT_EQ(f.witnesses(), 2u);
  EXPECT_EQ(print(f), "[2 0; 0 3] | [1 0; 0 1] (x1, x2)");
}

TEST(Parse, ConnectivesExpand) {
  const Ring R = Zn(12);
  EXPECT_TRUE(equiv(left("2|x & 3|x", R), meet(left("2|x", R), left("3|x", R))));
  EXPECT_TRUE(equiv(left("2|x + 3|x", R), join(left("2|x", R), left("3|x", R))));
  EXPECT_TRUE(equiv(left("(4x = 0) & (3|x)", R), meet(left("4x = 0", R), left("3|x", R))));
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    (void)left("2|", Z());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
  EXPECT_EQ(left("7|x", Zn(4)), left("3|x", Zn(4)));
  EXPECT_THROW((void)left("a|x", Zn(4)), ParseError);
  EXPECT_THROW((void)left("[1 2; 3] | [1; 1] (x)", Z()), ParseError);
  EXPECT_THROW((void)left("2x = 3", Z()), ParseError);
}

TEST(Parse, LiteralZeroOverRenamedRing) {
  Rng rng(5);
  const Ring R = relabelled(Zn(4), rng);
  const PpFormula f = PpFormula::annihilation(R, Side::Left, Int(2));
  EXPECT_EQ(parse(print(f), R, Side::Left), f);
}

TEST(Print, RoundTripOnRandomFormulas) {
  for (const auto& [name, R] : default_corpus(11)) {
    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
      const PpFormula f = random_formula(R, Side::Left, rng, 1 + i % 2);
      EXPECT_EQ(parse(print(f), R, Side::Left, f.arity()), f) << name << ": " << print(f);
    }
  }
}

TEST(Dual, DivisibilityBecomesAnnihilation) {
  const PpFormula d = dual(left("2|x", Z()));
  EXPECT_EQ(d.side(), Side::Right);
  EXPECT_TRUE(equiv(d, PpFormula::annihilation(Z(), Side::Right, Int(2))));
}

TEST(Dual, AnnihilationBecomesDivisibility) {
  const Ring R = ut2_f2();
  for (const Int& s : R.elements())
    EXPECT_TRUE(equiv(dual(PpFormula::annihilation(R, Side::Left, s)), PpFormula::divisibility(R, Side::Right, s)))
        << R.element_name(s);
}

TEST(Dual, SwapsTopAndBottom) {
  const Ring R = Zn(6);
  EXPECT_TRUE(equiv(dual(PpFormula::top(R, Side::Left)), PpFormula::bottom(R, Side::Right)));
  EXPECT_TRUE(equiv(dual(PpFormula::bottom(R, Side::Left)), PpFormula::top(R, Side::Right)));
}

TEST(Dual, IsAnInvolutionUpToEquivalence) {
  for (const auto& [name, R] : default_corpus(3)) {
    Rng rng(23);
    for (int i = 0; i < 40; ++i) {
      const PpFormula f = random_formula(R, Side::Left, rng);
      EXPECT_TRUE(equiv(dual(dual(f)), f)) << name << ": " << print(f);
    }
  }
}

TEST(Multiple, Examples) {
  const Ring R = Zn(4);
  const PpFormula f = left("2|x", R);
  EXPECT_TRUE(equiv(multiple(Int(1), f), f));
  EXPECT_TRUE(equiv(multiple(Int(0), f), PpFormula::bottom(R, Side::Left)));
  EXPECT_TRUE(equiv(multiple(Int(2), PpFormula::top(R, Side::Left)), f));
}

TEST(Inverse, Examples) {
  const Ring R = Zn(8);
  EXPECT_TRUE(equiv(inverse(Int(1), left("4|x", R)), left("4|x", R)));
  EXPECT_EQ(names(evaluate(inverse(Int(2), left("4|x", R)), regular_module(R, Side::Left))),
            (std::set<std::string>{"0", "2", "4", "6"}));
  for (const Int& r : R.elements())
    EXPECT_TRUE(equiv(inverse(r, PpFormula::bottom(R, Side::Left)), PpFormula::annihilation(R, Side::Left, r)));
}

TEST(MeetJoin, LatticeIdentities) {
  const Ring R = Zn(4);
  const PpFormula f = left("2|x", R);
  EXPECT_TRUE(equiv(meet(f, PpFormula::top(R, Side::Left)), f));
  EXPECT_TRUE(equiv(join(f, PpFormula::bottom(R, Side::Left)), f));
  EXPECT_TRUE(equiv(join(left("2|x", R), left("2x = 0", R)), left("2x = 0", R)));
  EXPECT_TRUE(equiv(meet(left("2|x", Z()), left("3|x", Z())), left("6|x", Z())));
}

TEST(MeetJoin, MismatchesAreRejected) {
  EXPECT_THROW((void)meet(left("2|x", Zn(4)), left("2|x", Zn(6))), Error);
  EXPECT_THROW((void)join(left("2|x", Zn(4)), parse("2|x", Zn(4), Side::Right)), Error);
  EXPECT_THROW((void)meet(left("2|x", Z()), left("[] | [1 1] (x1, x2)", Z())), Error);
}

TEST(Gamma, TopIsNeutral) {
  for (const auto& [name, R] : finite_corpus(2)) {
    Rng rng(41);
    for (int i = 0; i < 20; ++i) {
      const PpFormula f = random_formula(R, Side::Left, rng);
      EXPECT_TRUE(equiv(gamma_superscript(f, PpFormula::top(R, Side::Left)), f)) << name;
      EXPECT_TRUE(equiv(gamma_subscript(f, PpFormula::top(R, Side::Left)), f)) << name;
    }
  }
}

TEST(Gamma, QuantifierFreeSuperscriptIsSubscript) {
  const Ring R = Zn(12);
  const PpFormula f = left("[] | [3 1] (x1, x2)", R), g = left("4|x", R);
  EXPECT_EQ(gamma_superscript(f, g), gamma_subscript(f, g));
}

// The witness y with 2y = x must itself satisfy 2y = 0, which forces x = 0.
TEST(Gamma, DecoratedDivisibilityOverZ4) {
  const Ring R = Zn(4);
  const PpFormula f = gamma_superscript(left("2|x", R), left("2x = 0", R));
  const Module& M = regular_module(R, Side::Left);
  EXPECT_EQ(names(evaluate(f, M)), (std::set<std::string>{"0"}));
  EXPECT_TRUE(matches_oracle(f, M));
  EXPECT_TRUE(matches_oracle(f, Module::abelian(R, 0, {Int(2), Int(4)})));
}

TEST(Gamma, RejectsNonUnaryDecoration) {
  const Ring R = Zn(4);
  EXPECT_THROW((void)gamma_subscript(left("2|x", R), left("[] | [1 1] (x1, x2)", R)), Error);
}
