#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace ppcalc;
using namespace testing_helpers;

TEST(Classify, DivisibilityOverZ) {
  const Classification c = classify(left("2|x", Z()));
  EXPECT_TRUE(c.high);
  EXPECT_TRUE(c.cobounded);
  EXPECT_FALSE(c.low);
  EXPECT_FALSE(c.bounded);
  EXPECT_EQ(c.region, Region::N);
  ASSERT_TRUE(c.cobound_witness.has_value());
  EXPECT_TRUE(implies(PpFormula::divisibility(Z(), Side::Left, *c.cobound_witness), left("2|x", Z())));
}

TEST(Classify, AnnihilationOverZ) {
  const Classification c = classify(left("3x = 0", Z()));
  EXPECT_TRUE(c.low);
  EXPECT_TRUE(c.bounded);
  EXPECT_EQ(c.region, Region::S);
}

TEST(Classify, EastRegionOverZ6) {
  const Ring R = Zn(6);
  const Classification c = classify(left("3|x", R));
  EXPECT_TRUE(c.bounded && c.cobounded);
  EXPECT_EQ(c.region, Region::E);
  ASSERT_TRUE(c.bound_witness && c.cobound_witness);
  EXPECT_TRUE(implies(left("3|x", R), PpFormula::annihilation(R, Side::Left, *c.bound_witness)));
  EXPECT_TRUE(implies(PpFormula::divisibility(R, Side::Left, *c.cobound_witness), left("3|x", R)));
}

TEST(Classify, Z4Table) {
  const Ring R = Zn(4);
  EXPECT_EQ(classify(left("2|x", R)).region, Region::E);
  EXPECT_EQ(classify(left("2x = 0", R)).region, Region::E);
  EXPECT_EQ(classify(left("0|x", R)).region, Region::S);
  EXPECT_EQ(classify(left("1|x", R)).region, Region::N);
  EXPECT_EQ(classify(left("3|x", R)).region, Region::N);
  EXPECT_TRUE(equiv(left("3|x", R), left("x = x", R)));
}

TEST(Classify, DichotomiesOnSmallFormulas) {
  for (const auto& [name, R] : default_corpus(5))
    for (const PpFormula& f : unary_formulas(R, Side::Left, 5)) {
      const Classification c = classify(f);
      EXPECT_NE(c.high, c.bounded) << name << ": " << print(f);
      EXPECT_NE(c.low, c.cobounded) << name << ": " << print(f);
      EXPECT_NE(c.region, Region::WStar) << name << ": " << print(f);
    }
}

TEST(Classify, DualitySwapsVerdicts) {
  for (const auto& [name, R] : default_corpus(5)) {
    Rng rng(53);
    for (int i = 0; i < 40; ++i) {
      const PpFormula f = random_formula(R, Side::Left, rng);
      const Classification c = classify(f), d = classify(dual(f));
      EXPECT_EQ(c.high, d.low) << name << ": " << print(f);
      EXPECT_EQ(c.bounded, d.cobounded) << name << ": " << print(f);
    }
  }
}

TEST(RdTable, NoEastRegionOverZ) {
  for (const RdEntry& e : rd_table(Z(), 5)) {
    EXPECT_NE(e.classification.region, Region::E) << print(e.formula);
    EXPECT_TRUE(e.agrees()) << print(e.formula);
  }
}

TEST(RdTable, EastRegionOverZ4AndZ6) {
  for (long n : {4L, 6L}) {
    bool found = false;
    for (const RdEntry& e : rd_table(Zn(n))) {
      found = found || e.classification.region == Region::E;
      EXPECT_TRUE(e.agrees()) << "Z/" << n << ": " << print(e.formula);
    }
    EXPECT_TRUE(found) << "Z/" << n;
  }
}

TEST(RdTable, NoncommutativeCriteriaAgree) {
  for (Side side : {Side::Left, Side::Right})
    for (const RdEntry& e : rd_table(ut2_f2(), 5, side)) EXPECT_TRUE(e.agrees()) << to_string(side) << " " << print(e.formula);
}

TEST(Essential, Examples) {
  EXPECT_TRUE(is_essential(left("x = x", Zn(4))));
  EXPECT_TRUE(is_essential(left("2x = 0", Zn(4))));
  EXPECT_FALSE(is_essential(left("3x = 0", Zn(6))));
  EXPECT_EQ(names(Zn(6), value_in_ring(left("3x = 0", Zn(6)))), (std::set<std::string>{"0", "2", "4"}));
  EXPECT_THROW((void)is_essential(left("2|x", Z())), Error);
}

TEST(Essential, ImpliesHighAndCobounded) {
  for (const auto& [name, R] : finite_corpus(7))
    for (const PpFormula& f : unary_formulas(R, Side::Left, 5))
      if (is_essential(f)) {
        EXPECT_TRUE(classify(f).cobounded) << name << ": " << print(f);
      }
}

TEST(PhiMembership, TopIsMember) {
  const PhiMembership p = phi_membership(left("x = x", Zn(4)));
  EXPECT_TRUE(p.member);
  EXPECT_EQ(p.annihilator, std::vector<Int>{Int(0)});
}

TEST(PhiMembership, EverySmallFormulaOverZ4) {
  for (const PpFormula& f : unary_formulas(Zn(4), Side::Left, 4)) EXPECT_TRUE(phi_membership(f).member) << print(f);
}

TEST(PhiMembership, FailsSomewhereOverUpperTriangularRing) {
  bool failure = false;
  for (const PpFormula& f : unary_formulas(ut2_f2(), Side::Left, 3)) failure = failure || !phi_membership(f).member;
  EXPECT_TRUE(failure);
}

TEST(Regions, Z4Chain) {
  const Ring R = Zn(4);
  const RegionsReport rep = formula_regions(R, Side::Left, 6, {regular_module(R, Side::Left), Module::abelian(R, 0, {Int(2), Int(4)})});
  ASSERT_EQ(rep.classes.size(), 4u);
  EXPECT_TRUE(rep.is_chain);
  EXPECT_EQ(print(rep.classes[0].representative), "x = 0");
  EXPECT_EQ(print(rep.classes[1].representative), "2|x");
  EXPECT_EQ(print(rep.classes[2].representative), "2 x = 0");
  EXPECT_EQ(print(rep.classes[3].representative), "x = x");
  ASSERT_EQ(rep.covers.size(), 3u);
  for (const SeparatorRow& s : rep.separators) EXPECT_TRUE(s.module.has_value());
  // 2|x < 2x = 0 is only visible in the larger module
  EXPECT_EQ(rep.separators[1].module, std::optional<std::string>("Z/2 + Z/4"));
}

TEST(Regions, DomainHasNoMiddleClasses) {
  const RegionsReport rep = formula_regions(Zn(5), Side::Left, 6);
  EXPECT_EQ(rep.classes.size(), 2u);
}
