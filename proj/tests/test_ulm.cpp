#include "helpers.hpp"
#include "ppcalc/suites.hpp"

#include <gtest/gtest.h>

using namespace ppcalc;
using namespace testing_helpers;
using suites::detail::chain_forest;
using suites::detail::h_omega_plus_one;
using suites::detail::prufer_forest;

TEST(Ordinal, OrderAndText) {
  EXPECT_LT(Ordinal::finite(1000), Ordinal::omega());
  EXPECT_LT(Ordinal::omega(1, 5), Ordinal::omega(2));
  EXPECT_LT(Ordinal::omega(40, 1), Ordinal::infinity());
  EXPECT_EQ(Ordinal::omega().successor(), Ordinal::omega(1, 1));
  EXPECT_EQ(Ordinal::finite(3).next_limit(), Ordinal::omega());
  EXPECT_EQ(Ordinal::finite(4).str(), "4");
  EXPECT_EQ(Ordinal::omega().str(), "w");
  EXPECT_EQ(Ordinal::omega(2, 1).str(), "w*2+1");
  EXPECT_EQ(Ordinal::infinity().str(), "inf");
  EXPECT_THROW((void)Ordinal::omega(Ordinal::kOmegaCap - 1).next_limit(), Error);
}

TEST(Heights, CyclicChain) {
  for (int n = 1; n <= 5; ++n) {
    const auto h = heights(chain_forest(Int(3), n));
    EXPECT_EQ(h.front(), Ordinal::finite(n - 1));
    EXPECT_EQ(h.back(), Ordinal::finite(0));
  }
}

TEST(Heights, ReplicatedChainsAndDivisibleNodes) {
  EXPECT_EQ(heights(h_omega_plus_one(Int(2)))[0], Ordinal::omega());
  EXPECT_TRUE(heights(prufer_forest(Int(5)))[0].is_infinite());
  HeightForest F(Int(2));
  const int a = F.add_node("a");
  F.node(static_cast<std::size_t>(F.add_node("b", a))).rep_all = true;
  F.node(static_cast<std::size_t>(F.add_node("c", a))).rep_lengths = {3, 7};
  const auto h = heights(F);
  EXPECT_EQ(h[0], Ordinal::omega(1, 1));
  EXPECT_EQ(h[2], Ordinal::finite(7));
}

TEST(Heights, TruncationApproachesOmega) {
  for (long N : {3L, 5L, 8L}) EXPECT_GE(truncated_height(h_omega_plus_one(Int(2)), 0, N), N);
}

TEST(UlmSequence, Examples) {
  const UlmReport c = ulm_sequence(chain_forest(Int(2), 4));
  EXPECT_EQ(c.length, 1u);
  EXPECT_TRUE(c.levels[1].nodes.empty());
  const UlmReport h = ulm_sequence(h_omega_plus_one(Int(3)));
  EXPECT_EQ(h.length, 2u);
  EXPECT_EQ(h.levels[1].nodes, std::vector<std::string>{"a"});
  EXPECT_EQ(h.levels[1].cyclic_decomposition, std::vector<Int>{Int(3)});
  const UlmReport p = ulm_sequence(prufer_forest(Int(2)));
  EXPECT_EQ(p.length, 0u);
  EXPECT_EQ(h.semantics, "tree semantics");
}

TEST(UlmSequence, EmptyForestHasLengthZero) { EXPECT_EQ(ulm_sequence(HeightForest(Int(2))).length, 0u); }

TEST(UlmSequence, LevelsDecrease) {
  Rng rng(61);
  for (int i = 0; i < 50; ++i) {
    const HeightForest F = suites::detail::random_forest(rng);
    const UlmReport u = ulm_sequence(F);
    for (std::size_t t = 0; t + 1 < u.levels.size(); ++t) {
      const auto& a = u.levels[t].nodes;
      for (const auto& n : u.levels[t + 1].nodes) EXPECT_NE(std::find(a.begin(), a.end(), n), a.end());
    }
    long top = 0;
    for (const Ordinal& o : u.heights)
      if (!o.is_infinite()) top = std::max(top, o.omega_coefficient());
    EXPECT_LE(static_cast<long>(u.length), 1 + top);
  }
}

TEST(Forest, RejectsCyclesAndBadPrimes) {
  EXPECT_THROW((void)HeightForest::from_parents(Int(2), {"a", "b"}, {1, 0}), Error);
  EXPECT_THROW((void)HeightForest(Int(4)), Error);
  EXPECT_THROW((void)HeightForest(Int(1)), Error);
}

TEST(UlmDiv, Examples) {
  const Module M = Module::abelian(Z(), 0, {Int(2), Int(4)});
  EXPECT_TRUE(ulm_div(M).is_zero());
  for (const Module& N : corpus_modules(Zn(4), 16)) EXPECT_TRUE(ulm_div(N) == Subgroup::whole(N)) << N.label();
  EXPECT_TRUE(ulm_div(Module::zero(Zn(6), Side::Left)).is_zero());
}

TEST(UlmBounded, QuasiFrobeniusRings) {
  for (long n : {4L, 6L}) {
    const Ring R = Zn(n);
    const Module& M = regular_module(R, Side::Left);
    const UlmBounded u = ulm_bounded(M, 4);
    EXPECT_TRUE(u.value.is_whole()) << n;
    EXPECT_TRUE(u.stabilized) << n;
  }
  EXPECT_TRUE(ulm_bounded(Module::zero(Zn(4), Side::Left), 4).value.is_zero());
}

TEST(UlmBounded, FiniteGroupsOverZ) {
  const auto highs = high_formulas(Z(), Side::Left, 4);
  for (const auto& orders : abelian_group_types(32)) {
    const Module M = Module::abelian(Z(), 0, orders);
    const UlmBounded u = ulm_bounded(M, 4, highs);
    // the value is a submodule, so it can be bounded again
    const Submodule sub = as_module(u.value);
    EXPECT_EQ(sub.embed(ulm_bounded(sub.module, 4, highs).value), u.value) << M.label();
  }
}

TEST(UlmBounded, ContainedInUlmDivOverFiniteRings) {
  for (const auto& [name, R] : finite_corpus(3)) {
    const auto highs = high_formulas(R, Side::Left, 4);
    for (const Module& M : corpus_modules(R, 16))
      EXPECT_TRUE(ulm_bounded(M, 4, highs).value.subset_of(ulm_div(M))) << name << " " << M.label();
  }
}

TEST(GammaHigh, Examples) {
  const Ring R = Zn(6);
  EXPECT_TRUE(check_gamma_high(PpFormula::top(R, Side::Left), PpFormula::top(R, Side::Left)));
  EXPECT_TRUE(check_gamma_high(left("5|x", R), PpFormula::top(R, Side::Left)));
  EXPECT_THROW((void)check_gamma_high(left("2x = 0", R), PpFormula::top(R, Side::Left)), Error);
}
