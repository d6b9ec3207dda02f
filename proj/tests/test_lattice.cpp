#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace ppcalc;
using namespace testing_helpers;

TEST(Implies, Z4Chain) {
  const Ring R = Zn(4);
  const std::vector<PpFormula> chain{left("x = 0", R), left("2|x", R), left("2x = 0", R), left("x = x", R)};
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = 0; j < chain.size(); ++j) EXPECT_EQ(implies(chain[i], chain[j]), i <= j) << i << " " << j;
}

TEST(Implies, DivisibilityOverZ) {
  EXPECT_TRUE(implies(left("6|x", Z()), left("2|x", Z())));
  EXPECT_FALSE(implies(left("2|x", Z()), left("6|x", Z())));
  EXPECT_TRUE(equiv(left("-2|x", Z()), left("2|x", Z())));
  EXPECT_TRUE(implies(left("2x = 0", Z()), left("4x = 0", Z())));
  EXPECT_FALSE(implies(left("2|x", Z()), left("2x = 0", Z())));
}

TEST(Implies, IsSoundOnCorpusModules) {
  for (const auto& [name, R] : finite_corpus(6)) {
    Rng rng(31);
    const auto mods = corpus_modules(R, 16);
    for (int i = 0; i < 30; ++i) {
      const PpFormula f = random_formula(R, Side::Left, rng), g = random_formula(R, Side::Left, rng);
      if (!implies(f, g)) continue;
      for (const Module& M : mods) EXPECT_TRUE(evaluate(f, M).subset_of(evaluate(g, M))) << name << " " << M.label();
    }
  }
}

TEST(Presta, AnnihilationDoesNotImplyDivisibility) {
  const Ring R = Zn(4);
  const PpFormula f = left("2x = 0", R), g = left("2|x", R);
  const PrestaResult p = presta_solve(f, g);
  EXPECT_FALSE(p.solvable);
  EXPECT_EQ(p.solvable, implies(f, g));
  EXPECT_FALSE(presta_solve(f, g, PrestaStrategy::Lattice).solvable);
}

TEST(Presta, ReflexiveCaseIsSolvable) {
  for (const auto& [name, R] : default_corpus(8)) {
    Rng rng(37);
    for (int i = 0; i < 10; ++i) {
      const PpFormula f = random_formula(R, Side::Left, rng);
      const PrestaResult p = presta_solve(f, f);
      ASSERT_TRUE(p.solvable) << name;
      EXPECT_TRUE(verify_presta(f, f, p)) << name;
    }
  }
}

TEST(Presta, StrategiesAgree) {
  for (const auto& [name, R] : finite_corpus(12)) {
    Rng rng(43);
    for (int i = 0; i < 40; ++i) {
      const PpFormula f = random_formula(R, Side::Left, rng), g = random_formula(R, Side::Left, rng);
      const PrestaResult lat = presta_solve(f, g, PrestaStrategy::Lattice);
      EXPECT_EQ(lat.solvable, implies(f, g)) << name << ": " << print(f) << " <= " << print(g);
      if (lat.solvable) EXPECT_TRUE(verify_presta(f, g, lat)) << name;
    }
  }
}

TEST(Presta, RightSideUsesOppositeProducts) {
  const Ring R = ut2_f2();
  Rng rng(47);
  for (int i = 0; i < 60; ++i) {
    const PpFormula f = random_formula(R, Side::Right, rng), g = random_formula(R, Side::Right, rng);
    const PrestaResult p = presta_solve(f, g);
    EXPECT_EQ(p.solvable, implies(f, g));
    if (p.solvable) EXPECT_TRUE(verify_presta(f, g, p));
  }
}

TEST(KernelBound, Examples) {
  const KernelBound a = bounded_by_kernel(left("2x = 0", Z()));
  EXPECT_TRUE(a.bounded);
  EXPECT_EQ(abs_int(a.r), 2);
  EXPECT_FALSE(bounded_by_kernel(left("2|x", Z())).bounded);
  const Ring R = Zn(6);
  const KernelBound b = bounded_by_kernel(left("3|x", R));
  ASSERT_TRUE(b.bounded);
  EXPECT_TRUE(implies(left("3|x", R), PpFormula::annihilation(R, Side::Left, b.r)));
  EXPECT_TRUE(b.r == 2 || b.r == 4);
}

TEST(KernelBound, AgreesWithClassifierOnSmallFormulas) {
  for (long n : {4L, 6L, 8L})
    for (const PpFormula& f : unary_formulas(Zn(n), Side::Left, 4))
      EXPECT_EQ(bounded_by_kernel(f).bounded, classify(f).bounded) << "Z/" << n << ": " << print(f);
}
