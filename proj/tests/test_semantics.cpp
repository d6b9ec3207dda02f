#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace ppcalc;
using namespace testing_helpers;

namespace {

Module z2_plus_z4() { return Module::abelian(Zn(4), 0, {Int(2), Int(4)}); }

}  // namespace

TEST(Evaluate, PinnedValuesOverZ4) {
  const Ring R = Zn(4);
  const Module& M = regular_module(R, Side::Left);
  EXPECT_EQ(names(evaluate(left("2|x", R), M)), (std::set<std::string>{"0", "2"}));
  EXPECT_EQ(names(evaluate(left("2x = 0", z2_plus_z4().ring()), z2_plus_z4())),
            (std::set<std::string>{"(0,0)", "(1,0)", "(0,2)", "(1,2)"}));
  EXPECT_TRUE(evaluate(PpFormula::top(R, Side::Left), z2_plus_z4()).is_whole());
  EXPECT_TRUE(evaluate(PpFormula::bottom(R, Side::Left), z2_plus_z4()).is_zero());
}

TEST(Evaluate, InfiniteModulesOverZ) {
  const Module M = Module::abelian(Z(), 1, {Int(6)});
  const Subgroup v = evaluate(left("4|x", Z()), M);
  // 4(Z/6 + Z) = 2Z/6 + 4Z
  EXPECT_TRUE(v.contains(IntVector{Int(2), Int(0)}));
  EXPECT_TRUE(v.contains(IntVector{Int(0), Int(4)}));
  EXPECT_FALSE(v.contains(IntVector{Int(0), Int(2)}));
  EXPECT_FALSE(v.contains(IntVector{Int(1), Int(0)}));
}

TEST(Evaluate, AgreesWithBruteForce) {
  for (const auto& [name, R] : finite_corpus(9)) {
    Rng rng(29);
    const auto mods = corpus_modules(R, 16);
    for (int i = 0; i < 15; ++i) {
      const PpFormula f = random_formula(R, Side::Left, rng, 1 + i % 2);
      for (const Module& M : mods) {
        if (f.witnesses() + f.arity() > 3 && M.order() > 8) continue;
        EXPECT_TRUE(matches_oracle(f, M)) << name << ", " << M.label() << ": " << print(f);
      }
    }
  }
}

TEST(Evaluate, SideMismatchIsRejected) {
  const Ring R = Zn(4);
  EXPECT_THROW((void)evaluate(parse("2|x", R, Side::Right), z2_plus_z4()), Error);
  EXPECT_THROW((void)evaluate(left("2|x", Zn(8)), z2_plus_z4()), Error);
}

TEST(Evaluate, ConnectivesBecomeSetOperations) {
  const Ring R = Zn(12);
  const Module M = Module::abelian(R, 0, {Int(4), Int(6)});
  const PpFormula f = left("2|x", R), g = left("3x = 0", R);
  EXPECT_EQ(evaluate(meet(f, g), M), intersect(evaluate(f, M), evaluate(g, M)));
  EXPECT_EQ(evaluate(join(f, g), M), evaluate(f, M) + evaluate(g, M));
  EXPECT_EQ(evaluate(multiple(Int(3), f), M), evaluate(f, M).scaled(Int(3)));
  EXPECT_EQ(evaluate(inverse(Int(3), f), M), evaluate(f, M).preimage_under(Int(3)));
}

TEST(FreeRealization, Examples) {
  const FreeRealization zero = free_realization(PpFormula::bottom(Z(), Side::Left));
  EXPECT_TRUE(zero.module.is_zero());
  const FreeRealization div = free_realization(left("2|x", Z()));
  EXPECT_EQ(abelian_invariants(div.module).free_rank, 1u);
  EXPECT_TRUE(abelian_invariants(div.module).torsion.empty());
  EXPECT_TRUE(satisfies(left("2|x", Z()), div.module, div.tuple));
  EXPECT_FALSE(satisfies(left("4|x", Z()), div.module, div.tuple));
  const FreeRealization ann = free_realization(left("2x = 0", Z()));
  EXPECT_EQ(abelian_invariants(ann.module).free_rank, 0u);
  EXPECT_EQ(abelian_invariants(ann.module).torsion, std::vector<Int>{Int(2)});
}

TEST(Defects, FlatDefectOfSmallModule) {
  const Ring R = Zn(4);
  const Module M = Module::abelian(R, 0, {Int(2)});
  const DefectPair d = flat_defect(left("2x = 0", R), M);
  EXPECT_TRUE(d.value.is_whole());
  EXPECT_TRUE(d.reference.is_zero());
  EXPECT_TRUE(d.has_defect());
}

TEST(Defects, AbsolutelyPureDefectOfSmallModule) {
  const Ring R = Zn(4);
  const Module M = Module::abelian(R, 0, {Int(2)});
  const DefectPair d = abspure_defect(left("2|x", R), M);
  EXPECT_TRUE(d.value.is_zero());
  EXPECT_TRUE(d.reference.is_whole());
  EXPECT_TRUE(d.has_defect());
}

TEST(Defects, RegularModuleHasNone) {
  for (const auto& [name, R] : finite_corpus(4)) {
    for (const PpFormula& f : unary_formulas(R, Side::Left, 4)) {
      const Module& M = regular_module(R, Side::Left);
      EXPECT_FALSE(flat_defect(f, M).has_defect()) << name << ": " << print(f);
      EXPECT_FALSE(abspure_defect(f, M).has_defect()) << name << ": " << print(f);
    }
  }
}

TEST(Divisible, Examples) {
  const Ring R = Zn(4);
  EXPECT_TRUE(is_divisible(regular_module(R, Side::Left)).divisible);
  const DivisibilityReport small = is_divisible(Module::abelian(R, 0, {Int(2)}));
  EXPECT_FALSE(small.divisible);
  ASSERT_TRUE(small.r && small.a);
  EXPECT_EQ(*small.r, 2);
  EXPECT_EQ(Module::abelian(R, 0, {Int(2)}).element_name(*small.a), "1");
  EXPECT_TRUE(is_divisible(Module::zero(R, Side::Left)).divisible);
  EXPECT_FALSE(is_divisible(Module::abelian(Z(), 1, {})).divisible);
}

TEST(Purity, Examples) {
  const Ring R = Zn(4);
  const Module& M = regular_module(R, Side::Left);
  EXPECT_TRUE(is_pure_submodule(Subgroup::whole(M), 6).pure);
  const PurityReport twice = is_pure_submodule(Subgroup::whole(M).scaled(Int(2)), 6);
  EXPECT_FALSE(twice.pure);
  ASSERT_TRUE(twice.counterexample.has_value());
  // the counterexample really separates N from N cap f(M)
  const Subgroup N = Subgroup::whole(M).scaled(Int(2));
  const Submodule sub = as_module(N);
  EXPECT_NE(sub.embed(evaluate(*twice.counterexample, sub.module)), intersect(N, evaluate(*twice.counterexample, M)));
  const Module S = z2_plus_z4();
  const Subgroup summand = Subgroup::generated(S, 1, {IntVector{Int(1), Int(0)}});
  EXPECT_TRUE(is_pure_submodule(summand, 6).pure);
}

TEST(Purity, DivisibilityWitnessOverZ4) {
  // 2|x separates 2(Z/4) from Z/4
  const Ring R = Zn(4);
  const Module& M = regular_module(R, Side::Left);
  const Subgroup N = Subgroup::whole(M).scaled(Int(2));
  const Submodule sub = as_module(N);
  const PpFormula f = left("2|x", R);
  EXPECT_TRUE(sub.embed(evaluate(f, sub.module)).is_zero());
  EXPECT_EQ(names(intersect(N, evaluate(f, M))), (std::set<std::string>{"0", "2"}));
}

TEST(Submodule, NonClosedSubgroupIsRejected) {
  const Ring R = ut2_f2();
  const Module& M = regular_module(R, Side::Left);
  // R is noncommutative, so some additive span {0, a} is not a left ideal
  bool rejected = false;
  for (const Int& a : R.elements()) {
    const Subgroup s = Subgroup::generated(M, 1, {R.coords(a)});
    bool closed = true;
    for (const Int& r : R.elements())
      if (!s.contains(M.act_on(r, R.coords(a)))) closed = false;
    if (closed) continue;
    EXPECT_THROW((void)as_module(s), Error) << R.element_name(a);
    rejected = true;
  }
  EXPECT_TRUE(rejected);
}

TEST(Monotonicity, ProjectionsPreserveSolutions) {
  // the projection Z/2 + Z/4 -> Z/4 onto the second summand
  const Ring R = Zn(4);
  const Module S = z2_plus_z4();
  const Module& T = regular_module(R, Side::Left);
  for (const PpFormula& f : unary_formulas(R, Side::Left, 6)) {
    const Subgroup img = evaluate(f, T);
    for (const auto& e : evaluate(f, S).elements()) EXPECT_TRUE(img.contains(T.reduce(IntVector{e[1]}))) << print(f);
  }
}
