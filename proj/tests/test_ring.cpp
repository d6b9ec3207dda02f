#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace ppcalc;
using namespace testing_helpers;

namespace {

std::set<std::string> row_names(const Ring& R, const VectorSet& s) {
  std::set<std::string> out;
  for (const auto& v : s.elements) {
    std::string t;
    for (std::size_t i = 0; i < v.size(); ++i) t += (i ? "," : "") + R.element_name(v[i]);
    out.insert(t);
  }
  return out;
}

IntMatrix column(std::initializer_list<long> entries) {
  IntMatrix m(entries.size(), 1);
  std::size_t i = 0;
  for (long e : entries) m(i++, 0) = e;
  return m;
}

}  // namespace

TEST(Integers, FloorDivisionRoundsDown) {
  EXPECT_EQ(floor_div(Int(-7), Int(2)), -4);
  EXPECT_EQ(floor_mod(Int(-7), Int(2)), 1);
  EXPECT_EQ(floor_mod(Int(7), Int(-2)), -1);
  const ExtGcd g = ext_gcd(Int(12), Int(18));
  EXPECT_EQ(g.g, 6);
  EXPECT_EQ(g.s * 12 + g.t * 18, 6);
}

TEST(Ring, ModularArithmetic) {
  const Ring R = Zn(6);
  EXPECT_EQ(R.order(), 6u);
  EXPECT_EQ(R.add(Int(4), Int(5)), 3);
  EXPECT_EQ(R.mul(Int(4), Int(5)), 2);
  EXPECT_EQ(R.neg(Int(1)), 5);
  EXPECT_EQ(R.normalize(Int(-1)), 5);
  EXPECT_EQ(R.parse_element("-1"), Int(5));
  EXPECT_FALSE(R.parse_element("y").has_value());
}

TEST(Ring, OppositeSideReversesProducts) {
  const Ring R = ut2_f2();
  const Int a = *R.parse_element("m1100"), b = *R.parse_element("m0001");
  EXPECT_NE(R.mul(a, b), R.mul(b, a));
  EXPECT_EQ(R.mul(Side::Right, a, b), R.mul(b, a));
}

TEST(Ring, ModulusOneIsRejected) { EXPECT_THROW(Zn(1), Error); }

TEST(Annihilators, LeftAnnihilatorExamples) {
  const VectorSet z = left_annihilator(Z(), column({2}));
  EXPECT_TRUE(z.is_lattice);
  EXPECT_EQ(z.basis.rows(), 0u);
  EXPECT_EQ(row_names(Zn(6), left_annihilator(Zn(6), column({3}))), (std::set<std::string>{"0", "2", "4"}));
  EXPECT_EQ(row_names(Zn(5), left_annihilator(Zn(5), column({0}))).size(), 5u);
}

TEST(Annihilators, RightAnnihilatorExamples) {
  EXPECT_EQ(row_names(Zn(4), right_annihilator(Zn(4), IntMatrix(1, 1, Int(2)))), (std::set<std::string>{"0", "2"}));
  EXPECT_EQ(right_annihilator(Z(), IntMatrix(1, 1, Int(5))).basis.rows(), 0u);
  IntMatrix two_rows(2, 1);
  two_rows(0, 0) = 2;
  two_rows(1, 0) = 3;
  EXPECT_EQ(row_names(Zn(6), right_annihilator(Zn(6), two_rows)), (std::set<std::string>{"0"}));
}

TEST(Annihilators, AgreeWithExhaustiveScan) {
  for (const Ring& R : {Zn(8), Zn(12), ut2_f2()}) {
    for (const Int& a : R.elements())
      for (const Int& b : R.elements()) {
        IntMatrix A(1, 2);
        A(0, 0) = a;
        A(0, 1) = b;
        std::set<std::string> expected;
        for (const Int& t : R.elements())
          if (R.mul(t, a) == 0 && R.mul(t, b) == 0) expected.insert(R.element_name(t));
        EXPECT_EQ(row_names(R, left_annihilator(R, A)), expected) << R.name();
      }
  }
}

TEST(RegularSets, UnitsOfSmallRings) {
  EXPECT_EQ(names(Zn(4), regular_sets(Zn(4)).left), (std::set<std::string>{"1", "3"}));
  EXPECT_EQ(names(Zn(4), regular_sets(Zn(4)).right), (std::set<std::string>{"1", "3"}));
  EXPECT_EQ(names(Zn(6), regular_sets(Zn(6)).left), (std::set<std::string>{"1", "5"}));
  EXPECT_TRUE(regular_sets(Z()).all_nonzero);
}

TEST(RegularSets, OneSidedInUpperTriangularRing) {
  // left regular elements have zero left annihilator
  const Ring R = ut2_f2();
  const RegularSets s = regular_sets(R);
  for (const Int& r : s.left) {
    bool kills = false;
    for (const Int& t : R.elements())
      if (t != 0 && R.mul(t, r) == 0) kills = true;
    EXPECT_FALSE(kills) << R.element_name(r);
  }
}

TEST(TableRing, RejectsBrokenAssociativity) {
  try {
    (void)ring_from_json(nonassociative_ring_json());
    FAIL() << "accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Malformed);
    EXPECT_NE(std::string(e.what()).find("associativity"), std::string::npos);
  }
}

TEST(TableRing, RejectsMissingIdentity) {
  Json j = ring_to_json(Zn(4));
  j["one"] = "2";
  EXPECT_THROW((void)ring_from_json(j), Error);
}

TEST(TableRing, RoundTripsThroughJson) {
  for (const auto& name : table_ring_names()) {
    const Ring R = table_ring(name);
    const Ring S = ring_from_json(ring_to_json(R));
    for (const Int& a : R.elements())
      for (const Int& b : R.elements()) {
        EXPECT_EQ(R.element_name(R.mul(a, b)), S.element_name(S.mul(*S.parse_element(R.element_name(a)), *S.parse_element(R.element_name(b)))));
      }
  }
}

TEST(TableRing, CapIsEnforced) { EXPECT_THROW((void)ring_from_json(ring_to_json(Zn(12)), 8), Error); }

TEST(Lattice, HermiteFormIsCanonical) {
  IntMatrix g(3, 3);
  const long v[] = {4, 6, 2, 2, 0, 8, 6, 6, 10};
  for (std::size_t i = 0; i < 9; ++i) g(i / 3, i % 3) = v[i];
  const ZLattice L = ZLattice::span(g);
  IntMatrix shuffled(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    shuffled(0, j) = g(2, j) + g(0, j);
    shuffled(1, j) = g(1, j);
    shuffled(2, j) = g(0, j) * 3 + g(1, j);
  }
  EXPECT_TRUE(ZLattice::span(shuffled) == L);
  for (std::size_t i = 0; i < L.rank(); ++i) EXPECT_GT(L.basis()(i, L.pivots()[i]), 0);
}

TEST(Lattice, KernelAndPreimage) {
  IntMatrix g(2, 1);
  g(0, 0) = 4;
  g(1, 0) = 6;
  const IntMatrix k = left_kernel(g);
  ASSERT_EQ(k.rows(), 1u);
  EXPECT_EQ(k(0, 0) * 4 + k(0, 1) * 6, 0);
  const auto sol = solve_left(g, IntVector{Int(2)});
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ((*sol)[0] * 4 + (*sol)[1] * 6, 2);
  EXPECT_FALSE(solve_left(g, IntVector{Int(1)}).has_value());
}

TEST(Lattice, EntriesStayBoundedOnLargeSystems) {
  // a 40 x 40 system with small entries must reduce without runaway growth
  Rng rng(3);
  IntMatrix g(40, 40);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j) g(i, j) = static_cast<long>(rng() % 11) - 5;
  const ZLattice L = ZLattice::span(g);
  EXPECT_EQ(L.rank(), 40u);
  EXPECT_GT(L.index(), 0);
}

TEST(Lattice, SmithFormOfAbelianRelations) {
  IntMatrix g(2, 2);
  g(0, 0) = 2;
  g(0, 1) = 4;
  g(1, 0) = 6;
  g(1, 1) = 8;
  const SmithForm s = smith_form(g);
  std::vector<Int> d;
  for (const Int& x : s.invariants)
    if (abs_int(x) != 1) d.push_back(abs_int(x));
  EXPECT_EQ(d, (std::vector<Int>{Int(2), Int(4)}));
  EXPECT_EQ(s.free_rank, 0u);
}
