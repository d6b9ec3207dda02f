#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace ppcalc;
using namespace testing_helpers;

TEST(Corpus, BundledFilesLoad) {
  const Ring ut2 = resolve_ring("ut2_f2");
  EXPECT_EQ(ut2.order(), 8u);
  EXPECT_FALSE(ut2.is_commutative());
  const Ring builtin = ut2_f2();
  for (const Int& a : builtin.elements())
    for (const Int& b : builtin.elements())
      EXPECT_EQ(builtin.element_name(builtin.mul(a, b)),
                ut2.element_name(ut2.mul(*ut2.parse_element(builtin.element_name(a)), *ut2.parse_element(builtin.element_name(b)))));
  EXPECT_THROW((void)resolve_ring("broken_assoc"), Error);
  EXPECT_THROW((void)resolve_ring("no_such_ring"), Error);
}

TEST(Corpus, SeparatorModuleFile) {
  const Ring R = Zn(4);
  const Module M = module_from_json(read_json_file(resolve_corpus_file("z2_plus_z4.json", "modules").string()), R);
  EXPECT_EQ(M.order(), 8);
  EXPECT_EQ(abelian_invariants(M).torsion, (std::vector<Int>{Int(2), Int(4)}));
}

TEST(Corpus, ForestFiles) {
  EXPECT_EQ(ulm_sequence(load_forest_file(resolve_corpus_file("h_omega_plus_1.forest", "forests").string())).length, 2u);
  EXPECT_EQ(ulm_sequence(load_forest_file(resolve_corpus_file("prufer.forest", "forests").string())).length, 0u);
  EXPECT_EQ(ulm_sequence(load_forest_file(resolve_corpus_file("cyclic.forest", "forests").string())).length, 1u);
  const HeightForest F = load_forest_file(resolve_corpus_file("two_trees.forest", "forests").string());
  EXPECT_EQ(F.size(), 4u);
  EXPECT_EQ(heights(F)[static_cast<std::size_t>(*F.find("b"))], Ordinal::finite(6));
}

TEST(Corpus, DefaultCorpusIsDeterministic) {
  const auto a = default_corpus(99), b = default_corpus(99);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(a.size(), 11u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(ring_to_json(a[i].ring), ring_to_json(b[i].ring));
  }
}

TEST(Shorthand, Modules) {
  EXPECT_EQ(module_from_shorthand("Z/2 + Z/4", Zn(4)).order(), 8);
  EXPECT_TRUE(module_from_shorthand("0", Zn(4)).is_zero());
  EXPECT_EQ(module_from_shorthand("R", ut2_f2()).order(), 8);
  EXPECT_FALSE(module_from_shorthand("Z + Z/3", Z()).is_finite());
  EXPECT_THROW((void)module_from_shorthand("Z/3", Zn(4)), Error);
  EXPECT_THROW((void)module_from_shorthand("Z", Zn(4)), Error);
  EXPECT_THROW((void)module_from_shorthand("Q", Z()), Error);
}

TEST(ModuleJson, ExplicitTables) {
  // Z/2 as a Z/4-module, written out by hand
  const Json j = Json::parse(R"({
    "side": "left",
    "explicit": {
      "elements": ["0", "a"],
      "add": [["0", "a"], ["a", "0"]],
      "act": [["0", "0"], ["0", "a"], ["0", "0"], ["0", "a"]]
    }
  })");
  const Module M = module_from_json(j, Zn(4));
  EXPECT_EQ(M.order(), 2);
  EXPECT_EQ(names(evaluate(left("2x = 0", Zn(4)), M)), (std::set<std::string>{"0", "a"}));
  EXPECT_TRUE(evaluate(left("2|x", Zn(4)), M).is_zero());
}

TEST(ModuleJson, RejectsNonModuleTables) {
  // 2 acting as the identity is not a Z/4 action on Z/2
  const Json j = Json::parse(R"({
    "explicit": {
      "elements": ["0", "a"],
      "add": [["0", "a"], ["a", "0"]],
      "act": [["0", "0"], ["0", "a"], ["0", "a"], ["0", "a"]]
    }
  })");
  EXPECT_THROW((void)module_from_json(j, Zn(4)), Error);
}

TEST(ForestJson, NestedAndFlatFormsAgree) {
  const HeightForest nested = forest_from_json(Json::parse(R"({"p": 2, "roots": [
    {"name": "r", "children": [{"name": "s", "rep_chains": "all"}, {"name": "t", "divisible": true}]}]})"));
  const HeightForest flat = forest_from_json(Json::parse(R"({"p": 2, "nodes": [
    {"name": "r"}, {"name": "s", "parent": "r", "rep_chains": "all"}, {"name": "t", "parent": "r", "divisible": true}]})"));
  EXPECT_EQ(heights(nested), heights(flat));
  EXPECT_TRUE(heights(flat)[0].is_infinite());
}

TEST(ForestJson, RejectsMalformedInput) {
  EXPECT_THROW((void)forest_from_json(Json::parse(R"({"roots": []})")), Error);
  EXPECT_THROW((void)forest_from_json(Json::parse(R"({"p": 2, "roots": [{"name": "a"}, {"name": "a"}]})")), Error);
  EXPECT_THROW((void)forest_from_json(Json::parse(R"({"p": 2, "nodes": [{"name": "a", "parent": "b"}, {"name": "b", "parent": "a"}]})")),
               Error);
  EXPECT_THROW((void)forest_from_json(Json::parse(R"({"p": 2, "roots": [{"name": "a", "rep_chains": [0]}]})")), Error);
  EXPECT_THROW((void)forest_from_json(Json::parse(R"({"p": 6, "roots": []})")), Error);
}

TEST(Io, SideNames) {
  EXPECT_EQ(parse_side("left"), Side::Left);
  EXPECT_EQ(parse_side("right"), Side::Right);
  EXPECT_THROW((void)parse_side("up"), Error);
}
