#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "qcb/report.hpp"

using namespace qcb;
using namespace qcb::testing;

TEST(LaurentJson, Format) {
  const LaurentPoly p = LaurentPoly::monomial(3, -5) + LaurentPoly::monomial(-1, 2);
  EXPECT_EQ(laurent_to_json(p).dump(), R"({"terms":[[-1,"2"],[3,"-5"]]})");
  EXPECT_EQ(laurent_to_json(LaurentPoly()).dump(), R"({"terms":[]})");
}

TEST(LaurentJson, RoundTrip) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const LaurentPoly p = random_poly(rng, 12, 1000000);
    EXPECT_EQ(laurent_from_json(nlohmann::json::parse(laurent_to_json(p).dump())), p);
  }
  const LaurentPoly big = LaurentPoly::monomial(-7, mpz_class("123456789012345678901234567890"));
  EXPECT_EQ(laurent_from_json(nlohmann::json::parse(laurent_to_json(big).dump())), big);
  EXPECT_THROW(laurent_from_json(nlohmann::json::parse(R"({"terms":[[1,2]]})")), InputError);
}

TEST(Report, WeightSpaceFields) {
  auto in = a2(1, 1);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 2});
  const auto j = weight_space_json(mod, {1, 1});
  EXPECT_EQ(j["spanning_count"], 2);
  EXPECT_EQ(j["rank"], 2);
  EXPECT_EQ(j["content"].dump(), R"({"1":1,"2":1})");
  EXPECT_EQ(j["basis"].size(), 2u);
  EXPECT_EQ(j["gram"].size(), 2u);
}

TEST(Report, CanonicalBasisDump) {
  auto in = a2(1, 0);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 2});
  auto cb = compute_canonical_basis(mod);
  const auto j = cb_element_json(in.quiver, cb.at({1, 1})[0]);
  EXPECT_EQ(j["vector"].dump(), R"([["2^1.1^1",{"terms":[[0,"1"]]}]])");
  EXPECT_EQ(j["provenance"].dump(), R"({"i":"2","t":1,"parent":0})");
  EXPECT_EQ(j["self_pairing"].dump(), R"({"terms":[[0,"1"]]})");
  EXPECT_TRUE(cb_element_json(in.quiver, cb.at({0, 0})[0])["provenance"].is_null());
}

TEST(Report, DotGolden) {
  auto in = a1(2);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 3});
  auto cb = compute_canonical_basis(mod);
  auto g = build_left_graph(cb);
  EXPECT_EQ(graph_dot(cb, g),
            "digraph left_graph {\n"
            "  \"0/0\";\n"
            "  \"1/0\";\n"
            "  \"2/0\";\n"
            "  \"1/0\" -> \"0/0\" [label=\"(1,1)\"];\n"
            "  \"2/0\" -> \"0/0\" [label=\"(1,2)\"];\n"
            "}\n");
}

TEST(Report, GraphMetadata) {
  auto in = a2(1, 0);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 3});
  auto cb = compute_canonical_basis(mod);
  auto g = build_left_graph(cb);
  const auto j = graph_json(cb, g, {0, 1});
  EXPECT_EQ(j["metadata"]["sgn"], "unknown");
  EXPECT_EQ(j["metadata"]["orientation"].dump(), R"([["1","2"]])");
  EXPECT_EQ(j["graph"]["arrows"].size(), 2u);
  EXPECT_EQ(j["graph"]["arrows"][1]["color"].dump(), R"(["2",1])");
}
