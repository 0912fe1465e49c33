#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qcb/verify.hpp"

using namespace qcb;
using namespace qcb::testing;

namespace {

std::vector<SuiteResult> run_all(const QuiverInput& in, int h, const std::vector<std::size_t>& order) {
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = h});
  return run_suites(mod, suite_names(), order);
}

}  // namespace

TEST(Suites, AllPassOnA2) {
  for (const auto& r : run_all(a2(1, 1), 4, {0, 1})) {
    EXPECT_TRUE(r.passed()) << r.name << ": " << (r.counterexamples.empty() ? "" : r.counterexamples[0]);
    EXPECT_GT(r.checks, 0u) << r.name;
  }
}

TEST(Suites, AllPassOnKronecker) {
  for (const auto& r : run_all(kronecker(1, 1), 4, {1, 0}))
    EXPECT_TRUE(r.passed()) << r.name << ": " << (r.counterexamples.empty() ? "" : r.counterexamples[0]);
}

TEST(Suites, ContravarianceUsesAtLeastHundredPairs) {
  auto in = a2(1, 0);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 3});
  auto r = suite_contravariance(mod);
  EXPECT_GE(r.checks, 100u);
  EXPECT_TRUE(r.passed());
}

TEST(Suites, SignErrorInEIsCaught) {
  auto in = a2(2, 1);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 4});
  EAction broken = [&mod](std::size_t i, const ModuleVector& u) {
    const ModuleVector e = mod.E(i, u);
    return height(u.content()) >= 2 ? e.scaled(LaurentPoly(-1)) : e;
  };
  auto r = suite_derivation(mod, broken);
  EXPECT_FALSE(r.passed());
  ASSERT_FALSE(r.counterexamples.empty());
  EXPECT_NE(r.counterexamples[0].find("x = "), std::string::npos);
  EXPECT_TRUE(suite_derivation(mod).passed());
}

TEST(Suites, EmptySelectionPasses) {
  auto in = a1(2);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 2});
  EXPECT_TRUE(run_suites(mod, {}, {0}).empty());
  EXPECT_THROW(run_suites(mod, {"nonsense"}, {0}), InputError);
}
