#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "qcb/canonical.hpp"
#include "qcb/freudenthal.hpp"

using namespace qcb;
using namespace qcb::testing;

namespace {

LaurentPoly v(int k) { return LaurentPoly::monomial(k); }

std::set<std::vector<std::string>> coordinate_set(const std::vector<CBElement>& elems) {
  std::set<std::vector<std::string>> out;
  for (const auto& e : elems) {
    std::vector<std::string> s;
    for (const auto& c : e.coords) s.push_back(c.to_string());
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST(CanonicalBasis, RankOneString) {
  auto in = a1(3);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 5});
  auto cb = compute_canonical_basis(mod);
  for (int k = 0; k <= 5; ++k) {
    const auto& elems = cb.at({k});
    if (k > 3) {
      EXPECT_TRUE(elems.empty());
      continue;
    }
    ASSERT_EQ(elems.size(), 1u);
    const auto fk = k == 0 ? mod.highest() : mod.monomial(FlagMonomial::single(0, k));
    EXPECT_TRUE(mod.equal(elems[0].vector, fk));
    EXPECT_EQ(elems[0].self_pairing, qbinom(3, k).shifted(-k * (3 - k)));
    EXPECT_TRUE(is_unit_mod_negative(elems[0].self_pairing));
    EXPECT_EQ(elems[0].stats, std::vector<int>{k});
  }
}

TEST(CanonicalBasis, FundamentalA2) {
  auto in = a2(1, 0);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 4});
  auto cb = compute_canonical_basis(mod);
  EXPECT_EQ(cb.total_count(), 3u);
  EXPECT_TRUE(mod.equal(cb.at({1, 0})[0].vector, mod.monomial(FlagMonomial::parse(in.quiver, "1^1"))));
  EXPECT_TRUE(mod.equal(cb.at({1, 1})[0].vector, mod.monomial(FlagMonomial::parse(in.quiver, "2^1.1^1"))));
  EXPECT_TRUE(cb.at({0, 1}).empty());
}

TEST(CanonicalBasis, PropertiesAcrossData) {
  for (const auto& [in, h] : std::vector<std::pair<QuiverInput, int>>{
           {a2(1, 1), 5}, {a2(2, 1), 5}, {kronecker(1, 0), 5}, {kronecker(1, 1), 4}, {a3(1, 0, 1), 4}}) {
    HighestWeightModule mod(in.quiver, in.lambda, {.max_height = h});
    auto cb = compute_canonical_basis(mod);
    FreudenthalTable table(in.quiver, in.lambda, h);
    for (const auto& [nu, elems] : cb.all()) {
      EXPECT_EQ(static_cast<int>(elems.size()), table.multiplicity(nu));
      for (const auto& a : elems) {
        EXPECT_TRUE(verify_bar_invariant(mod, a));
        for (const auto& b : elems) {
          const LaurentPoly p = mod.form(a.vector, b.vector);
          if (a.id == b.id)
            EXPECT_TRUE(is_unit_mod_negative(p)) << p.to_string();
          else
            EXPECT_TRUE(in_negative_part(p)) << p.to_string();
        }
      }
    }
  }
}

TEST(CanonicalBasis, IndependentOfSchedule) {
  for (const auto& in : {a2(2, 1), kronecker(1, 1), a3(1, 1, 0)}) {
    HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 4});
    auto forward = compute_canonical_basis(mod);
    std::vector<std::size_t> rev = identity_order(mod.vertex_count());
    std::reverse(rev.begin(), rev.end());
    auto backward = compute_canonical_basis(mod, rev);
    for (const auto& [nu, elems] : forward.all()) EXPECT_EQ(coordinate_set(elems), coordinate_set(backward.at(nu)));
  }
}

TEST(CanonicalBasis, BarInvariance) {
  auto in = a2(1, 0);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 2});
  const auto f1 = mod.monomial(FlagMonomial::parse(in.quiver, "1^1"));
  EXPECT_TRUE(verify_bar_invariant(mod, f1));
  EXPECT_FALSE(verify_bar_invariant(mod, f1.scaled(v(1))));
}

TEST(Transition, RankOneIsIdentity) {
  auto in = a1(2);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 2});
  auto cb = compute_canonical_basis(mod);
  auto m = transition_matrix(mod, cb.at({1}), {mod.monomial(FlagMonomial::single(0, 1))});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0][0], RatFunc(1));
}

TEST(Specialize, AtOne) {
  EXPECT_EQ(specialize_v1(qint(5)), 5);
  EXPECT_EQ(specialize_v1(qbinom(4, 2)), 6);
  EXPECT_THROW(specialize_v1(RatFunc(LaurentPoly(1), v(1) - LaurentPoly(1))), ArithmeticError);
}
