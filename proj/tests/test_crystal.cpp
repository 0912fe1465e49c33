#include <gtest/gtest.h>

#include <map>
#include <set>

#include "fixtures.hpp"
#include "qcb/crystal.hpp"

using namespace qcb;
using namespace qcb::testing;

TEST(StringStatistic, Examples) {
  auto in = a1(4);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 4});
  EXPECT_EQ(t_stat(mod, mod.highest(), 0), 0);
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(t_stat(mod, mod.monomial(FlagMonomial::single(0, k)), 0), k);
  auto in2 = a2(1, 0);
  HighestWeightModule mod2(in2.quiver, in2.lambda, {.max_height = 2});
  const auto u = mod2.monomial(FlagMonomial::parse(in2.quiver, "2^1.1^1"));
  EXPECT_EQ(t_stat(mod2, u, 1), 1);
  EXPECT_EQ(t_stat(mod2, u, 0), 0);
}

TEST(PiArrow, Examples) {
  auto in = a1(3);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 4});
  auto cb = compute_canonical_basis(mod);
  const auto& top = cb.at({0})[0];
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(pi_arrow(cb, 0, k, top), std::optional<std::size_t>(0));
  EXPECT_FALSE(pi_arrow(cb, 0, 4, top).has_value());

  auto in2 = a2(1, 0);
  HighestWeightModule mod2(in2.quiver, in2.lambda, {.max_height = 3});
  auto cb2 = compute_canonical_basis(mod2);
  EXPECT_EQ(pi_arrow(cb2, 1, 1, cb2.at({1, 0})[0]), std::optional<std::size_t>(0));
  EXPECT_THROW(pi_arrow(cb2, 0, 1, cb2.at({1, 0})[0]), CrystalError);
}

TEST(LeftGraph, RankOneFan) {
  auto in = a1(2);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 3});
  auto cb = compute_canonical_basis(mod);
  auto g = build_left_graph(cb);
  EXPECT_EQ(g.nodes.size(), 3u);
  ASSERT_EQ(g.arrows.size(), 2u);
  EXPECT_EQ(g.arrows[0].source.content, DimVector{1});
  EXPECT_EQ(g.arrows[0].target.content, DimVector{0});
  EXPECT_EQ(g.arrows[0].r, 1);
  EXPECT_EQ(g.arrows[1].source.content, DimVector{2});
  EXPECT_EQ(g.arrows[1].target.content, DimVector{0});
  EXPECT_EQ(g.arrows[1].r, 2);
}

TEST(LeftGraph, FundamentalA2) {
  auto in = a2(1, 0);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 4});
  auto cb = compute_canonical_basis(mod);
  auto g = build_left_graph(cb);
  EXPECT_EQ(g.nodes.size(), 3u);
  ASSERT_EQ(g.arrows.size(), 2u);
  EXPECT_EQ(g.arrows[0].vertex, 0u);
  EXPECT_EQ(g.arrows[0].r, 1);
  EXPECT_EQ(g.arrows[1].vertex, 1u);
  EXPECT_EQ(g.arrows[1].r, 1);
}

TEST(Paths, SbarAndOrder) {
  auto in = a1(3);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 3});
  auto cb = compute_canonical_basis(mod);
  auto g = build_left_graph(cb);
  EXPECT_TRUE(sbar(cb, g, {{0}, 0}, {0}).empty());
  for (int k = 1; k <= 3; ++k) {
    auto p = sbar(cb, g, {{k}, 0}, {0});
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0].vertex, 0u);
    EXPECT_EQ(p[0].mult, k);
  }
  const std::vector<std::size_t> order{0, 1};
  AdmissiblePath a{{0, 1}, {1, 1}};
  AdmissiblePath b{{1, 1}, {0, 1}};
  EXPECT_TRUE(path_order_lt(a, b, order));
  EXPECT_FALSE(path_order_lt(b, a, order));
  EXPECT_FALSE(path_order_lt(a, a, order));
  EXPECT_TRUE(path_order_lt(b, a, {1, 0}));
  EXPECT_TRUE(path_order_lt({{0, 1}}, {{0, 2}}, order));
}

TEST(MonomialBasis, AdjointZeroWeightIsUnitriangular) {
  auto in = a2(1, 1);
  HighestWeightModule mod(in.quiver, in.lambda, {.max_height = 4});
  auto cb = compute_canonical_basis(mod);
  auto g = build_left_graph(cb);
  for (const auto& order : {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 0}}) {
    auto mb = monomial_basis_M(cb, g, {1, 1}, order);
    ASSERT_EQ(mb.paths.size(), 2u);
    EXPECT_NE(mb.paths[0], mb.paths[1]);
    EXPECT_TRUE(is_unitriangular(mb.transition));
    for (const auto& row : mb.transition)
      for (const auto& x : row) {
        EXPECT_TRUE(x.is_laurent());
        EXPECT_EQ(bar(x), x);
      }
  }
}

namespace {

// Number of (i, t) targets hit by pi equals the number of elements with t_i = t.
void expect_pi_bijective(const CanonicalBasis& cb, const PiTable& pi) {
  const std::size_t n = cb.module().vertex_count();
  std::map<std::tuple<std::size_t, int, DimVector>, std::set<std::size_t>> hit;
  for (const auto& [key, target] : pi) hit[{std::get<0>(key), std::get<1>(key), target.content}].insert(target.id);
  const std::size_t arrows = pi.size();
  std::size_t expected = 0;
  for (const auto& [nu, elems] : cb.all())
    for (const auto& b : elems)
      for (std::size_t i = 0; i < n; ++i) {
        const int t = b.stats[i];
        if (t == 0) continue;
        ++expected;
        const auto key = std::make_tuple(i, t, nu);
        EXPECT_TRUE(hit[key].count(b.id)) << "no preimage for (" << content_label(nu) << ")#" << b.id;
      }
  EXPECT_EQ(arrows, expected);
}

}  // namespace

TEST(LeftGraph, StructureAcrossData) {
  for (const auto& [in, h] : std::vector<std::pair<QuiverInput, int>>{
           {a2(1, 1), 6}, {a2(2, 1), 6}, {a2(0, 3), 6}, {kronecker(1, 0), 5}, {kronecker(1, 1), 5}, {a3(1, 0, 1), 5}}) {
    HighestWeightModule mod(in.quiver, in.lambda, {.max_height = h});
    auto cb = compute_canonical_basis(mod);
    const auto pi = compute_pi_table(cb);
    expect_pi_bijective(cb, pi);
    auto g = build_left_graph(cb, pi);
    EXPECT_EQ(g.nodes.size(), cb.total_count());
    for (const auto& a : g.arrows) {
      EXPECT_EQ(cb.element(a.target.content, a.target.id).stats[a.vertex], 0);
      EXPECT_EQ(cb.element(a.source.content, a.source.id).stats[a.vertex], a.r);
    }
    auto forward = identity_order(mod.vertex_count());
    auto backward = forward;
    std::reverse(backward.begin(), backward.end());
    for (const auto& order : {forward, backward})
      for (const auto& [nu, elems] : cb.all()) {
        auto mb = monomial_basis_M(cb, g, nu, order);
        EXPECT_TRUE(is_unitriangular(mb.transition)) << content_label(nu);
        for (std::size_t k = 0; k < mb.paths.size(); ++k) {
          auto back = replay_path(cb, pi, mb.paths[k]);
          ASSERT_TRUE(back.has_value());
          EXPECT_EQ(*back, (NodeRef{nu, mb.cb_ids[k]}));
        }
        const auto at_one = specialize_v1(mb.transition);
        for (std::size_t r = 0; r < at_one.size(); ++r)
          for (std::size_t c = 0; c < r; ++c) EXPECT_EQ(at_one[r][c], 0);
      }
  }
}
