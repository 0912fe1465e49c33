#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "qcb/laurent.hpp"
#include "qcb/linalg.hpp"
#include "qcb/ratfunc.hpp"

using namespace qcb;
using qcb::testing::random_poly;

namespace {

LaurentPoly v(int k) { return LaurentPoly::monomial(k); }

// Integer binomial for the v = 1 check.
mpz_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const std::uint64_t inv = detail::powmod(m[rank][c], kPrime - 2, kPrime);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const std::uint64_t f = detail::mulmod(m[r][c], inv, kPrime);
      for (std::size_t j = c; j < cols; ++j)
        m[r][j] = (m[r][j] + kPrime - detail::mulmod(f, m[rank][j], kPrime)) % kPrime;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST(LaurentPoly, ZeroIsEmptyAndNoZeroCoefficients) {
  LaurentPoly p = v(2) + LaurentPoly(3) - v(2);
  EXPECT_EQ(p, LaurentPoly(3));
  EXPECT_EQ(p.term_count(), 1u);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).terms().size(), 0u);
}

TEST(LaurentPoly, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    auto a = random_poly(rng, 20, 1000000);
    auto b = random_poly(rng, 20, 1000000);
    auto c = random_poly(rng, 20, 1000000);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(LaurentPoly, ToString) {
  EXPECT_EQ((v(2) + LaurentPoly(3) - v(-1).scaled(2)).to_string(), "v^2 + 3 - 2v^-1");
  EXPECT_EQ(LaurentPoly().to_string(), "0");
}

TEST(Bar, Examples) {
  EXPECT_EQ(bar(v(2) + LaurentPoly(3)), v(-2) + LaurentPoly(3));
  EXPECT_EQ(bar(LaurentPoly()), LaurentPoly());
  EXPECT_EQ(bar(v(1) + v(-1)), v(1) + v(-1));
}

TEST(Bar, InvolutionOnRandomPolynomials) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    auto p = random_poly(rng, 20, 1000000);
    EXPECT_EQ(bar(bar(p)), p);
  }
}

TEST(QInt, Examples) {
  EXPECT_EQ(qint(3), v(2) + LaurentPoly(1) + v(-2));
  EXPECT_TRUE(qint(0).is_zero());
  EXPECT_EQ(qint(-2), -(v(1) + v(-1)));
}

TEST(QInt, ProductAtOne) {
  for (int n = -12; n <= 12; ++n)
    for (int m = -12; m <= 12; ++m) EXPECT_EQ((qint(n) * qint(m)).eval_at_one(), n * m);
}

TEST(QBinom, Examples) {
  EXPECT_EQ(qbinom(4, 2), v(4) + v(2) + LaurentPoly(2) + v(-2) + v(-4));
  EXPECT_EQ(qbinom(7, 0), LaurentPoly(1));
  EXPECT_TRUE(qbinom(2, 3).is_zero());
}

TEST(QBinom, BarInvariantAndClassicalLimit) {
  for (int n = 0; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      auto b = qbinom(n, k);
      EXPECT_TRUE(is_bar_invariant(b));
      EXPECT_EQ(b.eval_at_one(), binomial(n, k));
      EXPECT_EQ(b * qfact(k) * qfact(n - k), qfact(n));
    }
}

TEST(SymTruncate, Examples) {
  EXPECT_EQ(sym_truncate(v(2) + LaurentPoly(5) + v(-1)), v(2) + LaurentPoly(5) + v(-2));
  EXPECT_TRUE(sym_truncate(v(-3)).is_zero());
  EXPECT_EQ(sym_truncate(v(1) + v(-1)), v(1) + v(-1));
}

TEST(SymTruncate, UniquenessContract) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    auto p = random_poly(rng, 16, 1000);
    auto s = sym_truncate(p);
    EXPECT_TRUE(is_bar_invariant(s));
    for (int e = 0; e <= 10; ++e) EXPECT_EQ(s.coeff(e), p.coeff(e));
    if (is_bar_invariant(p)) {
      EXPECT_EQ(s, p);
    }
  }
}

TEST(Division, ExactAndGcd) {
  auto a = (v(1) + LaurentPoly(1)) * (v(2) - LaurentPoly(3));
  auto b = (v(1) + LaurentPoly(1)) * (v(1) + LaurentPoly(2)).shifted(-4);
  EXPECT_EQ(gcd(a, b), v(1) + LaurentPoly(1));
  EXPECT_EQ(divide_or_throw(a, v(2) - LaurentPoly(3)), v(1) + LaurentPoly(1));
  EXPECT_FALSE(divide_exact(v(2) + LaurentPoly(1), v(1) + LaurentPoly(1)).has_value());
  EXPECT_THROW(divide_or_throw(v(2) + LaurentPoly(1), v(1) + LaurentPoly(1)), ArithmeticError);
  EXPECT_EQ(gcd(LaurentPoly(), LaurentPoly(-6)), LaurentPoly(6));
}

TEST(RatFunc, CanonicalForm) {
  RatFunc r(v(3) - v(1), v(2).scaled(-2) - v(1).scaled(2));
  // (v^3 - v) / (-2v^2 - 2v) = (v - 1) / -2
  EXPECT_EQ(r, RatFunc(v(0) - v(1), LaurentPoly(2)));
  EXPECT_EQ(r.den(), LaurentPoly(2));
  EXPECT_EQ(RatFunc(LaurentPoly(4), LaurentPoly(2)), RatFunc(2));
  EXPECT_EQ(RatFunc(v(-1), v(-3)), RatFunc(v(2)));
  EXPECT_TRUE(RatFunc(LaurentPoly(6), LaurentPoly(-3)).is_laurent());
}

TEST(RatFunc, EqualityMatchesCrossMultiplication) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    auto a = random_poly(rng, 8, 20);
    auto b = random_poly(rng, 8, 20);
    auto c = random_poly(rng, 8, 20);
    if (b.is_zero() || c.is_zero()) continue;
    RatFunc x(a * c, b * c);
    RatFunc y(a, b);
    EXPECT_EQ(x, y);
    EXPECT_EQ(x == RatFunc(a + LaurentPoly(1), b), (a * b == (a + LaurentPoly(1)) * b));
    EXPECT_EQ(y * RatFunc(b, c) * RatFunc(c), RatFunc(a));
    EXPECT_EQ(bar(bar(y)), y);
  }
}

TEST(RatFunc, ValueAtOne) {
  EXPECT_EQ(RatFunc(qint(4), qint(2)).eval_at_one(), mpq_class(2));
  EXPECT_THROW(RatFunc(LaurentPoly(1), v(1) - LaurentPoly(1)).eval_at_one(), ArithmeticError);
}

TEST(LinearAlgebra, RankExamples) {
  RatMatrix id(3, RatVector(3));
  for (int k = 0; k < 3; ++k) id[k][k] = RatFunc(1);
  EXPECT_EQ(rf_rank(id), 3u);
  RatMatrix m = {{RatFunc(v(1)), RatFunc(1)}, {RatFunc(v(2)), RatFunc(v(1))}};
  EXPECT_EQ(rf_rank(m), 1u);
}

TEST(LinearAlgebra, SolveAndInconsistency) {
  RatMatrix a = {{RatFunc(v(1)), RatFunc(1)}, {RatFunc(1), RatFunc(v(-1))}};
  EXPECT_FALSE(rf_solve(a, {RatFunc(1), RatFunc(1)}).has_value());
  RatMatrix b = {{RatFunc(v(1)), RatFunc(1)}, {RatFunc(1), RatFunc(v(1))}};
  auto x = rf_solve(b, {RatFunc(1), RatFunc(0)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(b[0][0] * (*x)[0] + b[0][1] * (*x)[1], RatFunc(1));
  EXPECT_EQ(b[1][0] * (*x)[0] + b[1][1] * (*x)[1], RatFunc(0));
  auto inv = rf_inverse(b);
  EXPECT_EQ(mat_vec(inv, {RatFunc(1), RatFunc(0)}), *x);
}

TEST(LinearAlgebra, RankMatchesModularSpecialization) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = dim(rng);
    const int cols = dim(rng);
    // Low-rank structure: rows drawn from combinations of a few generators.
    const int gens = 1 + pick(rng) % std::max(1, std::min(rows, cols));
    PolyMatrix g(gens, PolyVector(cols));
    for (auto& row : g)
      for (auto& x : row) x = random_poly(rng, 6, 5);
    PolyMatrix m(rows, PolyVector(cols));
    for (auto& row : m) {
      for (int k = 0; k < gens; ++k) {
        auto c = random_poly(rng, 4, 3);
        for (int j = 0; j < cols; ++j) row[j] += c * g[k][j];
      }
    }
    const std::size_t exact = bareiss_rank(m);
    EXPECT_EQ(rf_rank(to_rat(m)), exact);
    std::uniform_int_distribution<std::uint64_t> elt(2, kPrime - 2);
    const std::uint64_t x = elt(rng);
    const std::uint64_t x_inv = detail::powmod(x, kPrime - 2, kPrime);
    std::vector<std::vector<std::uint64_t>> mm(rows, std::vector<std::uint64_t>(cols));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) mm[r][c] = m[r][c].eval_mod(x, x_inv, kPrime);
    EXPECT_EQ(rank_mod_p(mm), exact);
  }
}
