#pragma once

// Weight multiplicities of L(Lambda) by Freudenthal's recursion. Used as a
// dimension oracle that shares no code with the Gram-matrix construction.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qcb/cartan.hpp"
#include "qcb/laurent.hpp"

namespace qcb {

namespace detail {

inline int mobius(int k) {
  int result = 1;
  for (int p = 2; p * p <= k; ++p) {
    if (k % p) continue;
    k /= p;
    if (k % p == 0) return 0;
    result = -result;
  }
  if (k > 1) result = -result;
  return result;
}

inline int content_gcd(const DimVector& b) {
  int g = 0;
  for (int x : b) g = std::gcd(g, x);
  return g;
}

}  // namespace detail

/// Multiplicities of positive roots up to a height bound, read off from the
/// logarithm of the denominator sum_w sign(w) e^{w rho - rho} truncated by height.
class RootSystem {
 public:
  RootSystem(const QuiverDatum& q, int max_height) : n_(q.size()), max_height_(max_height) {
    // Orbit of rho: gamma = rho - w rho grows along reduced words.
    std::map<DimVector, int> orbit{{DimVector(n_, 0), 1}};
    std::vector<DimVector> frontier{DimVector(n_, 0)};
    while (!frontier.empty()) {
      std::vector<DimVector> next;
      for (const auto& g : frontier) {
        for (std::size_t i = 0; i < n_; ++i) {
          const int step = 1 - q.form_simple(i, g);
          if (step <= 0) continue;
          DimVector h = g + unit_vector(n_, i, step);
          if (height(h) > max_height || orbit.count(h)) continue;
          orbit.emplace(h, -orbit.at(g));
          next.push_back(std::move(h));
        }
      }
      frontier = std::move(next);
    }
    Series x;
    for (const auto& [g, sign] : orbit)
      if (height(g) > 0) x.emplace(g, mpq_class(sign));
    // c = -log(1 + x) = sum_k (-1)^k x^k / k.
    Series power = x;
    for (int k = 1; k <= max_height && !power.empty(); ++k) {
      const mpq_class f(k % 2 ? -1 : 1, k);
      for (const auto& [b, val] : power) c_[b] += f * val;
      power = multiply(power, x);
    }
    for (const auto& [beta, c] : c_) {
      if (c == 0) continue;
      const int g = detail::content_gcd(beta);
      mpq_class m = 0;
      for (int k = 1; k <= g; ++k) {
        if (g % k) continue;
        DimVector sub = beta;
        for (auto& e : sub) e /= k;
        auto it = c_.find(sub);
        if (it != c_.end()) m += mpq_class(detail::mobius(k), k) * it->second;
      }
      m.canonicalize();
      if (m.get_den() != 1 || m < 0)
        throw ArithmeticError("non-integral root multiplicity at (" + content_label(beta) + "): " + m.get_str());
      if (m != 0) mult_.emplace(beta, static_cast<int>(m.get_num().get_si()));
    }
  }

  /// Positive roots with their multiplicities.
  const std::map<DimVector, int>& roots() const noexcept { return mult_; }

  int multiplicity(const DimVector& beta) const {
    auto it = mult_.find(beta);
    return it == mult_.end() ? 0 : it->second;
  }

 private:
  using Series = std::map<DimVector, mpq_class>;

  Series multiply(const Series& a, const Series& b) const {
    Series r;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        DimVector e = ea + eb;
        if (height(e) > max_height_) continue;
        r[e] += ca * cb;
      }
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
  }

  std::size_t n_;
  int max_height_;
  Series c_;
  std::map<DimVector, int> mult_;
};

/// Multiplicities of the weights Lambda - nu in L(Lambda) for all contents
/// nu of height at most max_height.
class FreudenthalTable {
 public:
  FreudenthalTable(const QuiverDatum& q, const HighestWeight& lambda, int max_height)
      : roots_(q, max_height), max_height_(max_height) {
    auto lambda_form = [&](const DimVector& x) {
      int s = 0;
      for (std::size_t i = 0; i < q.size(); ++i) s += lambda[i] * x[i];
      return s;
    };
    for (int h = 0; h <= max_height; ++h) {
      for (const auto& nu : contents_of_height(q.size(), h)) {
        if (h == 0) {
          table_.emplace(nu, 1);
          continue;
        }
        const int coef = 2 * lambda_form(nu) + 2 * h - q.form(nu, nu);
        if (coef == 0) {
          table_.emplace(nu, 0);
          continue;
        }
        mpz_class rhs = 0;
        for (const auto& [alpha, m] : roots_.roots()) {
          if (!weight_leq(alpha, nu)) continue;
          DimVector rest = nu - alpha;
          while (is_nonnegative(rest)) {
            const int mk = table_.at(rest);
            if (mk) rhs += mpz_class(2 * m) * (lambda_form(alpha) - q.form(rest, alpha)) * mk;
            rest = rest - alpha;
          }
        }
        if (rhs % coef != 0) throw ArithmeticError("Freudenthal recursion produced a non-integer");
        mpz_class value = rhs / coef;
        table_.emplace(nu, static_cast<int>(value.get_si()));
      }
    }
  }

  int multiplicity(const DimVector& nu) const {
    if (height(nu) > max_height_) throw std::out_of_range("content above the Freudenthal table height");
    return table_.at(nu);
  }

  const RootSystem& roots() const noexcept { return roots_; }

 private:
  RootSystem roots_;
  int max_height_;
  std::map<DimVector, int> table_;
};

inline int freudenthal_multiplicity(const QuiverDatum& q, const HighestWeight& lambda, const DimVector& nu) {
  if (!is_nonnegative(nu)) return 0;
  return FreudenthalTable(q, lambda, height(nu)).multiplicity(nu);
}

}  // namespace qcb
