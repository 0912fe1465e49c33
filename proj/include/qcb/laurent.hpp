#pragma once

// Exact Laurent polynomials in Z[v, v^-1] with arbitrary-precision
// coefficients, plus the quantum integers and binomials built on them.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qcb {

/// Raised when an exact division leaves a nonzero remainder.
class ArithmeticError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Element of Z[v, v^-1], stored as (exponent, coefficient) pairs sorted by
/// exponent. No stored coefficient is zero; zero is the empty list.
class LaurentPoly {
 public:
  using Term = std::pair<int, mpz_class>;

  LaurentPoly() = default;
  LaurentPoly(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace_back(0, mpz_class(c));
  }
  explicit LaurentPoly(const mpz_class& c) {
    if (c != 0) terms_.emplace_back(0, c);
  }

  static LaurentPoly monomial(int exponent, const mpz_class& coeff = 1) {
    LaurentPoly p;
    if (coeff != 0) p.terms_.emplace_back(exponent, coeff);
    return p;
  }

  /// Builds from arbitrary (possibly repeated, unsorted, zero) terms.
  static LaurentPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    LaurentPoly p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
        if (p.terms_.back().second == 0) p.terms_.pop_back();
      } else if (t.second != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  /// Coefficients c[0..n) meaning sum c[k] v^(offset + k).
  static LaurentPoly from_dense(const std::vector<mpz_class>& c, int offset) {
    LaurentPoly p;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0) p.terms_.emplace_back(offset + static_cast<int>(k), c[k]);
    return p;
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  int min_degree() const {
    if (is_zero()) throw std::domain_error("degree of zero polynomial");
    return terms_.front().first;
  }
  int max_degree() const {
    if (is_zero()) throw std::domain_error("degree of zero polynomial");
    return terms_.back().first;
  }
  int degree_span() const { return is_zero() ? 0 : max_degree() - min_degree(); }

  mpz_class coeff(int exponent) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), exponent,
        [](const Term& t, int e) { return t.first < e; });
    if (it != terms_.end() && it->first == exponent) return it->second;
    return 0;
  }
  const mpz_class& leading_coeff() const {
    if (is_zero()) throw std::domain_error("leading coefficient of zero");
    return terms_.back().second;
  }

  /// Dense coefficient vector starting at min_degree().
  std::vector<mpz_class> dense() const {
    if (is_zero()) return {};
    std::vector<mpz_class> c(static_cast<std::size_t>(degree_span() + 1));
    const int lo = min_degree();
    for (const auto& [e, a] : terms_) c[static_cast<std::size_t>(e - lo)] = a;
    return c;
  }

  /// Multiplication by v^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly p = *this;
    for (auto& t : p.terms_) t.first += k;
    return p;
  }

  mpz_class eval_at_one() const {
    mpz_class s = 0;
    for (const auto& t : terms_) s += t.second;
    return s;
  }

  /// Value at an element of Z/pZ (p < 2^62), v must be invertible mod p.
  std::uint64_t eval_mod(std::uint64_t v, std::uint64_t v_inv, std::uint64_t p) const;

  /// gcd of the coefficients (0 for the zero polynomial).
  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& t : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
    return g;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly operator-() const {
    LaurentPoly p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    return combine(a, b, false);
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    return combine(a, b, true);
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.terms_.size() == 1) return a.scaled(b.terms_[0].second).shifted(b.terms_[0].first);
    if (a.terms_.size() == 1) return b.scaled(a.terms_[0].second).shifted(a.terms_[0].first);
    const int lo = a.min_degree() + b.min_degree();
    std::vector<mpz_class> acc(static_cast<std::size_t>(a.degree_span() + b.degree_span() + 1));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        mpz_addmul(acc[static_cast<std::size_t>(ea + eb - lo)].get_mpz_t(), ca.get_mpz_t(),
                   cb.get_mpz_t());
    return from_dense(acc, lo);
  }

  LaurentPoly scaled(const mpz_class& c) const {
    if (c == 0) return {};
    LaurentPoly p = *this;
    for (auto& t : p.terms_) t.second *= c;
    return p;
  }

  /// Exact division of every coefficient by an integer.
  LaurentPoly divided_by(const mpz_class& c) const {
    LaurentPoly p = *this;
    for (auto& t : p.terms_) {
      if (!mpz_divisible_p(t.second.get_mpz_t(), c.get_mpz_t()))
        throw ArithmeticError("inexact integer division of Laurent polynomial");
      mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), c.get_mpz_t());
    }
    return p;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  /// Human-readable form, highest degree first: "v^2 + 3 - 2v^-1".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      mpz_class mag = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag.get_str();
        continue;
      }
      if (mag != 1) os << mag.get_str();
      os << "v";
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

 private:
  static LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
    LaurentPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
        r.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->first < ia->first) {
        r.terms_.emplace_back(ib->first, subtract ? mpz_class(-ib->second) : ib->second);
        ++ib;
      } else {
        mpz_class c = subtract ? mpz_class(ia->second - ib->second) : mpz_class(ia->second + ib->second);
        if (c != 0) r.terms_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t mpz_mod_u64(const mpz_class& a, std::uint64_t p) {
  mpz_class r;
  mpz_class pp;
  mpz_import(pp.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), pp.get_mpz_t());
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, 1, sizeof(out), 0, 0, r.get_mpz_t());
  return count ? out : 0;
}

}  // namespace detail

inline std::uint64_t LaurentPoly::eval_mod(std::uint64_t v, std::uint64_t v_inv,
                                           std::uint64_t p) const {
  std::uint64_t s = 0;
  for (const auto& [e, c] : terms_) {
    const std::uint64_t base = e >= 0 ? v : v_inv;
    const std::uint64_t x = detail::powmod(base, static_cast<std::uint64_t>(e >= 0 ? e : -e), p);
    s = (s + detail::mulmod(detail::mpz_mod_u64(c, p), x, p)) % p;
  }
  return s;
}

/// The involution v -> v^-1.
inline LaurentPoly bar(const LaurentPoly& p) {
  std::vector<LaurentPoly::Term> t;
  t.reserve(p.term_count());
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) t.emplace_back(-it->first, it->second);
  return LaurentPoly::from_terms(std::move(t));
}

inline bool is_bar_invariant(const LaurentPoly& p) { return bar(p) == p; }

/// True when every term has strictly negative degree.
inline bool in_negative_part(const LaurentPoly& p) { return p.is_zero() || p.max_degree() < 0; }

/// True when p lies in 1 + v^-1 Z[v^-1].
inline bool is_unit_mod_negative(const LaurentPoly& p) {
  return in_negative_part(p - LaurentPoly(1));
}

/// Quantum integer [n] = (v^n - v^-n) / (v - v^-1); [-n] = -[n].
inline LaurentPoly qint(int n) {
  if (n < 0) return -qint(-n);
  std::vector<LaurentPoly::Term> t;
  for (int m = 0; m < n; ++m) t.emplace_back(n - 1 - 2 * m, mpz_class(1));
  return LaurentPoly::from_terms(std::move(t));
}

/// [n]! for n >= 0.
inline LaurentPoly qfact(int n) {
  if (n < 0) throw std::domain_error("qfact of a negative integer");
  LaurentPoly r(1);
  for (int s = 2; s <= n; ++s) r *= qint(s);
  return r;
}

/// Unique bar-invariant polynomial whose non-negative part equals that of p.
inline LaurentPoly sym_truncate(const LaurentPoly& p) {
  std::vector<LaurentPoly::Term> t;
  for (const auto& [e, c] : p.terms()) {
    if (e < 0) continue;
    t.emplace_back(e, c);
    if (e > 0) t.emplace_back(-e, c);
  }
  return LaurentPoly::from_terms(std::move(t));
}

namespace detail {

using Dense = std::vector<mpz_class>;  // ascending coefficients

inline void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Exact division in Z[v]; nullopt if the quotient is not in Z[v].
inline std::optional<Dense> divide_exact_dense(Dense a, const Dense& b) {
  trim(a);
  if (b.empty()) throw std::domain_error("division by zero polynomial");
  if (a.empty()) return Dense{};
  if (a.size() < b.size()) return std::nullopt;
  Dense q(a.size() - b.size() + 1);
  const mpz_class& lb = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    mpz_class& top = a[k + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (std::size_t j = 0; j < b.size(); ++j) mpz_submul(a[k + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
    q[k] = std::move(c);
  }
  for (const auto& c : a)
    if (c != 0) return std::nullopt;
  return q;
}

/// Pseudo-remainder of a by b (deg a >= deg b).
inline Dense pseudo_rem(Dense a, const Dense& b) {
  const mpz_class& lb = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    mpz_class top = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_submul(a[shift + j].get_mpz_t(), top.get_mpz_t(), b[j].get_mpz_t());
    trim(a);
  }
  return a;
}

inline mpz_class dense_content(const Dense& a) {
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

inline Dense primitive_part(Dense a) {
  mpz_class g = dense_content(a);
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return a;
}

/// gcd in Z[v] with positive leading coefficient (primitive remainder sequence).
inline Dense gcd_dense(Dense a, Dense b) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) {
    Dense r = a.empty() ? std::move(b) : std::move(a);
    if (!r.empty() && r.back() < 0)
      for (auto& c : r) c = -c;
    return r;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), dense_content(a).get_mpz_t(), dense_content(b).get_mpz_t());
  a = primitive_part(std::move(a));
  b = primitive_part(std::move(b));
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    Dense r = pseudo_rem(a, b);
    a = std::move(b);
    b = r.empty() ? r : primitive_part(std::move(r));
  }
  a = primitive_part(std::move(a));
  for (auto& c : a) c *= g;
  return a;
}

}  // namespace detail

/// Exact quotient a / b in Z[v, v^-1], or nullopt if b does not divide a.
inline std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero Laurent polynomial");
  if (a.is_zero()) return LaurentPoly{};
  auto q = detail::divide_exact_dense(a.dense(), b.dense());
  if (!q) return std::nullopt;
  return LaurentPoly::from_dense(*q, a.min_degree() - b.min_degree());
}

/// Like divide_exact, but a remainder is an internal error.
inline LaurentPoly divide_or_throw(const LaurentPoly& a, const LaurentPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw ArithmeticError("inexact division: (" + a.to_string() + ") / (" + b.to_string() + ")");
  return *q;
}

/// gcd in Z[v, v^-1], normalized to min degree 0 and positive leading coefficient.
inline LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  return LaurentPoly::from_dense(detail::gcd_dense(a.dense(), b.dense()), 0);
}

/// Gaussian binomial [n choose k]; n may be negative, k >= 0.
inline LaurentPoly qbinom(int n, int k) {
  if (k < 0) throw std::domain_error("qbinom with negative k");
  if (n >= 0 && k > n) return {};
  LaurentPoly num(1);
  for (int s = 1; s <= k; ++s) num *= qint(n - s + 1);
  return divide_or_throw(num, qfact(k));
}

}  // namespace qcb
