#pragma once

// Elements of Q(v) as reduced quotients of Laurent polynomials.

#include <stdexcept>
#include <string>
#include <utility>

#include "qcb/laurent.hpp"

namespace qcb {

/// numerator / denominator in canonical form: the denominator is a polynomial
/// with nonzero constant term and positive leading coefficient, and the pair
/// shares no common factor in Z[v]. Equality is therefore syntactic.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const LaurentPoly& num() const noexcept { return num_; }
  const LaurentPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_laurent() const { return den_ == LaurentPoly(1); }

  /// The Laurent polynomial this represents; throws if there is a pole.
  const LaurentPoly& as_laurent() const {
    if (!is_laurent()) throw ArithmeticError("rational function is not a Laurent polynomial: " + to_string());
    return num_;
  }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("RatFunc division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string to_string() const {
    if (is_laurent()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

  /// Value at v = 1; throws on a pole.
  mpq_class eval_at_one() const {
    const mpz_class d = den_.eval_at_one();
    if (d == 0) throw ArithmeticError("pole at v = 1: " + to_string());
    mpq_class q(num_.eval_at_one(), d);
    q.canonicalize();
    return q;
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("RatFunc with zero denominator");
    if (num_.is_zero()) {
      den_ = LaurentPoly(1);
      return;
    }
    // Move the v-power of the denominator into the numerator.
    const int shift = den_.min_degree();
    den_ = den_.shifted(-shift);
    num_ = num_.shifted(-shift);
    if (den_ != LaurentPoly(1)) {
      LaurentPoly g = gcd(num_, den_);
      if (g != LaurentPoly(1)) {
        num_ = divide_or_throw(num_, g);
        den_ = divide_or_throw(den_, g);
      }
    }
    if (den_.leading_coeff() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

inline RatFunc bar(const RatFunc& r) { return RatFunc(bar(r.num()), bar(r.den())); }

}  // namespace qcb
