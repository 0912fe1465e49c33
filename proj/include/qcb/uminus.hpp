#pragma once

// Flag-type monomials F_{i1}^{(a1)} ... F_{ik}^{(ak)} of the integral form of
// U^-, their product, the restriction coproduct and the twisted derivations.

#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qcb/cartan.hpp"
#include "qcb/laurent.hpp"

namespace qcb {

struct Slot {
  std::size_t vertex = 0;
  int mult = 0;
  auto operator<=>(const Slot&) const = default;
};

/// A normalized word of divided powers: every multiplicity is positive and
/// no two adjacent slots share a vertex. Slot 0 is the leftmost operator.
class FlagMonomial {
 public:
  FlagMonomial() = default;

  /// Normalized word from raw slots; the caller guarantees normal form.
  static FlagMonomial from_normal_slots(std::vector<Slot> slots) {
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (slots[k].mult <= 0) throw std::invalid_argument("flag monomial slot with non-positive multiplicity");
      if (k && slots[k].vertex == slots[k - 1].vertex)
        throw std::invalid_argument("flag monomial not normalized");
    }
    FlagMonomial m;
    m.slots_ = std::move(slots);
    return m;
  }

  static FlagMonomial single(std::size_t vertex, int mult) { return from_normal_slots({{vertex, mult}}); }

  const std::vector<Slot>& slots() const noexcept { return slots_; }
  bool empty() const noexcept { return slots_.empty(); }
  std::size_t length() const noexcept { return slots_.size(); }

  DimVector content(std::size_t n) const {
    DimVector c(n, 0);
    for (const auto& s : slots_) c.at(s.vertex) += s.mult;
    return c;
  }
  int height() const {
    int h = 0;
    for (const auto& s : slots_) h += s.mult;
    return h;
  }

  /// Text form "1^2.2^1.1^1"; the empty word is "()".
  std::string to_string(const QuiverDatum& q) const {
    if (slots_.empty()) return "()";
    std::string s;
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      if (k) s += ".";
      s += q.name(slots_[k].vertex) + "^" + std::to_string(slots_[k].mult);
    }
    return s;
  }

  static FlagMonomial parse(const QuiverDatum& q, const std::string& text) {
    if (text == "()" || text.empty()) return {};
    std::vector<Slot> raw;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t dot = text.find('.', pos);
      if (dot == std::string::npos) dot = text.size();
      const std::string part = text.substr(pos, dot - pos);
      const std::size_t caret = part.rfind('^');
      if (caret == std::string::npos) throw InputError("bad flag monomial slot '" + part + "'");
      int mult = 0;
      try {
        mult = std::stoi(part.substr(caret + 1));
      } catch (const std::exception&) {
        throw InputError("bad multiplicity in slot '" + part + "'");
      }
      raw.push_back({q.index_of(part.substr(0, caret)), mult});
      pos = dot + 1;
    }
    try {
      return from_normal_slots(std::move(raw));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("flag monomial '") + text + "': " + e.what());
    }
  }

  auto operator<=>(const FlagMonomial&) const = default;

 private:
  std::vector<Slot> slots_;
};

/// Scalar times normalized word.
struct ScaledMonomial {
  LaurentPoly coeff;
  FlagMonomial word;
};

/// Drops empty slots and merges equal neighbours with
/// F_i^(a) F_i^(b) = [a+b choose a] F_i^(a+b).
inline ScaledMonomial normalize_slots(const std::vector<Slot>& raw) {
  LaurentPoly coeff(1);
  std::vector<Slot> out;
  for (const auto& s : raw) {
    if (s.mult < 0) throw std::invalid_argument("negative slot multiplicity");
    if (s.mult == 0) continue;
    if (!out.empty() && out.back().vertex == s.vertex) {
      coeff *= qbinom(out.back().mult + s.mult, s.mult);
      out.back().mult += s.mult;
    } else {
      out.push_back(s);
    }
  }
  return {std::move(coeff), FlagMonomial::from_normal_slots(std::move(out))};
}

/// Product of two words in the integral form.
inline ScaledMonomial mono_mul(const FlagMonomial& a, const FlagMonomial& b) {
  std::vector<Slot> raw = a.slots();
  raw.insert(raw.end(), b.slots().begin(), b.slots().end());
  return normalize_slots(raw);
}

using Terms = std::map<FlagMonomial, LaurentPoly>;

inline void add_term(Terms& t, const FlagMonomial& m, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

/// Content-homogeneous element of U^-.
class UMinusElement {
 public:
  explicit UMinusElement(DimVector content) : content_(std::move(content)) {}
  UMinusElement(std::size_t n, const FlagMonomial& m, LaurentPoly c = LaurentPoly(1))
      : content_(m.content(n)) {
    add_term(terms_, m, c);
  }

  const DimVector& content() const noexcept { return content_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(const FlagMonomial& m, const LaurentPoly& c) {
    if (m.content(content_.size()) != content_) throw std::invalid_argument("UMinusElement: content mismatch");
    add_term(terms_, m, c);
  }

  UMinusElement& operator+=(const UMinusElement& o) {
    if (o.content_ != content_) throw std::invalid_argument("UMinusElement: content mismatch");
    for (const auto& [m, c] : o.terms_) add_term(terms_, m, c);
    return *this;
  }
  friend UMinusElement operator+(UMinusElement a, const UMinusElement& b) { return a += b; }
  UMinusElement scaled(const LaurentPoly& c) const {
    UMinusElement r(content_);
    for (const auto& [m, x] : terms_) add_term(r.terms_, m, x * c);
    return r;
  }
  friend bool operator==(const UMinusElement& a, const UMinusElement& b) {
    return a.content_ == b.content_ && a.terms_ == b.terms_;
  }

 private:
  DimVector content_;
  Terms terms_;
};

/// Bilinear extension of mono_mul.
inline UMinusElement mono_mul(const UMinusElement& x, const UMinusElement& y) {
  UMinusElement r(x.content() + y.content());
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      auto p = mono_mul(a, b);
      r.add(p.word, p.coeff * ca * cb);
    }
  return r;
}

struct CoproductTerm {
  FlagMonomial tau;
  FlagMonomial omega;
  LaurentPoly coeff;
};

/// Exponent M(tau, omega) of the restriction shift for the slot-wise split
/// first[l] + second[l] = word[l]. Edge sums run over the arrows of the
/// orientation, so each unordered edge contributes once.
inline int restriction_shift(const QuiverDatum& q, const std::vector<Slot>& word, const std::vector<int>& first,
                             const std::vector<int>& second) {
  const std::size_t n = q.size();
  const std::size_t len = word.size();
  DimVector t(n, 0);
  DimVector w(n, 0);
  for (std::size_t l = 0; l < len; ++l) {
    t[word[l].vertex] += first[l];
    w[word[l].vertex] += second[l];
  }
  auto tau_at = [&](std::size_t l, std::size_t i) { return word[l].vertex == i ? first[l] : 0; };
  auto omega_at = [&](std::size_t l, std::size_t i) { return word[l].vertex == i ? second[l] : 0; };

  int m = 0;
  for (const auto& [src, dst] : q.arrows()) {
    for (std::size_t lp = 0; lp < len; ++lp)
      for (std::size_t l = lp + 1; l < len; ++l)
        m -= tau_at(lp, src) * omega_at(l, dst) + tau_at(lp, dst) * omega_at(l, src);
    m += t[src] * w[dst] + t[dst] * w[src];
  }
  for (std::size_t l = 0; l < len; ++l)
    for (std::size_t lp = 0; lp < len; ++lp) {
      if (word[l].vertex != word[lp].vertex) continue;
      if (l < lp) m -= first[lp] * second[l];
      if (l > lp) m += first[lp] * second[l];
    }
  for (std::size_t i = 0; i < n; ++i) m -= t[i] * w[i];
  return m;
}

/// Components of the restriction of a word to the split (T, W): every
/// slot-wise splitting with first factor of content T, weighted by v^M.
/// Empty slots are dropped and the resulting words normalized; terms with
/// the same pair of words are collected. Sorted by (tau, omega).
inline std::vector<CoproductTerm> restriction_coproduct(const QuiverDatum& q, const FlagMonomial& m,
                                                        const DimVector& t_dim, const DimVector& w_dim) {
  const std::size_t n = q.size();
  if (t_dim.size() != n || w_dim.size() != n || !is_nonnegative(t_dim) || !is_nonnegative(w_dim) ||
      t_dim + w_dim != m.content(n))
    throw std::invalid_argument("restriction_coproduct: split does not sum to the content of the word");
  const auto& word = m.slots();
  const std::size_t len = word.size();
  std::vector<int> first(len, 0);
  std::vector<int> second(len, 0);
  DimVector remaining = t_dim;
  std::map<std::pair<FlagMonomial, FlagMonomial>, LaurentPoly> acc;

  auto rec = [&](auto&& self, std::size_t l) -> void {
    if (l == len) {
      for (int x : remaining)
        if (x != 0) return;
      std::vector<Slot> ts;
      std::vector<Slot> ws;
      for (std::size_t k = 0; k < len; ++k) {
        ts.push_back({word[k].vertex, first[k]});
        ws.push_back({word[k].vertex, second[k]});
      }
      auto nt = normalize_slots(ts);
      auto nw = normalize_slots(ws);
      const int shift = restriction_shift(q, word, first, second);
      LaurentPoly c = (nt.coeff * nw.coeff).shifted(shift);
      auto key = std::make_pair(nt.word, nw.word);
      auto [it, inserted] = acc.try_emplace(key, c);
      if (!inserted) it->second += c;
      return;
    }
    const std::size_t i = word[l].vertex;
    const int hi = std::min(word[l].mult, remaining[i]);
    for (int b = 0; b <= hi; ++b) {
      first[l] = b;
      second[l] = word[l].mult - b;
      remaining[i] -= b;
      self(self, l + 1);
      remaining[i] += b;
    }
  };
  rec(rec, 0);

  std::vector<CoproductTerm> out;
  for (auto& [key, c] : acc)
    if (!c.is_zero()) out.push_back({key.first, key.second, std::move(c)});
  return out;
}

/// r_i-bar: coproduct component whose second factor is F_i.
inline UMinusElement rbar(const QuiverDatum& q, const UMinusElement& x, std::size_t i) {
  const std::size_t n = q.size();
  if (x.content()[i] == 0) return UMinusElement(x.content());
  const DimVector e = unit_vector(n, i);
  const FlagMonomial fi = FlagMonomial::single(i, 1);
  UMinusElement r(x.content() - e);
  for (const auto& [m, c] : x.terms())
    for (const auto& term : restriction_coproduct(q, m, x.content() - e, e))
      if (term.omega == fi) r.add(term.tau, term.coeff * c);
  return r;
}

/// _i r-bar: coproduct component whose first factor is F_i.
inline UMinusElement ibar_r(const QuiverDatum& q, const UMinusElement& x, std::size_t i) {
  const std::size_t n = q.size();
  if (x.content()[i] == 0) return UMinusElement(x.content());
  const DimVector e = unit_vector(n, i);
  const FlagMonomial fi = FlagMonomial::single(i, 1);
  UMinusElement r(x.content() - e);
  for (const auto& [m, c] : x.terms())
    for (const auto& term : restriction_coproduct(q, m, e, x.content() - e))
      if (term.tau == fi) r.add(term.omega, term.coeff * c);
  return r;
}

/// Restriction of m to contents (a, b, c) in two steps: split off c first
/// and then (a, b), or split off a first and then (b, c).
using TripleSplit = std::map<std::tuple<FlagMonomial, FlagMonomial, FlagMonomial>, LaurentPoly>;

inline TripleSplit iterated_restriction(const QuiverDatum& q, const FlagMonomial& m, const DimVector& a,
                                        const DimVector& b, const DimVector& c, bool left_first) {
  TripleSplit out;
  auto put = [&](const FlagMonomial& x, const FlagMonomial& y, const FlagMonomial& z, const LaurentPoly& k) {
    auto [it, inserted] = out.try_emplace({x, y, z}, k);
    if (!inserted) it->second += k;
  };
  if (left_first) {
    for (const auto& t1 : restriction_coproduct(q, m, a + b, c))
      for (const auto& t2 : restriction_coproduct(q, t1.tau, a, b)) put(t2.tau, t2.omega, t1.omega, t1.coeff * t2.coeff);
  } else {
    for (const auto& t1 : restriction_coproduct(q, m, a, b + c))
      for (const auto& t2 : restriction_coproduct(q, t1.omega, b, c)) put(t1.tau, t2.tau, t2.omega, t1.coeff * t2.coeff);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

/// sum_{m=0}^{1+a_ij} (-1)^m F_i^(m) F_j F_i^(1+a_ij-m).
inline UMinusElement serre_element(const QuiverDatum& q, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("serre_element needs distinct vertices");
  const int top = 1 + q.a(i, j);
  UMinusElement r(unit_vector(q.size(), i, top) + unit_vector(q.size(), j));
  for (int m = 0; m <= top; ++m) {
    auto s = normalize_slots({{i, m}, {j, 1}, {i, top - m}});
    r.add(s.word, m % 2 ? -s.coeff : s.coeff);
  }
  return r;
}

}  // namespace qcb
