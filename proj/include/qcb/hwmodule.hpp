#pragma once

// The integrable highest weight module L(Lambda), realized as flag monomials
// applied to v_Lambda modulo the radical of the contravariant form.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "qcb/cartan.hpp"
#include "qcb/laurent.hpp"
#include "qcb/linalg.hpp"
#include "qcb/ratfunc.hpp"
#include "qcb/uminus.hpp"

namespace qcb {

/// A configured size limit (height or spanning-set size) was exceeded.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weight-homogeneous vector sum_m c_m (m . v_Lambda).
class ModuleVector {
 public:
  explicit ModuleVector(DimVector content) : content_(std::move(content)) {}
  ModuleVector(std::size_t n, const FlagMonomial& m, LaurentPoly c = LaurentPoly(1)) : content_(m.content(n)) {
    add_term(terms_, m, c);
  }
  static ModuleVector highest(std::size_t n) { return ModuleVector(n, FlagMonomial{}); }

  const DimVector& content() const noexcept { return content_; }
  const Terms& terms() const noexcept { return terms_; }
  /// Syntactic zero (no terms); see HighestWeightModule::is_zero for zero in L.
  bool has_no_terms() const noexcept { return terms_.empty(); }

  void add(const FlagMonomial& m, const LaurentPoly& c) {
    if (m.content(content_.size()) != content_) throw std::invalid_argument("ModuleVector: content mismatch");
    add_term(terms_, m, c);
  }
  ModuleVector& operator+=(const ModuleVector& o) {
    if (o.content_ != content_) throw std::invalid_argument("ModuleVector: content mismatch");
    for (const auto& [m, c] : o.terms_) add_term(terms_, m, c);
    return *this;
  }
  ModuleVector& operator-=(const ModuleVector& o) { return *this += o.scaled(LaurentPoly(-1)); }
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }

  ModuleVector scaled(const LaurentPoly& c) const {
    ModuleVector r(content_);
    for (const auto& [m, x] : terms_) add_term(r.terms_, m, x * c);
    return r;
  }
  /// Exact division of every coefficient; throws if not exact.
  ModuleVector divided(const LaurentPoly& c) const {
    ModuleVector r(content_);
    for (const auto& [m, x] : terms_) add_term(r.terms_, m, divide_or_throw(x, c));
    return r;
  }
  /// Coefficient-wise bar (monomial vectors are bar-fixed).
  ModuleVector bar_image() const {
    ModuleVector r(content_);
    for (const auto& [m, x] : terms_) add_term(r.terms_, m, bar(x));
    return r;
  }

  friend bool operator==(const ModuleVector& a, const ModuleVector& b) {
    return a.content_ == b.content_ && a.terms_ == b.terms_;
  }

 private:
  DimVector content_;
  Terms terms_;
};

/// All normalized words of content nu: lexicographic in vertex order,
/// higher multiplicities first. Throws ResourceCapError beyond `cap` words.
inline std::vector<FlagMonomial> enumerate_words(const DimVector& nu, std::size_t cap = SIZE_MAX) {
  std::vector<FlagMonomial> out;
  std::vector<Slot> cur;
  DimVector left = nu;
  int remaining = height(nu);
  auto rec = [&](auto&& self, std::size_t prev) -> void {
    if (remaining == 0) {
      if (out.size() >= cap)
        throw ResourceCapError("spanning set of content (" + content_label(nu) + ") exceeds the cap of " +
                               std::to_string(cap) + " words");
      out.push_back(FlagMonomial::from_normal_slots(cur));
      return;
    }
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (i == prev || left[i] == 0) continue;
      for (int a = left[i]; a >= 1; --a) {
        cur.push_back({i, a});
        left[i] -= a;
        remaining -= a;
        self(self, i);
        remaining += a;
        left[i] += a;
        cur.pop_back();
      }
    }
  };
  rec(rec, SIZE_MAX);
  return out;
}

/// F_i^(n) u: prepend the divided power to every word.
inline ModuleVector apply_F(std::size_t i, int n, const ModuleVector& u) {
  if (n < 0) throw std::invalid_argument("apply_F with negative power");
  if (n == 0) return u;
  const std::size_t dim = u.content().size();
  ModuleVector r(u.content() + unit_vector(dim, i, n));
  const FlagMonomial head = FlagMonomial::single(i, n);
  for (const auto& [m, c] : u.terms()) {
    auto p = mono_mul(head, m);
    r.add(p.word, p.coeff * c);
  }
  return r;
}

/// E_i on a single word: E_i F_i^(a) w = F_i^(a) E_i w + [<mu, alpha_i^vee> + 1 - a] F_i^(a-1) w,
/// where mu is the weight of w, and E_i commutes with F_j for j != i.
inline void apply_E_word(const QuiverDatum& q, const HighestWeight& lambda, std::size_t i, const FlagMonomial& m,
                         const LaurentPoly& c, Terms& out) {
  const auto& s = m.slots();
  const std::size_t n = q.size();
  DimVector suffix(n, 0);
  for (std::size_t l = s.size(); l-- > 0;) {
    if (s[l].vertex == i) {
      const int mu = coroot_pairing(q, lambda, suffix, i);
      LaurentPoly coef = qint(mu + 1 - s[l].mult);
      if (!coef.is_zero()) {
        std::vector<Slot> raw = s;
        raw[l].mult -= 1;
        auto norm = normalize_slots(raw);
        add_term(out, norm.word, coef * norm.coeff * c);
      }
    }
    suffix[s[l].vertex] += s[l].mult;
  }
}

inline ModuleVector apply_E(const QuiverDatum& q, const HighestWeight& lambda, std::size_t i, const ModuleVector& u) {
  if (u.content()[i] == 0) return ModuleVector(u.content() - unit_vector(q.size(), i));
  Terms out;
  for (const auto& [m, c] : u.terms()) apply_E_word(q, lambda, i, m, c, out);
  ModuleVector r(u.content() - unit_vector(q.size(), i));
  for (const auto& [m, c] : out) r.add(m, c);
  return r;
}

/// E_i^(n) u = E_i^n u / [n]!; the division is exact on the word lattice.
inline ModuleVector apply_E_divided(const QuiverDatum& q, const HighestWeight& lambda, std::size_t i, int n,
                                    const ModuleVector& u) {
  if (n < 0) throw std::invalid_argument("apply_E_divided with negative power");
  if (n > u.content()[i]) return ModuleVector(u.content() - unit_vector(q.size(), i, n));
  ModuleVector r = u;
  for (int k = 0; k < n; ++k) r = apply_E(q, lambda, i, r);
  return n > 1 ? r.divided(qfact(n)) : r;
}

/// K_i^{sign} u = v^{sign * <wt u, alpha_i^vee>} u.
inline ModuleVector apply_K(const QuiverDatum& q, const HighestWeight& lambda, std::size_t i, int sign,
                            const ModuleVector& u) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("apply_K sign must be +1 or -1");
  return u.scaled(LaurentPoly::monomial(sign * coroot_pairing(q, lambda, u.content(), i)));
}

/// Contravariant form by direct recursion, peeling the leftmost divided power
/// of the first argument: (F_i^(a) x, y) = v^{a^2} (x, K_i^{-a} E_i^(a) y).
inline LaurentPoly contravariant_form(const QuiverDatum& q, const HighestWeight& lambda, const ModuleVector& u,
                                      const ModuleVector& w) {
  if (u.content() != w.content()) return {};
  LaurentPoly total;
  for (const auto& [m, c] : u.terms()) {
    if (m.empty()) {
      auto it = w.terms().find(FlagMonomial{});
      if (it != w.terms().end()) total += c * it->second;
      continue;
    }
    const Slot head = m.slots().front();
    const FlagMonomial rest =
        FlagMonomial::from_normal_slots(std::vector<Slot>(m.slots().begin() + 1, m.slots().end()));
    ModuleVector y = apply_E_divided(q, lambda, head.vertex, head.mult, w);
    const int k = -head.mult * coroot_pairing(q, lambda, y.content(), head.vertex);
    const int shift = head.mult * head.mult + k;
    total += c * contravariant_form(q, lambda, ModuleVector(q.size(), rest), y).shifted(shift);
  }
  return total;
}

/// One weight space: the exhaustive spanning words, their Gram matrix under
/// the contravariant form, and a greedily chosen basis.
struct WeightSpaceModel {
  DimVector content;
  std::vector<FlagMonomial> spanning;
  std::map<FlagMonomial, std::size_t> index;
  PolyMatrix gram;
  std::vector<std::size_t> basis_index;
  std::size_t rank = 0;
  RatMatrix basis_gram_inverse;

  std::size_t index_of(const FlagMonomial& m) const {
    auto it = index.find(m);
    if (it == index.end()) throw std::out_of_range("word not in spanning set");
    return it->second;
  }
  std::vector<FlagMonomial> basis_words() const {
    std::vector<FlagMonomial> b;
    for (auto k : basis_index) b.push_back(spanning[k]);
    return b;
  }
};

struct ModuleOptions {
  int max_height = 6;
  std::size_t max_spanning = 2000;  // words per weight space
  unsigned threads = 0;  // 0: hardware concurrency
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// L(Lambda) truncated at a maximal height. All weight spaces up to that
/// height are built eagerly; the object is immutable afterwards apart from
/// an internal memo of image subspaces.
class HighestWeightModule {
 public:
  HighestWeightModule(QuiverDatum q, HighestWeight lambda, ModuleOptions opts = {})
      : q_(std::move(q)), lambda_(std::move(lambda)), opts_(opts), images_(std::make_unique<ImageMemo>()) {
    if (lambda_.d.size() != q_.size()) throw InputError("highest weight has the wrong number of entries");
    if (opts_.max_height < 0) throw InputError("max height must be non-negative");
    build();
  }

  const QuiverDatum& quiver() const noexcept { return q_; }
  const HighestWeight& lambda() const noexcept { return lambda_; }
  const ModuleOptions& options() const noexcept { return opts_; }
  std::size_t vertex_count() const noexcept { return q_.size(); }
  int max_height() const noexcept { return opts_.max_height; }

  /// Contents up to the maximal height, by height then lexicographically.
  const std::vector<DimVector>& contents() const noexcept { return order_; }

  bool has_space(const DimVector& nu) const { return spaces_.count(nu) != 0; }

  const WeightSpaceModel& weight_space(const DimVector& nu) const {
    if (nu.size() != q_.size() || !is_nonnegative(nu)) throw std::invalid_argument("invalid content");
    auto it = spaces_.find(nu);
    if (it == spaces_.end())
      throw ResourceCapError("content (" + content_label(nu) + ") is above the configured max height " +
                             std::to_string(opts_.max_height));
    return it->second;
  }

  ModuleVector highest() const { return ModuleVector::highest(q_.size()); }
  ModuleVector monomial(const FlagMonomial& m) const { return ModuleVector(q_.size(), m); }

  ModuleVector F(std::size_t i, int n, const ModuleVector& u) const { return apply_F(i, n, u); }
  ModuleVector E(std::size_t i, const ModuleVector& u) const { return apply_E(q_, lambda_, i, u); }
  ModuleVector E_divided(std::size_t i, int n, const ModuleVector& u) const {
    return apply_E_divided(q_, lambda_, i, n, u);
  }
  ModuleVector K(std::size_t i, int sign, const ModuleVector& u) const { return apply_K(q_, lambda_, i, sign, u); }
  int pairing_at(const DimVector& nu, std::size_t i) const { return coroot_pairing(q_, lambda_, nu, i); }

  /// (u, w) through the stored Gram matrix.
  LaurentPoly form(const ModuleVector& u, const ModuleVector& w) const {
    if (u.content() != w.content()) return {};
    const auto& ws = weight_space(u.content());
    LaurentPoly s;
    for (const auto& [a, ca] : u.terms()) {
      const auto& row = ws.gram[ws.index_of(a)];
      for (const auto& [b, cb] : w.terms()) {
        const auto& g = row[ws.index_of(b)];
        if (!g.is_zero()) s += ca * cb * g;
      }
    }
    return s;
  }

  /// Pairings of u with the basis words; an injective linear image of u.
  PolyVector pairing_vector(const ModuleVector& u) const {
    const auto& ws = weight_space(u.content());
    PolyVector p(ws.rank);
    for (const auto& [m, c] : u.terms()) {
      const std::size_t col = ws.index_of(m);
      for (std::size_t k = 0; k < ws.rank; ++k) {
        const auto& g = ws.gram[ws.basis_index[k]][col];
        if (!g.is_zero()) p[k] += c * g;
      }
    }
    return p;
  }

  bool is_zero(const ModuleVector& u) const {
    for (const auto& x : pairing_vector(u))
      if (!x.is_zero()) return false;
    return true;
  }
  bool equal(const ModuleVector& u, const ModuleVector& w) const {
    if (u.content() != w.content()) return u.has_no_terms() && w.has_no_terms();
    return is_zero(u - w);
  }

  /// Coordinates c with u = sum_t c_t (basis word t) v_Lambda in L(Lambda).
  RatVector coordinates(const ModuleVector& u) const {
    const auto& ws = weight_space(u.content());
    PolyVector p = pairing_vector(u);
    return mat_vec(ws.basis_gram_inverse, RatVector(p.begin(), p.end()));
  }

  /// Whether u lies in F_i^(r) L(Lambda).
  bool in_image_of_F(std::size_t i, int r, const ModuleVector& u) const {
    if (r <= 0) return true;
    if (u.content()[i] < r) return is_zero(u);
    const auto& ech = image_echelon(u.content(), i, r);
    return ech.contains(pairing_vector(u));
  }

  /// Largest r with u in F_i^(r) L(Lambda) (for u != 0).
  int string_depth(std::size_t i, const ModuleVector& u) const {
    int r = 0;
    while (r < u.content()[i] && in_image_of_F(i, r + 1, u)) ++r;
    return r;
  }

 private:
  struct ImageMemo {
    std::mutex mu;
    std::map<std::tuple<DimVector, std::size_t, int>, std::shared_ptr<const FractionFreeEchelon>> table;
  };

  const FractionFreeEchelon& image_echelon(const DimVector& nu, std::size_t i, int r) const {
    const auto key = std::make_tuple(nu, i, r);
    {
      std::lock_guard<std::mutex> lock(images_->mu);
      auto it = images_->table.find(key);
      if (it != images_->table.end()) return *it->second;
    }
    const auto& ws = weight_space(nu);
    auto ech = std::make_shared<FractionFreeEchelon>(ws.rank);
    for (const auto& m : ws.spanning) {
      if (m.empty() || m.slots().front().vertex != i || m.slots().front().mult < r) continue;
      if (ech->rank() == ws.rank) break;
      ech->insert(pairing_vector(ModuleVector(q_.size(), m)));
    }
    std::lock_guard<std::mutex> lock(images_->mu);
    auto [it, inserted] = images_->table.try_emplace(key, std::move(ech));
    return *it->second;
  }

  void build() {
    const std::size_t n = q_.size();
    const unsigned threads = resolve_threads(opts_.threads);
    for (int h = opts_.max_height; h >= 0; --h)
      for (const auto& nu : contents_of_height(n, h)) enumerate_words(nu, opts_.max_spanning);
    for (int h = 0; h <= opts_.max_height; ++h) {
      std::vector<DimVector> level = contents_of_height(n, h);
      std::vector<WeightSpaceModel> built(level.size());
      std::atomic<std::size_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mu;
      auto worker = [&] {
        for (;;) {
          const std::size_t k = next.fetch_add(1);
          if (k >= level.size()) return;
          try {
            built[k] = build_space(level[k]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      };
      const unsigned use = std::min<unsigned>(threads, static_cast<unsigned>(level.size()));
      if (use <= 1) {
        worker();
      } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < use; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
      }
      if (failure) std::rethrow_exception(failure);
      for (std::size_t k = 0; k < level.size(); ++k) {
        order_.push_back(level[k]);
        spaces_.emplace(level[k], std::move(built[k]));
      }
    }
  }

  WeightSpaceModel build_space(const DimVector& nu) const {
    const std::size_t n = q_.size();
    WeightSpaceModel ws;
    ws.content = nu;
    ws.spanning = enumerate_words(nu, opts_.max_spanning);
    for (std::size_t k = 0; k < ws.spanning.size(); ++k) ws.index.emplace(ws.spanning[k], k);
    const std::size_t count = ws.spanning.size();
    ws.gram.assign(count, PolyVector(count));

    if (height(nu) == 0) {
      ws.gram[0][0] = LaurentPoly(1);
    } else {
      // Rows grouped by their leading divided power F_i^(a).
      std::map<Slot, std::vector<std::size_t>> by_head;
      for (std::size_t s = 0; s < count; ++s) by_head[ws.spanning[s].slots().front()].push_back(s);
      for (const auto& [head, rows] : by_head) {
        const DimVector lower_nu = nu - unit_vector(n, head.vertex, head.mult);
        const auto& lower = spaces_.at(lower_nu);
        const int shift = head.mult * head.mult - head.mult * coroot_pairing(q_, lambda_, lower_nu, head.vertex);
        std::vector<std::size_t> rest_index;
        for (auto s : rows) {
          const auto& sl = ws.spanning[s].slots();
          rest_index.push_back(
              lower.index_of(FlagMonomial::from_normal_slots(std::vector<Slot>(sl.begin() + 1, sl.end()))));
        }
        for (std::size_t t = 0; t < count; ++t) {
          ModuleVector y = apply_E_divided(q_, lambda_, head.vertex, head.mult, ModuleVector(n, ws.spanning[t]));
          std::vector<std::pair<std::size_t, LaurentPoly>> ys;
          for (const auto& [m, c] : y.terms()) ys.emplace_back(lower.index_of(m), c.shifted(shift));
          for (std::size_t r = 0; r < rows.size(); ++r) {
            LaurentPoly g;
            const auto& low_row = lower.gram[rest_index[r]];
            for (const auto& [idx, c] : ys)
              if (!low_row[idx].is_zero()) g += c * low_row[idx];
            ws.gram[rows[r]][t] = std::move(g);
          }
        }
      }
    }

    // Columns: words F_i^(a) b with b a basis word one step below. They span
    // the weight space, so rows restricted to them detect linear dependence.
    std::vector<std::size_t> columns;
    if (height(nu) == 0) {
      columns.push_back(0);
    } else {
      std::vector<bool> used(count, false);
      for (std::size_t i = 0; i < n; ++i)
        for (int a = 1; a <= nu[i]; ++a) {
          const auto& lower = spaces_.at(nu - unit_vector(n, i, a));
          for (auto b : lower.basis_index) {
            auto p = mono_mul(FlagMonomial::single(i, a), lower.spanning[b]);
            used[ws.index_of(p.word)] = true;
          }
        }
      for (std::size_t k = 0; k < count; ++k)
        if (used[k]) columns.push_back(k);
    }
    FractionFreeEchelon ech(columns.size());
    for (std::size_t s = 0; s < count && !columns.empty(); ++s) {
      PolyVector row;
      row.reserve(columns.size());
      for (auto c : columns) row.push_back(ws.gram[s][c]);
      if (ech.insert(std::move(row))) ws.basis_index.push_back(s);
      if (ws.basis_index.size() == columns.size()) break;
    }
    ws.rank = ws.basis_index.size();

    RatMatrix g(ws.rank, RatVector(ws.rank));
    for (std::size_t a = 0; a < ws.rank; ++a)
      for (std::size_t b = 0; b < ws.rank; ++b) g[a][b] = ws.gram[ws.basis_index[a]][ws.basis_index[b]];
    ws.basis_gram_inverse = ws.rank ? rf_inverse(g) : RatMatrix{};
    return ws;
  }

  QuiverDatum q_;
  HighestWeight lambda_;
  ModuleOptions opts_;
  std::vector<DimVector> order_;
  std::map<DimVector, WeightSpaceModel> spaces_;
  std::unique_ptr<ImageMemo> images_;
};

}  // namespace qcb
