#pragma once

// Canonical basis of L(Lambda): seeded by divided powers applied to lower
// canonical basis elements and cleaned by bar-invariant orthogonalization.

#include <atomic>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qcb/hwmodule.hpp"
#include "qcb/linalg.hpp"

namespace qcb {

/// A canonical basis computation contradicted one of its structural checks.
class CanonicalBasisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The seed that produced an element: F_vertex^(t) applied to element
/// `parent` of content (content - t * vertex).
struct Provenance {
  std::size_t vertex = 0;
  int t = 0;
  std::size_t parent = 0;
};

struct CBElement {
  std::size_t id = 0;  // position within its content
  ModuleVector vector{DimVector{}};
  RatVector coords;
  PolyVector pairing;
  LaurentPoly self_pairing;
  std::vector<int> stats;  // t_i for every vertex
  std::optional<Provenance> provenance;

  const DimVector& content() const noexcept { return vector.content(); }
};

/// Canonical basis elements per content, up to the module's maximal height.
class CanonicalBasis {
 public:
  CanonicalBasis() = default;
  CanonicalBasis(const HighestWeightModule* mod, std::vector<std::size_t> schedule)
      : module_(mod), schedule_(std::move(schedule)) {}

  const HighestWeightModule& module() const { return *module_; }
  const std::vector<std::size_t>& schedule() const noexcept { return schedule_; }
  const std::vector<CBElement>& at(const DimVector& nu) const {
    auto it = elements_.find(nu);
    if (it == elements_.end()) throw std::out_of_range("no canonical basis at (" + content_label(nu) + ")");
    return it->second;
  }
  const CBElement& element(const DimVector& nu, std::size_t id) const { return at(nu).at(id); }
  bool has(const DimVector& nu) const { return elements_.count(nu) != 0; }
  std::size_t total_count() const {
    std::size_t s = 0;
    for (const auto& [nu, v] : elements_) s += v.size();
    return s;
  }
  const std::map<DimVector, std::vector<CBElement>>& all() const noexcept { return elements_; }

  void set(const DimVector& nu, std::vector<CBElement> elems) { elements_[nu] = std::move(elems); }

 private:
  const HighestWeightModule* module_ = nullptr;
  std::vector<std::size_t> schedule_;
  std::map<DimVector, std::vector<CBElement>> elements_;
};

/// Whether bar fixes b in L(Lambda): the basis words are bar-fixed, so bar
/// acts on coordinates coefficient-wise.
inline bool verify_bar_invariant(const HighestWeightModule& mod, const ModuleVector& u) {
  const RatVector c = mod.coordinates(u);
  const RatVector cb = mod.coordinates(u.bar_image());
  for (std::size_t k = 0; k < c.size(); ++k)
    if (bar(c[k]) != c[k] || cb[k] != c[k]) return false;
  return true;
}

inline bool verify_bar_invariant(const HighestWeightModule& mod, const CBElement& b) {
  return verify_bar_invariant(mod, b.vector);
}

namespace detail {

inline std::vector<int> string_stats(const HighestWeightModule& mod, const ModuleVector& u) {
  std::vector<int> t(mod.vertex_count());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = mod.string_depth(i, u);
  return t;
}

// Max degree of the non-negative parts of the pairings, or nullopt when all
// pairings already lie in v^-1 Z[v^-1].
inline std::optional<int> offending_degree(const std::vector<LaurentPoly>& pairings) {
  std::optional<int> worst;
  for (const auto& p : pairings) {
    if (in_negative_part(p)) continue;
    const int d = p.max_degree();
    if (!worst || d > *worst) worst = d;
  }
  return worst;
}

inline std::vector<CBElement> compute_cb_at(const HighestWeightModule& mod, const CanonicalBasis& lower,
                                            const DimVector& nu, const std::vector<std::size_t>& schedule) {
  const std::size_t n = mod.vertex_count();
  const auto& ws = mod.weight_space(nu);
  std::vector<CBElement> accepted;
  auto finish = [&](ModuleVector a, std::optional<Provenance> prov) {
    CBElement e;
    e.id = accepted.size();
    e.pairing = mod.pairing_vector(a);
    e.coords = mod.coordinates(a);
    e.self_pairing = mod.form(a, a);
    e.provenance = prov;
    e.vector = std::move(a);
    accepted.push_back(std::move(e));
  };

  if (height(nu) == 0) {
    finish(mod.highest(), std::nullopt);
  } else {
    for (std::size_t i : schedule) {
      for (int t = nu[i]; t >= 1 && accepted.size() < ws.rank; --t) {
        const DimVector below = nu - unit_vector(n, i, t);
        for (const auto& parent : lower.at(below)) {
          if (accepted.size() == ws.rank) break;
          if (parent.stats[i] != 0) continue;
          ModuleVector a = mod.F(i, t, parent.vector);
          std::optional<int> last;
          for (;;) {
            std::vector<LaurentPoly> pairings;
            for (const auto& b : accepted) pairings.push_back(mod.form(a, b.vector));
            const auto worst = offending_degree(pairings);
            if (!worst) break;
            if (last && *worst >= *last)
              throw CanonicalBasisError("orthogonalization stalled at (" + content_label(nu) + ")");
            last = worst;
            for (const auto& b : accepted) {
              const LaurentPoly p = mod.form(a, b.vector);
              if (in_negative_part(p)) continue;
              a -= b.vector.scaled(sym_truncate(p));
            }
          }
          if (mod.is_zero(a)) continue;
          if (!is_unit_mod_negative(mod.form(a, a)))
            throw CanonicalBasisError("candidate at (" + content_label(nu) + ") is not almost orthonormal: (A, A) = " +
                                      mod.form(a, a).to_string());
          finish(std::move(a), Provenance{i, t, parent.id});
        }
      }
    }
  }
  if (accepted.size() != ws.rank)
    throw CanonicalBasisError("found " + std::to_string(accepted.size()) + " canonical basis elements at (" +
                              content_label(nu) + ") but the weight space has dimension " + std::to_string(ws.rank));
  for (auto& e : accepted) e.stats = string_stats(mod, e.vector);
  return accepted;
}

}  // namespace detail

inline std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> o(n);
  std::iota(o.begin(), o.end(), 0);
  return o;
}

/// Canonical basis of every weight space of the module. `schedule` is the
/// vertex order used for seeding (declaration order when empty).
inline CanonicalBasis compute_canonical_basis(const HighestWeightModule& mod, std::vector<std::size_t> schedule = {}) {
  if (schedule.empty()) schedule = identity_order(mod.vertex_count());
  CanonicalBasis cb(&mod, schedule);
  const unsigned threads = resolve_threads(mod.options().threads);
  for (int h = 0; h <= mod.max_height(); ++h) {
    std::vector<DimVector> level;
    for (const auto& nu : mod.contents())
      if (height(nu) == h) level.push_back(nu);
    std::vector<std::vector<CBElement>> built(level.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= level.size()) return;
        try {
          built[k] = detail::compute_cb_at(mod, cb, level[k], schedule);
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
    for (std::size_t k = 0; k < level.size(); ++k) cb.set(level[k], std::move(built[k]));
  }
  return cb;
}

/// Column t holds the coordinates of vectors[t] in the canonical basis `cb`
/// (all of one content).
inline RatMatrix transition_matrix(const HighestWeightModule& mod, const std::vector<CBElement>& cb,
                                   const std::vector<ModuleVector>& vectors) {
  const std::size_t r = cb.empty() ? 0 : cb.front().coords.size();
  RatMatrix a(r, RatVector(cb.size()));
  for (std::size_t j = 0; j < cb.size(); ++j)
    for (std::size_t k = 0; k < r; ++k) a[k][j] = cb[j].coords[k];
  RatMatrix out(cb.size(), RatVector(vectors.size()));
  for (std::size_t t = 0; t < vectors.size(); ++t) {
    auto x = rf_solve(a, mod.coordinates(vectors[t]));
    if (!x) throw CanonicalBasisError("vector is not in the span of the canonical basis");
    for (std::size_t j = 0; j < cb.size(); ++j) out[j][t] = (*x)[j];
  }
  return out;
}

inline mpz_class specialize_v1(const LaurentPoly& p) { return p.eval_at_one(); }
inline mpq_class specialize_v1(const RatFunc& r) { return r.eval_at_one(); }

inline std::vector<std::vector<mpq_class>> specialize_v1(const RatMatrix& m) {
  std::vector<std::vector<mpq_class>> out;
  for (const auto& row : m) {
    std::vector<mpq_class> r;
    for (const auto& x : row) r.push_back(x.eval_at_one());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qcb
