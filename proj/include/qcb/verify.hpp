#pragma once

// Invariant suites over a computed module, canonical basis and left graph.
// Every suite counts its checks and keeps the first few counterexamples.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qcb/crystal.hpp"
#include "qcb/freudenthal.hpp"

namespace qcb {

struct SuiteResult {
  explicit SuiteResult(std::string suite) : name(std::move(suite)) {}

  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;

  bool passed() const noexcept { return failures == 0; }

  void record(bool ok, const std::function<std::string()>& describe) {
    ++checks;
    if (ok) return;
    ++failures;
    if (counterexamples.size() < 5) counterexamples.push_back(describe());
  }
};

/// E_i acting on the module; replaceable so that suites can be exercised
/// against a deliberately broken action.
using EAction = std::function<ModuleVector(std::size_t, const ModuleVector&)>;

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"relations",     "serre", "contravariance", "derivation", "coproduct",
                                              "triangularity", "bar",   "orthogonality",  "crystal",    "dims"};
  return names;
}

/// x . u for an element of U^- given as a combination of words.
inline ModuleVector act(const HighestWeightModule& mod, const UMinusElement& x, const ModuleVector& u) {
  ModuleVector out(u.content() + x.content());
  for (const auto& [m, c] : x.terms()) {
    ModuleVector w = u;
    const auto& s = m.slots();
    for (std::size_t k = s.size(); k-- > 0;) w = mod.F(s[k].vertex, s[k].mult, w);
    out += w.scaled(c);
  }
  return out;
}

namespace detail {

inline std::string word_label(const HighestWeightModule& mod, const FlagMonomial& m) {
  return m.slots().empty() ? "()" : m.to_string(mod.quiver());
}

inline bool fits(const HighestWeightModule& mod, const DimVector& nu) {
  return is_nonnegative(nu) && height(nu) <= mod.max_height();
}

// Equality in L(Lambda); vectors of negative content are zero by definition.
inline bool same(const HighestWeightModule& mod, const ModuleVector& a, const ModuleVector& b) {
  if (a.content() != b.content()) return false;
  if (!is_nonnegative(a.content())) return a.has_no_terms() && b.has_no_terms();
  return mod.equal(a, b);
}

inline LaurentPoly small_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> exp(-3, 3);
  std::uniform_int_distribution<long> coeff(-3, 3);
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<LaurentPoly::Term> t;
  for (int k = count(rng); k > 0; --k) t.emplace_back(exp(rng), mpz_class(coeff(rng)));
  return LaurentPoly::from_terms(std::move(t));
}

inline ModuleVector random_vector(const HighestWeightModule& mod, const DimVector& nu, std::mt19937_64& rng) {
  const auto& words = mod.weight_space(nu).spanning;
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  ModuleVector u(nu);
  for (int k = 0; k < 3; ++k) u.add(words[pick(rng)], small_poly(rng));
  return u;
}

}  // namespace detail

/// Commutation relations between E, F and K on every basis word.
inline SuiteResult suite_relations(const HighestWeightModule& mod) {
  SuiteResult r{"relations"};
  const auto& q = mod.quiver();
  const std::size_t n = mod.vertex_count();
  for (const auto& nu : mod.contents()) {
    const bool room = height(nu) < mod.max_height();
    for (const auto& m : mod.weight_space(nu).basis_words()) {
      const ModuleVector u = mod.monomial(m);
      const auto where = [&](const std::string& what) {
        return what + " on " + detail::word_label(mod, m);
      };
      for (std::size_t i = 0; i < n; ++i) {
        const ModuleVector eu = mod.E(i, u);
        for (std::size_t j = 0; j < n && room; ++j) {
          const ModuleVector fju = mod.F(j, 1, u);
          if (i != j) {
            r.record(detail::same(mod, mod.E(i, fju), mod.F(j, 1, eu)),
                     [&] { return where("E" + q.name(i) + " F" + q.name(j) + " = F" + q.name(j) + " E" + q.name(i)); });
          } else {
            const ModuleVector lhs = mod.E(i, fju) - mod.F(i, 1, eu);
            r.record(detail::same(mod, lhs, u.scaled(qint(mod.pairing_at(nu, i)))),
                     [&] { return where("[E" + q.name(i) + ", F" + q.name(i) + "]"); });
          }
          r.record(detail::same(mod, mod.F(i, 1, mod.K(j, 1, u)),
                             mod.K(j, 1, mod.F(i, 1, u)).scaled(LaurentPoly::monomial(q.cartan(i, j)))),
                   [&] { return where("F" + q.name(i) + " K" + q.name(j)); });
        }
        for (std::size_t j = 0; j < n; ++j)
          r.record(detail::same(mod, mod.E(i, mod.K(j, 1, u)),
                             mod.K(j, 1, eu).scaled(LaurentPoly::monomial(-q.cartan(j, i)))),
                   [&] { return where("E" + q.name(i) + " K" + q.name(j)); });
      }
    }
  }
  return r;
}

/// Both Serre elements act by zero.
inline SuiteResult suite_serre(const HighestWeightModule& mod) {
  SuiteResult r{"serre"};
  const auto& q = mod.quiver();
  const std::size_t n = mod.vertex_count();
  for (const auto& nu : mod.contents())
    for (const auto& m : mod.weight_space(nu).basis_words()) {
      const ModuleVector u = mod.monomial(m);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          const int top = 1 + q.a(i, j);
          const auto label = q.name(i) + "," + q.name(j) + " on " + detail::word_label(mod, m);
          if (detail::fits(mod, nu + unit_vector(n, i, top) + unit_vector(n, j))) {
            const ModuleVector s = act(mod, serre_element(q, i, j), u);
            r.record(mod.is_zero(s), [&] { return "F-Serre " + label; });
          }
          if (is_nonnegative(nu - unit_vector(n, i, top) - unit_vector(n, j))) {
            ModuleVector s(nu - unit_vector(n, i, top) - unit_vector(n, j));
            for (int k = 0; k <= top; ++k) {
              ModuleVector w = mod.E_divided(i, top - k, u);
              w = mod.E(j, w);
              w = mod.E_divided(i, k, w);
              if (k % 2) s -= w;
              else s += w;
            }
            r.record(mod.is_zero(s), [&] { return "E-Serre " + label; });
          }
        }
    }
  return r;
}

/// (F_i u, w) = v (u, K_i^-1 E_i w) on at least `trials` random pairs.
inline SuiteResult suite_contravariance(const HighestWeightModule& mod, std::size_t trials = 100,
                                        std::uint64_t seed = 1) {
  SuiteResult r{"contravariance"};
  const std::size_t n = mod.vertex_count();
  std::vector<std::pair<DimVector, std::size_t>> slots;
  for (const auto& nu : mod.contents())
    for (std::size_t i = 0; i < n; ++i)
      if (detail::fits(mod, nu + unit_vector(n, i))) slots.emplace_back(nu, i);
  if (slots.empty()) return r;
  std::mt19937_64 rng(seed);
  const std::size_t total = std::max(trials, slots.size());
  for (std::size_t k = 0; k < total; ++k) {
    const auto& [nu, i] = slots[k % slots.size()];
    const ModuleVector u = detail::random_vector(mod, nu, rng);
    const ModuleVector w = detail::random_vector(mod, nu + unit_vector(n, i), rng);
    const LaurentPoly lhs = mod.form(mod.F(i, 1, u), w);
    const LaurentPoly rhs = mod.form(u, mod.K(i, -1, mod.E(i, w))).shifted(1);
    r.record(lhs == rhs, [&] { return "content (" + content_label(nu) + "), vertex " + mod.quiver().name(i); });
  }
  return r;
}

/// (v^-1 - v) E_i(x v) = v^{(i, |x| - i) - d_i} _ir(x) v - v^{d_i} r_i(x) v
/// for every word x up to height `max_word_height`.
inline SuiteResult suite_derivation(const HighestWeightModule& mod, const EAction& e_action = {},
                                    int max_word_height = 4) {
  SuiteResult r{"derivation"};
  const auto& q = mod.quiver();
  const std::size_t n = mod.vertex_count();
  const EAction e = e_action ? e_action : EAction([&mod](std::size_t i, const ModuleVector& u) { return mod.E(i, u); });
  const LaurentPoly factor = LaurentPoly::monomial(-1) - LaurentPoly::monomial(1);
  for (const auto& nu : mod.contents()) {
    if (height(nu) > max_word_height) continue;
    for (const auto& x : mod.weight_space(nu).spanning)
      for (std::size_t i = 0; i < n; ++i) {
        const ModuleVector ex = e(i, mod.monomial(x));
        RatVector lhs;
        if (nu[i] > 0) {
          lhs = mod.coordinates(ex);
        } else {
          r.record(ex.has_no_terms(), [&] { return "x = " + detail::word_label(mod, x) + ", i = " + q.name(i); });
          continue;
        }
        const UMinusElement xe(n, x);
        const int d = mod.lambda()[i];
        const ModuleVector left_part = act(mod, ibar_r(q, xe, i), mod.highest());
        const ModuleVector right_part = act(mod, rbar(q, xe, i), mod.highest());
        const int shift = q.form_simple(i, nu - unit_vector(n, i)) - d;
        const ModuleVector rhs = left_part.scaled(LaurentPoly::monomial(shift)) - right_part.scaled(LaurentPoly::monomial(d));
        const RatVector rc = mod.coordinates(rhs);
        bool ok = rc.size() == lhs.size();
        for (std::size_t k = 0; ok && k < rc.size(); ++k) ok = rc[k] == lhs[k] * RatFunc(factor);
        r.record(ok, [&] { return "x = " + detail::word_label(mod, x) + ", i = " + q.name(i); });
      }
  }
  return r;
}

/// Restricting in two steps agrees in both bracketings, on all words up to height 4.
inline SuiteResult suite_coproduct(const HighestWeightModule& mod, int max_word_height = 4) {
  SuiteResult r{"coproduct"};
  const auto& q = mod.quiver();
  for (const auto& nu : mod.contents()) {
    if (height(nu) > max_word_height) continue;
    std::vector<DimVector> below;
    for (const auto& a : mod.contents())
      if (weight_leq(a, nu)) below.push_back(a);
    for (const auto& m : enumerate_words(nu))
      for (const auto& a : below)
        for (const auto& b : below) {
          if (!weight_leq(a + b, nu)) continue;
          const DimVector c = nu - a - b;
          r.record(iterated_restriction(q, m, a, b, c, true) == iterated_restriction(q, m, a, b, c, false), [&] {
            return detail::word_label(mod, m) + " split (" + content_label(a) + "|" + content_label(b) + "|" +
                   content_label(c) + ")";
          });
        }
  }
  return r;
}

/// Transition from the canonical basis to M is unitriangular, generically and at v = 1.
inline SuiteResult suite_triangularity(const CanonicalBasis& cb, const LeftGraph& g, const std::vector<std::size_t>& order) {
  SuiteResult r{"triangularity"};
  for (const auto& [nu, elems] : cb.all()) {
    if (elems.empty()) continue;
    try {
      const auto mb = monomial_basis_M(cb, g, nu, order);
      r.record(is_unitriangular(mb.transition), [&] { return "generic v at (" + content_label(nu) + ")"; });
      const auto at_one = specialize_v1(mb.transition);
      bool ok = true;
      for (std::size_t a = 0; a < at_one.size(); ++a)
        for (std::size_t b = 0; b < at_one.size(); ++b)
          if ((a == b && at_one[a][b] != 1) || (b < a && at_one[a][b] != 0)) ok = false;
      r.record(ok, [&] { return "v = 1 at (" + content_label(nu) + ")"; });
    } catch (const std::exception& e) {
      r.record(false, [&] { return std::string(e.what()); });
    }
  }
  return r;
}

inline SuiteResult suite_bar(const CanonicalBasis& cb) {
  SuiteResult r{"bar"};
  for (const auto& [nu, elems] : cb.all())
    for (const auto& b : elems)
      r.record(verify_bar_invariant(cb.module(), b),
               [&] { return "element " + std::to_string(b.id) + " at (" + content_label(nu) + ")"; });
  return r;
}

inline SuiteResult suite_orthogonality(const CanonicalBasis& cb) {
  SuiteResult r{"orthogonality"};
  const auto& mod = cb.module();
  for (const auto& [nu, elems] : cb.all())
    for (const auto& a : elems)
      for (const auto& b : elems) {
        const LaurentPoly p = mod.form(a.vector, b.vector);
        const bool ok = a.id == b.id ? is_unit_mod_negative(p) : in_negative_part(p);
        r.record(ok, [&] {
          return "(" + std::to_string(a.id) + ", " + std::to_string(b.id) + ") at (" + content_label(nu) +
                 ") = " + p.to_string();
        });
      }
  return r;
}

/// pi_{i,t} is a bijection (double counting), s-bar is injective and paths replay.
inline SuiteResult suite_crystal(const CanonicalBasis& cb, const PiTable& pi, const LeftGraph& g,
                                 const std::vector<std::size_t>& order) {
  SuiteResult r{"crystal"};
  const auto& q = cb.module().quiver();
  const std::size_t n = q.size();
  std::map<std::tuple<std::size_t, int, DimVector>, std::set<std::size_t>> hit;
  std::map<std::tuple<std::size_t, int, DimVector>, std::size_t> sources;
  for (const auto& [key, target] : pi) {
    const auto k = std::make_tuple(std::get<0>(key), std::get<1>(key), target.content);
    hit[k].insert(target.id);
    ++sources[k];
  }
  std::map<std::tuple<std::size_t, int, DimVector>, std::size_t> with_stat;
  for (const auto& [nu, elems] : cb.all())
    for (const auto& b : elems)
      for (std::size_t i = 0; i < n; ++i)
        if (b.stats[i] > 0) ++with_stat[{i, b.stats[i], nu}];
  std::set<std::tuple<std::size_t, int, DimVector>> keys;
  for (const auto& [k, c] : with_stat) keys.insert(k);
  for (const auto& [k, c] : sources) keys.insert(k);
  for (const auto& k : keys) {
    const std::size_t targets = with_stat.count(k) ? with_stat.at(k) : 0;
    const std::size_t from = sources.count(k) ? sources.at(k) : 0;
    const std::size_t images = hit.count(k) ? hit.at(k).size() : 0;
    r.record(from == targets && images == targets, [&] {
      return "pi_{" + q.name(std::get<0>(k)) + "," + std::to_string(std::get<1>(k)) + "} into (" +
             content_label(std::get<2>(k)) + "): " + std::to_string(from) + " sources, " + std::to_string(images) +
             " images, " + std::to_string(targets) + " elements";
    });
  }
  for (const auto& [nu, elems] : cb.all()) {
    std::set<AdmissiblePath> seen;
    for (const auto& b : elems) {
      const NodeRef self{nu, b.id};
      try {
        const AdmissiblePath p = sbar(cb, g, self, order);
        r.record(seen.insert(p).second, [&] { return "s-bar collision at (" + content_label(nu) + ")"; });
        const auto back = replay_path(cb, pi, p);
        r.record(back && *back == self,
                 [&] { return "replay of element " + std::to_string(b.id) + " at (" + content_label(nu) + ")"; });
      } catch (const std::exception& e) {
        r.record(false, [&] { return std::string(e.what()); });
      }
    }
  }
  return r;
}

/// Gram rank equals the Freudenthal multiplicity at every content.
inline SuiteResult suite_dims(const HighestWeightModule& mod) {
  SuiteResult r{"dims"};
  FreudenthalTable table(mod.quiver(), mod.lambda(), mod.max_height());
  for (const auto& nu : mod.contents()) {
    const std::size_t rank = mod.weight_space(nu).rank;
    const int expect = table.multiplicity(nu);
    r.record(static_cast<int>(rank) == expect, [&] {
      return "(" + content_label(nu) + "): rank " + std::to_string(rank) + ", Freudenthal " + std::to_string(expect);
    });
  }
  return r;
}

/// Runs the named suites in the order of suite_names(). The canonical basis
/// and left graph are built only when a suite needs them.
inline std::vector<SuiteResult> run_suites(const HighestWeightModule& mod, const std::vector<std::string>& selected,
                                           const std::vector<std::size_t>& order, const EAction& e_action = {}) {
  for (const auto& s : selected)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw InputError("unknown suite '" + s + "'");
  auto wants = [&](const std::string& s) { return std::find(selected.begin(), selected.end(), s) != selected.end(); };
  std::optional<CanonicalBasis> cb;
  std::optional<PiTable> pi;
  std::optional<LeftGraph> graph;
  auto need_cb = [&]() -> const CanonicalBasis& {
    if (!cb) cb = compute_canonical_basis(mod);
    return *cb;
  };
  auto need_graph = [&]() -> const LeftGraph& {
    if (!graph) {
      pi = compute_pi_table(need_cb());
      graph = build_left_graph(*cb, *pi);
    }
    return *graph;
  };
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) {
    if (!wants(name)) continue;
    if (name == "relations") out.push_back(suite_relations(mod));
    else if (name == "serre") out.push_back(suite_serre(mod));
    else if (name == "contravariance") out.push_back(suite_contravariance(mod));
    else if (name == "derivation") out.push_back(suite_derivation(mod, e_action));
    else if (name == "coproduct") out.push_back(suite_coproduct(mod));
    else if (name == "triangularity") out.push_back(suite_triangularity(need_cb(), need_graph(), order));
    else if (name == "bar") out.push_back(suite_bar(need_cb()));
    else if (name == "orthogonality") out.push_back(suite_orthogonality(need_cb()));
    else if (name == "crystal") {
      const auto& g = need_graph();
      out.push_back(suite_crystal(*cb, *pi, g, order));
    } else if (name == "dims") out.push_back(suite_dims(mod));
  }
  return out;
}

}  // namespace qcb
