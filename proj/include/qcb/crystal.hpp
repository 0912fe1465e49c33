#pragma once

// String statistics, the arrows pi_{i,t}, the left graph, admissible paths
// and the monomial bases they index.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qcb/canonical.hpp"

namespace qcb {

class CrystalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A canonical basis element addressed by content and position.
struct NodeRef {
  DimVector content;
  std::size_t id = 0;
  auto operator<=>(const NodeRef&) const = default;
};

/// Sequence of (vertex, multiplicity) steps, outermost divided power first.
using AdmissiblePath = std::vector<Slot>;

/// Largest r with u in F_i^(r) L(Lambda).
inline int t_stat(const HighestWeightModule& mod, const ModuleVector& u, std::size_t i) {
  return mod.string_depth(i, u);
}

/// Coefficients of u in the canonical basis of its content.
inline RatVector cb_expansion(const CanonicalBasis& cb, const ModuleVector& u) {
  RatVector c;
  for (const auto& row : transition_matrix(cb.module(), cb.at(u.content()), {u})) c.push_back(row[0]);
  return c;
}

/// pi_{i,t}(b'): the unique summand of F_i^(t) b' with t_i = t, which must
/// carry coefficient 1 while every other summand has t_i > t and a
/// bar-invariant coefficient. nullopt when the leading summand is killed in
/// L(Lambda), including the case F_i^(t) b' = 0.
inline std::optional<std::size_t> pi_arrow(const CanonicalBasis& cb, std::size_t i, int t, const CBElement& parent) {
  const auto& mod = cb.module();
  if (parent.stats.at(i) != 0) throw CrystalError("pi_arrow needs a parent with t_i = 0");
  if (t <= 0) throw std::invalid_argument("pi_arrow needs t > 0");
  const ModuleVector image = mod.F(i, t, parent.vector);
  if (mod.is_zero(image)) return std::nullopt;
  const RatVector c = cb_expansion(cb, image);
  const auto& elems = cb.at(image.content());
  std::optional<std::size_t> found;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    const int tk = elems[k].stats[i];
    if (tk == t) {
      if (found) throw CrystalError("pi_arrow: two summands with t_i = t");
      if (c[k] != RatFunc(1)) throw CrystalError("pi_arrow: leading coefficient is " + c[k].to_string());
      found = k;
    } else if (tk < t) {
      throw CrystalError("pi_arrow: summand with t_i below t");
    } else if (bar(c[k]) != c[k]) {
      throw CrystalError("pi_arrow: coefficient " + c[k].to_string() + " is not bar-invariant");
    }
  }
  return found;
}

struct Arrow {
  NodeRef source;
  NodeRef target;
  std::size_t vertex = 0;
  int r = 0;
  auto operator<=>(const Arrow&) const = default;
};

/// Left graph: an arrow b -(i, t)-> b' whenever t = t_i(b) > 0 and pi_{i,t}(b') = b.
struct LeftGraph {
  std::vector<NodeRef> nodes;
  std::vector<Arrow> arrows;

  std::optional<Arrow> arrow_from(const NodeRef& src, std::size_t vertex) const {
    for (const auto& a : arrows)
      if (a.source == src && a.vertex == vertex) return a;
    return std::nullopt;
  }
};

/// All values of pi_{i,t}: key (i, t, parent) -> target at the higher content.
using PiTable = std::map<std::tuple<std::size_t, int, NodeRef>, NodeRef>;

inline PiTable compute_pi_table(const CanonicalBasis& cb) {
  const auto& mod = cb.module();
  const std::size_t n = mod.vertex_count();
  PiTable table;
  for (const auto& [nu, elems] : cb.all())
    for (const auto& b : elems)
      for (std::size_t i = 0; i < n; ++i) {
        if (b.stats[i] != 0) continue;
        for (int t = 1; height(nu) + t <= mod.max_height(); ++t) {
          auto target = pi_arrow(cb, i, t, b);
          if (!target) continue;
          table.emplace(std::make_tuple(i, t, NodeRef{nu, b.id}),
                        NodeRef{nu + unit_vector(n, i, t), *target});
        }
      }
  return table;
}

inline LeftGraph build_left_graph(const CanonicalBasis& cb, const PiTable& pi) {
  const std::size_t n = cb.module().vertex_count();
  LeftGraph g;
  std::map<std::tuple<std::size_t, int, NodeRef>, NodeRef> inverse;
  for (const auto& [key, target] : pi) {
    const auto& [i, t, parent] = key;
    auto [it, inserted] = inverse.emplace(std::make_tuple(i, t, target), parent);
    if (!inserted) throw CrystalError("pi is not injective");
  }
  for (const auto& [nu, elems] : cb.all())
    for (const auto& b : elems) {
      const NodeRef self{nu, b.id};
      g.nodes.push_back(self);
      for (std::size_t i = 0; i < n; ++i) {
        const int t = b.stats[i];
        if (t == 0) continue;
        auto it = inverse.find(std::make_tuple(i, t, self));
        if (it == inverse.end())
          throw CrystalError("no preimage under pi_{" + std::to_string(i) + "," + std::to_string(t) +
                             "} for element " + std::to_string(b.id) + " at (" + content_label(nu) + ")");
        g.arrows.push_back({self, it->second, i, t});
      }
    }
  std::sort(g.nodes.begin(), g.nodes.end(), [](const NodeRef& a, const NodeRef& b) {
    return std::make_tuple(height(a.content), a.content, a.id) < std::make_tuple(height(b.content), b.content, b.id);
  });
  std::sort(g.arrows.begin(), g.arrows.end(), [](const Arrow& a, const Arrow& b) {
    return std::make_tuple(height(a.source.content), a.source.content, a.source.id, a.vertex) <
           std::make_tuple(height(b.source.content), b.source.content, b.source.id, b.vertex);
  });
  return g;
}

inline LeftGraph build_left_graph(const CanonicalBasis& cb) { return build_left_graph(cb, compute_pi_table(cb)); }

/// Position of every vertex in `order` (order[k] is the k-th vertex).
inline std::vector<std::size_t> order_rank(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> rank(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank.at(order[k]) = k;
  return rank;
}

/// s-bar(b): take the last vertex in `order` with t > 0, record (vertex, t),
/// follow its arrow and continue; the highest element gives the empty path.
inline AdmissiblePath sbar(const CanonicalBasis& cb, const LeftGraph& g, const NodeRef& b,
                           const std::vector<std::size_t>& order) {
  AdmissiblePath path;
  NodeRef cur = b;
  while (height(cur.content) > 0) {
    const auto& e = cb.element(cur.content, cur.id);
    std::optional<std::size_t> pick;
    for (std::size_t k = order.size(); k-- > 0;)
      if (e.stats[order[k]] > 0) {
        pick = order[k];
        break;
      }
    if (!pick) throw CrystalError("element at (" + content_label(cur.content) + ") has no positive string statistic");
    auto a = g.arrow_from(cur, *pick);
    if (!a) throw CrystalError("missing arrow in the left graph");
    path.push_back({*pick, a->r});
    cur = a->target;
  }
  return path;
}

/// p before q: first differing step decides, comparing (order position, multiplicity).
inline bool path_order_lt(const AdmissiblePath& p, const AdmissiblePath& q, const std::vector<std::size_t>& order) {
  const auto rank = order_rank(order);
  const std::size_t len = std::min(p.size(), q.size());
  for (std::size_t k = 0; k < len; ++k) {
    const auto a = std::make_pair(rank[p[k].vertex], p[k].mult);
    const auto b = std::make_pair(rank[q[k].vertex], q[k].mult);
    if (a != b) return a < b;
  }
  return p.size() < q.size();
}

/// Replays a path through the pi maps starting from the highest element.
inline std::optional<NodeRef> replay_path(const CanonicalBasis& cb, const PiTable& pi, const AdmissiblePath& path) {
  NodeRef cur{DimVector(cb.module().vertex_count(), 0), 0};
  for (std::size_t k = path.size(); k-- > 0;) {
    auto it = pi.find(std::make_tuple(path[k].vertex, path[k].mult, cur));
    if (it == pi.end()) return std::nullopt;
    cur = it->second;
  }
  return cur;
}

/// F_{i_1}^(m_1) ... F_{i_k}^(m_k) v_Lambda.
inline ModuleVector path_monomial(const HighestWeightModule& mod, const AdmissiblePath& path) {
  std::vector<Slot> raw(path.begin(), path.end());
  auto s = normalize_slots(raw);
  return mod.monomial(s.word).scaled(s.coeff);
}

/// One content of the monomial basis M: elements sorted by their paths.
struct MonomialBasis {
  DimVector content;
  std::vector<std::size_t> cb_ids;  // canonical basis element behind each entry
  std::vector<AdmissiblePath> paths;
  std::vector<ModuleVector> vectors;
  RatMatrix transition;  // row k: M_k expanded in the canonical basis, both in the sorted order
};

inline MonomialBasis monomial_basis_M(const CanonicalBasis& cb, const LeftGraph& g, const DimVector& nu,
                                      const std::vector<std::size_t>& order) {
  const auto& mod = cb.module();
  const auto& elems = cb.at(nu);
  MonomialBasis mb;
  mb.content = nu;
  std::vector<std::pair<AdmissiblePath, std::size_t>> entries;
  for (const auto& e : elems) entries.emplace_back(sbar(cb, g, {nu, e.id}, order), e.id);
  std::sort(entries.begin(), entries.end(),
            [&](const auto& a, const auto& b) { return path_order_lt(a.first, b.first, order); });
  for (std::size_t k = 0; k + 1 < entries.size(); ++k)
    if (!path_order_lt(entries[k].first, entries[k + 1].first, order))
      throw CrystalError("s-bar is not injective at (" + content_label(nu) + ")");
  std::vector<CBElement> sorted_cb;
  for (const auto& [path, id] : entries) {
    mb.paths.push_back(path);
    mb.cb_ids.push_back(id);
    mb.vectors.push_back(path_monomial(mod, path));
    sorted_cb.push_back(elems[id]);
  }
  RatMatrix columns = transition_matrix(mod, sorted_cb, mb.vectors);
  if (rf_rank(columns) != entries.size()) throw CrystalError("monomial vectors are not a basis at (" + content_label(nu) + ")");
  mb.transition.assign(entries.size(), RatVector(entries.size()));
  for (std::size_t r = 0; r < entries.size(); ++r)
    for (std::size_t c = 0; c < entries.size(); ++c) mb.transition[r][c] = columns[c][r];
  return mb;
}

/// Row k expands M_k as b_k plus elements later in the order.
inline bool is_unitriangular(const RatMatrix& m) {
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) {
      if (r == c && m[r][c] != RatFunc(1)) return false;
      if (c < r && !m[r][c].is_zero()) return false;
    }
  return true;
}

}  // namespace qcb
