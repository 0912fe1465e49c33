#pragma once

// Symmetric Cartan data from a loop-free quiver, dominant weights and
// dimension vectors.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qcb {

/// Malformed user input (quiver files, vertex names, flags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension vector nu in N[I], indexed by vertex position.
using DimVector = std::vector<int>;

inline int height(const DimVector& nu) { return std::accumulate(nu.begin(), nu.end(), 0); }

inline bool weight_leq(const DimVector& a, const DimVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("weight_leq: size mismatch");
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

inline bool is_nonnegative(const DimVector& nu) {
  return std::all_of(nu.begin(), nu.end(), [](int x) { return x >= 0; });
}

inline DimVector unit_vector(std::size_t n, std::size_t i, int mult = 1) {
  DimVector e(n, 0);
  e[i] = mult;
  return e;
}

inline DimVector operator+(DimVector a, const DimVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}
inline DimVector operator-(DimVector a, const DimVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}

/// All dimension vectors of n components with height exactly h, in
/// lexicographic order of the component list.
inline std::vector<DimVector> contents_of_height(std::size_t n, int h) {
  std::vector<DimVector> out;
  DimVector cur(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == n) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int x = left; x >= 0; --x) {
      cur[pos] = x;
      self(self, pos + 1, left - x);
    }
  };
  if (n == 0) {
    if (h == 0) out.push_back(cur);
    return out;
  }
  rec(rec, 0, h);
  std::sort(out.begin(), out.end());
  return out;
}

/// Loop-free quiver: vertices in declaration order, arrows (tail, head) as
/// vertex indices. Repeated arrows encode a_ij > 1.
class QuiverDatum {
 public:
  QuiverDatum() = default;
  QuiverDatum(std::vector<std::string> vertices, std::vector<std::pair<std::size_t, std::size_t>> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    const std::size_t n = vertices_.size();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = k + 1; l < n; ++l)
        if (vertices_[k] == vertices_[l]) throw InputError("duplicate vertex id '" + vertices_[k] + "'");
    adjacency_.assign(n, std::vector<int>(n, 0));
    for (const auto& [s, t] : arrows_) {
      if (s >= n || t >= n) throw InputError("arrow refers to an unknown vertex");
      if (s == t) throw InputError("loops are not allowed (vertex '" + vertices_[s] + "')");
      ++adjacency_[s][t];
      ++adjacency_[t][s];
    }
  }

  /// Builds from vertex ids and arrows given by id.
  static QuiverDatum from_names(std::vector<std::string> vertices,
                                const std::vector<std::pair<std::string, std::string>>& arrows) {
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    QuiverDatum probe(vertices, {});
    for (const auto& [s, t] : arrows) idx.emplace_back(probe.index_of(s), probe.index_of(t));
    return QuiverDatum(std::move(vertices), std::move(idx));
  }

  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::string& name(std::size_t i) const { return vertices_.at(i); }
  /// The orientation Omega.
  const std::vector<std::pair<std::size_t, std::size_t>>& arrows() const noexcept { return arrows_; }

  std::size_t index_of(const std::string& id) const {
    for (std::size_t k = 0; k < vertices_.size(); ++k)
      if (vertices_[k] == id) return k;
    throw InputError("unknown vertex '" + id + "'");
  }

  /// Number of edges between i and j (symmetric, zero on the diagonal).
  int a(std::size_t i, std::size_t j) const { return adjacency_.at(i).at(j); }

  /// Cartan matrix entry c_ij = 2 delta_ij - a_ij.
  int cartan(std::size_t i, std::size_t j) const { return (i == j ? 2 : 0) - a(i, j); }

  std::vector<std::vector<int>> cartan_matrix() const {
    std::vector<std::vector<int>> c(size(), std::vector<int>(size()));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) c[i][j] = cartan(i, j);
    return c;
  }

  /// Symmetric form (x, y) = sum_ij x_i c_ij y_j on the root lattice.
  int form(const DimVector& x, const DimVector& y) const {
    int s = 0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) s += x[i] * cartan(i, j) * y[j];
    return s;
  }

  /// (alpha_i, x).
  int form_simple(std::size_t i, const DimVector& x) const {
    int s = 0;
    for (std::size_t j = 0; j < size(); ++j) s += cartan(i, j) * x[j];
    return s;
  }

  /// Fresh quiver with the vertex list permuted; perm[k] is the old index
  /// placed at position k.
  QuiverDatum permuted(const std::vector<std::size_t>& perm) const {
    std::vector<std::size_t> inv(size());
    std::vector<std::string> names;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      inv.at(perm[k]) = k;
      names.push_back(vertices_.at(perm[k]));
    }
    std::vector<std::pair<std::size_t, std::size_t>> arr;
    for (const auto& [s, t] : arrows_) arr.emplace_back(inv[s], inv[t]);
    return QuiverDatum(std::move(names), std::move(arr));
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> arrows_;
  std::vector<std::vector<int>> adjacency_;
};

/// Dominant weight Lambda through d_i = <Lambda, alpha_i^vee>.
struct HighestWeight {
  std::vector<int> d;

  explicit HighestWeight(std::vector<int> values = {}) : d(std::move(values)) {
    for (int x : d)
      if (x < 0) throw InputError("highest weight must be dominant (all d_i >= 0)");
  }
  int operator[](std::size_t i) const { return d.at(i); }
};

/// <Lambda - sum nu_j alpha_j, alpha_i^vee> = d_i - sum_j c_ij nu_j.
inline int coroot_pairing(const QuiverDatum& q, const HighestWeight& lambda, const DimVector& nu,
                          std::size_t i) {
  if (i >= q.size()) throw InputError("unknown vertex index " + std::to_string(i));
  return lambda[i] - q.form_simple(i, nu);
}

/// sum_j a_ij nu_j + d_i.
inline int nu_tilde(const QuiverDatum& q, const HighestWeight& lambda, const DimVector& nu, std::size_t i) {
  int s = lambda[i];
  for (std::size_t j = 0; j < q.size(); ++j) s += q.a(i, j) * nu[j];
  return s;
}

/// A quiver file together with its highest weight.
struct QuiverInput {
  QuiverDatum quiver;
  HighestWeight lambda;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < text.size() && k + 1 < byte; ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

/// Parses {"vertices": [...], "edges": [[tail, head], ...], "highest_weight": {...}}.
inline QuiverInput parse_quiver_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte);
    throw InputError("quiver JSON parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
  try {
    if (!j.is_object()) throw InputError("quiver file must contain a JSON object");
    if (!j.contains("vertices") || !j["vertices"].is_array())
      throw InputError("quiver file needs a \"vertices\" array");
    std::vector<std::string> vertices;
    for (const auto& v : j["vertices"]) {
      if (!v.is_string()) throw InputError("vertex ids must be strings");
      vertices.push_back(v.get<std::string>());
    }
    if (vertices.empty()) throw InputError("quiver needs at least one vertex");
    std::vector<std::pair<std::string, std::string>> edges;
    if (j.contains("edges")) {
      if (!j["edges"].is_array()) throw InputError("\"edges\" must be an array");
      for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
          throw InputError("each edge must be a pair of vertex ids");
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
      }
    }
    QuiverDatum q = QuiverDatum::from_names(vertices, edges);
    std::vector<int> d(q.size(), 0);
    if (j.contains("highest_weight")) {
      const auto& hw = j["highest_weight"];
      if (!hw.is_object()) throw InputError("\"highest_weight\" must be an object");
      for (const auto& [key, val] : hw.items()) {
        if (!val.is_number_integer()) throw InputError("highest weight entries must be integers");
        d[q.index_of(key)] = val.get<int>();
      }
    }
    return {std::move(q), HighestWeight(std::move(d))};
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed quiver file: ") + e.what());
  }
}

/// Canonical JSON of a quiver input (vertex order preserved).
inline nlohmann::json quiver_to_json(const QuiverInput& in) {
  nlohmann::json j;
  j["vertices"] = in.quiver.vertices();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [s, t] : in.quiver.arrows()) edges.push_back({in.quiver.name(s), in.quiver.name(t)});
  j["edges"] = edges;
  nlohmann::json hw = nlohmann::json::object();
  for (std::size_t i = 0; i < in.quiver.size(); ++i) hw[in.quiver.name(i)] = in.lambda[i];
  j["highest_weight"] = hw;
  return j;
}

/// Dimension vector as {"vertex": count} in declaration order.
inline nlohmann::ordered_json content_to_json(const QuiverDatum& q, const DimVector& nu) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < q.size(); ++i) j[q.name(i)] = nu[i];
  return j;
}

inline std::string content_label(const DimVector& nu) {
  std::string s;
  for (std::size_t k = 0; k < nu.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(nu[k]);
  }
  return s;
}

}  // namespace qcb
