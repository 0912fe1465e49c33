#pragma once

// JSON, DOT and plain-text renderings of weight spaces, canonical bases,
// left graphs and verification results. Key order is fixed so that output
// is byte-stable.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qcb/verify.hpp"

namespace qcb {

using ojson = nlohmann::ordered_json;

/// Version tag stored in metadata and cache headers.
inline constexpr const char* kArtifactVersion = "qcb-1.0";

/// {"terms": [[exponent, "coefficient"], ...]}, exponents ascending.
inline ojson laurent_to_json(const LaurentPoly& p) {
  ojson terms = ojson::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(ojson::array({e, c.get_str()}));
  return ojson{{"terms", terms}};
}

inline LaurentPoly laurent_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw InputError("Laurent polynomial must be an object with a \"terms\" array");
  std::vector<LaurentPoly::Term> t;
  for (const auto& term : j["terms"]) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() || !term[1].is_string())
      throw InputError("each term must be [exponent, \"coefficient\"]");
    mpz_class c;
    if (c.set_str(term[1].get<std::string>(), 10) != 0) throw InputError("bad coefficient '" + term[1].get<std::string>() + "'");
    t.emplace_back(term[0].get<int>(), c);
  }
  return LaurentPoly::from_terms(std::move(t));
}

inline ojson ratfunc_to_json(const RatFunc& r) {
  if (r.is_laurent()) return laurent_to_json(r.as_laurent());
  return ojson{{"num", laurent_to_json(r.num())}, {"den", laurent_to_json(r.den())}};
}

inline std::string word_text(const QuiverDatum& q, const FlagMonomial& m) {
  return m.slots().empty() ? "()" : m.to_string(q);
}

inline ojson path_to_json(const QuiverDatum& q, const AdmissiblePath& p) {
  ojson a = ojson::array();
  for (const auto& s : p) a.push_back(ojson::array({q.name(s.vertex), s.mult}));
  return a;
}

inline std::string path_text(const QuiverDatum& q, const AdmissiblePath& p) {
  if (p.empty()) return "()";
  std::string s;
  for (const auto& step : p) s += "(" + q.name(step.vertex) + "," + std::to_string(step.mult) + ")";
  return s;
}

inline std::string node_label(const NodeRef& r) { return content_label(r.content) + "/" + std::to_string(r.id); }

inline std::vector<std::string> order_names(const QuiverDatum& q, const std::vector<std::size_t>& order) {
  std::vector<std::string> out;
  for (auto i : order) out.push_back(q.name(i));
  return out;
}

inline ojson metadata_json(const HighestWeightModule& mod, const std::vector<std::size_t>& order) {
  const auto& q = mod.quiver();
  ojson arrows = ojson::array();
  for (const auto& [s, t] : q.arrows()) arrows.push_back(ojson::array({q.name(s), q.name(t)}));
  ojson hw = ojson::object();
  for (std::size_t i = 0; i < q.size(); ++i) hw[q.name(i)] = mod.lambda()[i];
  return ojson{{"version", kArtifactVersion},
               {"vertices", q.vertices()},
               {"orientation", arrows},
               {"highest_weight", hw},
               {"max_height", mod.max_height()},
               {"order", order_names(q, order)}};
}

/// {"content", "spanning_count", "rank", "basis", "gram"} for one weight space.
inline ojson weight_space_json(const HighestWeightModule& mod, const DimVector& nu) {
  const auto& q = mod.quiver();
  const auto& ws = mod.weight_space(nu);
  ojson basis = ojson::array();
  for (const auto& m : ws.basis_words()) basis.push_back(word_text(q, m));
  ojson gram = ojson::array();
  for (const auto& row : ws.gram) {
    ojson r = ojson::array();
    for (const auto& g : row) r.push_back(laurent_to_json(g));
    gram.push_back(r);
  }
  return ojson{{"content", content_to_json(q, nu)},
               {"spanning_count", ws.spanning.size()},
               {"rank", ws.rank},
               {"basis", basis},
               {"gram", gram}};
}

inline ojson dims_json(const HighestWeightModule& mod) {
  FreudenthalTable table(mod.quiver(), mod.lambda(), mod.max_height());
  ojson rows = ojson::array();
  for (const auto& nu : mod.contents()) {
    ojson row = weight_space_json(mod, nu);
    const int f = table.multiplicity(nu);
    row["freudenthal"] = f;
    row["agree"] = static_cast<int>(mod.weight_space(nu).rank) == f;
    rows.push_back(row);
  }
  return ojson{{"metadata", metadata_json(mod, identity_order(mod.vertex_count()))}, {"weight_spaces", rows}};
}

inline std::string dims_table(const HighestWeightModule& mod) {
  FreudenthalTable table(mod.quiver(), mod.lambda(), mod.max_height());
  std::ostringstream os;
  os << "content\tspanning\trank\tfreudenthal\tagree\n";
  for (const auto& nu : mod.contents()) {
    const auto& ws = mod.weight_space(nu);
    const int f = table.multiplicity(nu);
    os << content_label(nu) << '\t' << ws.spanning.size() << '\t' << ws.rank << '\t' << f << '\t'
       << (static_cast<int>(ws.rank) == f ? "yes" : "NO") << '\n';
  }
  return os.str();
}

inline ojson cb_element_json(const QuiverDatum& q, const CBElement& b) {
  ojson vec = ojson::array();
  for (const auto& [m, c] : b.vector.terms()) vec.push_back(ojson::array({word_text(q, m), laurent_to_json(c)}));
  ojson stats = ojson::object();
  for (std::size_t i = 0; i < q.size(); ++i) stats[q.name(i)] = b.stats[i];
  ojson prov = nullptr;
  if (b.provenance)
    prov = ojson{{"i", q.name(b.provenance->vertex)}, {"t", b.provenance->t}, {"parent", b.provenance->parent}};
  return ojson{{"id", b.id},
               {"vector", vec},
               {"self_pairing", laurent_to_json(b.self_pairing)},
               {"stats", stats},
               {"provenance", prov}};
}

inline ojson matrix_json(const RatMatrix& m) {
  ojson out = ojson::array();
  for (const auto& row : m) {
    ojson r = ojson::array();
    for (const auto& x : row) r.push_back(ratfunc_to_json(x));
    out.push_back(r);
  }
  return out;
}

inline ojson matrix_at_one_json(const RatMatrix& m) {
  ojson out = ojson::array();
  for (const auto& row : specialize_v1(m)) {
    ojson r = ojson::array();
    for (const auto& x : row) r.push_back(x.get_str());
    out.push_back(r);
  }
  return out;
}

/// Canonical basis per content with its monomial basis M and the
/// transition matrix (row k expands M_k in the canonical basis).
inline ojson basis_json(const CanonicalBasis& cb, const LeftGraph& g, const std::vector<std::size_t>& order) {
  const auto& mod = cb.module();
  const auto& q = mod.quiver();
  ojson contents = ojson::array();
  for (const auto& nu : mod.contents()) {
    const auto& elems = cb.at(nu);
    if (elems.empty()) continue;
    ojson list = ojson::array();
    for (const auto& b : elems) list.push_back(cb_element_json(q, b));
    const auto mb = monomial_basis_M(cb, g, nu, order);
    ojson paths = ojson::array();
    for (std::size_t k = 0; k < mb.paths.size(); ++k)
      paths.push_back(ojson{{"element", mb.cb_ids[k]}, {"path", path_to_json(q, mb.paths[k])}});
    contents.push_back(ojson{{"content", content_to_json(q, nu)},
                             {"elements", list},
                             {"monomial_basis", paths},
                             {"transition", matrix_json(mb.transition)},
                             {"transition_at_one", matrix_at_one_json(mb.transition)}});
  }
  return ojson{{"metadata", metadata_json(mod, order)}, {"total", cb.total_count()}, {"contents", contents}};
}

inline std::string basis_table(const CanonicalBasis& cb, const LeftGraph& g, const std::vector<std::size_t>& order) {
  const auto& mod = cb.module();
  const auto& q = mod.quiver();
  std::ostringstream os;
  os << "canonical basis elements: " << cb.total_count() << '\n';
  for (const auto& nu : mod.contents()) {
    const auto& elems = cb.at(nu);
    if (elems.empty()) continue;
    os << "content (" << content_label(nu) << ")\n";
    for (const auto& b : elems) {
      os << "  [" << b.id << "] ";
      bool first = true;
      for (const auto& [m, c] : b.vector.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")*" << word_text(q, m);
      }
      os << "   (b,b) = " << b.self_pairing.to_string() << '\n';
    }
    const auto mb = monomial_basis_M(cb, g, nu, order);
    for (std::size_t k = 0; k < mb.paths.size(); ++k) {
      os << "  M " << path_text(q, mb.paths[k]) << " =";
      for (const auto& x : mb.transition[k]) os << ' ' << x.to_string();
      os << '\n';
    }
  }
  return os.str();
}

/// Graph part only; independent of the vertex order used for paths.
inline ojson graph_core_json(const CanonicalBasis& cb, const LeftGraph& g) {
  const auto& q = cb.module().quiver();
  ojson nodes = ojson::array();
  for (const auto& n : g.nodes) {
    ojson stats = ojson::object();
    const auto& b = cb.element(n.content, n.id);
    for (std::size_t i = 0; i < q.size(); ++i) stats[q.name(i)] = b.stats[i];
    nodes.push_back(ojson{{"label", node_label(n)}, {"content", content_to_json(q, n.content)}, {"index", n.id}, {"stats", stats}});
  }
  ojson arrows = ojson::array();
  for (const auto& a : g.arrows)
    arrows.push_back(ojson{{"source", node_label(a.source)},
                           {"target", node_label(a.target)},
                           {"color", ojson::array({q.name(a.vertex), a.r})}});
  return ojson{{"nodes", nodes}, {"arrows", arrows}};
}

inline ojson graph_json(const CanonicalBasis& cb, const LeftGraph& g, const std::vector<std::size_t>& order) {
  const auto& mod = cb.module();
  const auto& q = mod.quiver();
  ojson meta = metadata_json(mod, order);
  meta["graph"] = "left graph G1(Lambda) of the canonical basis";
  meta["identification"] = "consumed as G0(Lambda_omega) = G1(Lambda); no quiver-variety computation";
  meta["sgn"] = "unknown";
  ojson listing = ojson::array();
  for (const auto& nu : mod.contents()) {
    if (cb.at(nu).empty()) continue;
    const auto mb = monomial_basis_M(cb, g, nu, order);
    ojson entries = ojson::array();
    for (std::size_t k = 0; k < mb.paths.size(); ++k)
      entries.push_back(ojson{{"node", node_label({nu, mb.cb_ids[k]})}, {"sbar", path_to_json(q, mb.paths[k])}});
    listing.push_back(ojson{{"content", content_to_json(q, nu)}, {"sorted", entries}});
  }
  return ojson{{"metadata", meta}, {"graph", graph_core_json(cb, g)}, {"paths", listing}};
}

inline std::string graph_dot(const CanonicalBasis& cb, const LeftGraph& g) {
  const auto& q = cb.module().quiver();
  std::ostringstream os;
  os << "digraph left_graph {\n";
  for (const auto& n : g.nodes) os << "  \"" << node_label(n) << "\";\n";
  for (const auto& a : g.arrows)
    os << "  \"" << node_label(a.source) << "\" -> \"" << node_label(a.target) << "\" [label=\"(" << q.name(a.vertex)
       << "," << a.r << ")\"];\n";
  os << "}\n";
  return os.str();
}

inline std::string graph_table(const CanonicalBasis& cb, const LeftGraph& g, const std::vector<std::size_t>& order) {
  const auto& mod = cb.module();
  const auto& q = mod.quiver();
  std::ostringstream os;
  os << "nodes: " << g.nodes.size() << ", arrows: " << g.arrows.size() << '\n';
  for (const auto& a : g.arrows)
    os << node_label(a.source) << " -(" << q.name(a.vertex) << "," << a.r << ")-> " << node_label(a.target) << '\n';
  for (const auto& nu : mod.contents()) {
    if (cb.at(nu).empty()) continue;
    const auto mb = monomial_basis_M(cb, g, nu, order);
    for (std::size_t k = 0; k < mb.paths.size(); ++k)
      os << "sbar " << node_label({nu, mb.cb_ids[k]}) << " = " << path_text(q, mb.paths[k]) << '\n';
  }
  return os.str();
}

inline ojson verify_json(const HighestWeightModule& mod, const std::vector<SuiteResult>& results,
                         const std::vector<std::size_t>& order) {
  ojson suites = ojson::array();
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed();
    suites.push_back(ojson{{"suite", r.name},
                           {"checks", r.checks},
                           {"failures", r.failures},
                           {"passed", r.passed()},
                           {"counterexamples", r.counterexamples}});
  }
  return ojson{{"metadata", metadata_json(mod, order)}, {"passed", ok}, {"suites", suites}};
}

inline std::string verify_table(const std::vector<SuiteResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.passed() ? "PASS " : "FAIL ") << r.name << "  checks=" << r.checks << " failures=" << r.failures << '\n';
    for (const auto& c : r.counterexamples) os << "    counterexample: " << c << '\n';
  }
  if (results.empty()) os << "no suites selected\n";
  return os.str();
}

}  // namespace qcb
