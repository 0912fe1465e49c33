#pragma once

// Command execution behind the qcb tool: dims, basis, graph and verify.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qcb/cache.hpp"
#include "qcb/report.hpp"

namespace qcb {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2, kResourceCap = 3 };

struct RunConfig {
  std::string command;  // dims | basis | graph | verify
  std::string quiver_path;
  int max_height = 6;
  std::vector<std::string> order;  // vertex ids; empty means declaration order
  std::string format = "json";     // json | dot | table
  std::string cache_dir;           // empty disables the cache
  unsigned threads = 0;            // 0 means available parallelism
  std::optional<std::vector<std::string>> suites;  // unset means every suite
};

struct RunResult {
  int status = kOk;
  std::string output;
  std::string error;
  bool from_cache = false;
};

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ','))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<std::size_t> resolve_order(const QuiverDatum& q, const std::vector<std::string>& names) {
  if (names.empty()) return identity_order(q.size());
  if (names.size() != q.size()) throw InputError("--order must list every vertex exactly once");
  std::vector<std::size_t> order;
  std::vector<bool> seen(q.size(), false);
  for (const auto& id : names) {
    const std::size_t i = q.index_of(id);
    if (seen[i]) throw InputError("--order repeats vertex '" + id + "'");
    seen[i] = true;
    order.push_back(i);
  }
  return order;
}

inline QuiverInput load_quiver(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read quiver file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_quiver_json(ss.str());
}

namespace detail {

inline std::string cache_key(const RunConfig& c, const QuiverInput& in, const std::vector<std::size_t>& order) {
  nlohmann::ordered_json k{{"version", kArtifactVersion},
                           {"command", c.command},
                           {"quiver", quiver_to_json(in)},
                           {"max_height", c.max_height},
                           {"order", order_names(in.quiver, order)},
                           {"format", c.format}};
  if (c.command == "verify") k["suites"] = c.suites ? *c.suites : suite_names();
  return k.dump();
}

inline std::string render(const ojson& j) { return j.dump(2) + "\n"; }

inline RunResult compute(const RunConfig& c, const QuiverInput& in, const std::vector<std::size_t>& order) {
  ModuleOptions opts;
  opts.max_height = c.max_height;
  opts.threads = c.threads;
  HighestWeightModule mod(in.quiver, in.lambda, opts);
  RunResult r;
  if (c.command == "dims") {
    r.output = c.format == "table" ? dims_table(mod) : render(dims_json(mod));
    return r;
  }
  if (c.command == "verify") {
    const auto results = run_suites(mod, c.suites ? *c.suites : suite_names(), order);
    r.output = c.format == "table" ? verify_table(results) : render(verify_json(mod, results, order));
    for (const auto& s : results)
      if (!s.passed()) r.status = kVerificationFailed;
    return r;
  }
  const CanonicalBasis cb = compute_canonical_basis(mod);
  const LeftGraph g = build_left_graph(cb);
  if (c.command == "basis") {
    r.output = c.format == "table" ? basis_table(cb, g, order) : render(basis_json(cb, g, order));
  } else {
    if (c.format == "dot") r.output = graph_dot(cb, g);
    else if (c.format == "table") r.output = graph_table(cb, g, order);
    else r.output = render(graph_json(cb, g, order));
  }
  return r;
}

}  // namespace detail

/// Runs one command. Never throws; failures are reported through status and error.
inline RunResult run_command(const RunConfig& c) {
  RunResult r;
  try {
    if (c.command != "dims" && c.command != "basis" && c.command != "graph" && c.command != "verify")
      throw InputError("unknown command '" + c.command + "'");
    if (c.format != "json" && c.format != "dot" && c.format != "table")
      throw InputError("unknown format '" + c.format + "' (json, dot or table)");
    if (c.format == "dot" && c.command != "graph") throw InputError("--format dot is only available for graph");
    if (c.max_height < 0) throw InputError("--max-height must be non-negative");
    const QuiverInput in = load_quiver(c.quiver_path);
    const auto order = resolve_order(in.quiver, c.order);
    std::optional<ResultCache> cache;
    std::string key;
    if (!c.cache_dir.empty()) {
      cache.emplace(c.cache_dir);
      key = detail::cache_key(c, in, order);
      if (auto hit = cache->lookup(key)) {
        r.output = std::move(hit->output);
        r.status = hit->status;
        r.from_cache = true;
        return r;
      }
    }
    r = detail::compute(c, in, order);
    if (cache) cache->store(key, {r.output, r.status});
  } catch (const InputError& e) {
    r = {kInputError, "", std::string("input error: ") + e.what()};
  } catch (const ResourceCapError& e) {
    r = {kResourceCap, "", std::string("resource cap: ") + e.what()};
  } catch (const CanonicalBasisError& e) {
    r = {kVerificationFailed, "", std::string("canonical basis check failed: ") + e.what()};
  } catch (const CrystalError& e) {
    r = {kVerificationFailed, "", std::string("crystal check failed: ") + e.what()};
  } catch (const std::exception& e) {
    r = {kVerificationFailed, "", std::string("internal error: ") + e.what()};
  }
  return r;
}

}  // namespace qcb
