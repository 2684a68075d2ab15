#pragma once

// Breadth-first exploration of the normalized Nash blowup graph.
//
// Vertices are semigroups up to unimodular equivalence (one node per class:
// fingerprint bucket, then pairwise isomorphism test). Each pointed chart of
// an expanded node contributes an edge to the node of its class. A cycle of
// length k is a closed walk through k distinct nodes; every reported edge
// carries a certificate mapping the target's representative onto the chart.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nashloop/iso.hpp"
#include "nashloop/nash.hpp"
#include "nashloop/parallel.hpp"

namespace nashloop {

class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class Termination { exhausted, depth_limit, node_limit, cycles_found };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::exhausted: return "exhausted";
    case Termination::depth_limit: return "depth-limit";
    case Termination::node_limit: return "node-limit";
    case Termination::cycles_found: return "cycles-found";
  }
  return "?";
}

inline Termination termination_from_string(const std::string& s) {
  if (s == "exhausted") return Termination::exhausted;
  if (s == "depth-limit") return Termination::depth_limit;
  if (s == "node-limit") return Termination::node_limit;
  if (s == "cycles-found") return Termination::cycles_found;
  throw std::invalid_argument("unknown termination reason: " + s);
}

/// True for the reasons that leave unexplored work behind.
inline bool is_truncated(Termination t) {
  return t == Termination::depth_limit || t == Termination::node_limit;
}

struct SearchConfig {
  Characteristic characteristic;
  std::size_t max_depth = 4;
  std::size_t max_nodes = 10000;
  std::set<std::size_t> cycle_lengths{1};
  bool normalized = true;
  unsigned threads = 1;
  /// Stop after the first level at which every requested length has a cycle.
  bool stop_when_found = true;
  std::size_t max_cycles_per_length = 100;
};

struct GraphNode {
  std::string key;
  AffineSemigroup representative;
  bool smooth = false;
  std::size_t depth_first_seen = 0;
  bool expanded = false;
};

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<std::size_t> subset;  ///< chart subset, indices into H(from)
  IsoCertificate certificate;       ///< representative(to) -> chart vertex
};

struct Cycle {
  std::size_t length = 0;
  std::vector<std::string> keys;     ///< node keys along the cycle, starting node first
  std::vector<std::size_t> edges;    ///< edge indices, edges[i] goes keys[i] -> keys[i+1 mod k]
  std::vector<IsoCertificate> certificates;
  bool verified = false;
};

struct SearchReport {
  std::size_t nodes_explored = 0;
  std::size_t node_count = 0;
  std::size_t edges = 0;
  std::vector<Cycle> cycles_found;
  std::size_t frontier = 0;
  Termination termination = Termination::exhausted;
};

/// HB of size d forming a lattice basis.
inline bool is_smooth_vertex(const AffineSemigroup& s) {
  const auto& hb = s.hilbert_basis();
  return hb.size() == s.ambient_dim() && is_unimodular(IntMatrix(s.ambient_dim(), hb));
}

class SearchGraph {
 public:
  SearchGraph() = default;
  explicit SearchGraph(SearchConfig config) : config_(std::move(config)) {}

  const SearchConfig& config() const { return config_; }
  SearchConfig& config() { return config_; }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  Termination termination() const { return termination_; }

  /// Inserts the start vertex; returns its node index.
  std::size_t add_root(const AffineSemigroup& s) {
    if (!s.is_pointed()) throw NotPointedError("explore: start semigroup is not pointed");
    if (!s.generates_full_lattice())
      throw SemigroupError("explore: group generated by start is not Z^d");
    if (config_.normalized && !is_saturated(s))
      throw SemigroupError("explore: start semigroup is not saturated");
    auto fp = fingerprint(s);
    if (auto hit = lookup(fp, s)) return hit->first;
    return insert(s, std::move(fp), 0);
  }

  /// Unexpanded, non-smooth nodes.
  std::vector<std::size_t> frontier() const {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (!nodes_[i].expanded && !nodes_[i].smooth) f.push_back(i);
    return f;
  }

  /// Expands level by level until a limit, exhaustion, or (optionally) all
  /// requested cycle lengths are present.
  Termination run() {
    while (true) {
      std::vector<std::size_t> level;
      std::size_t min_depth = SIZE_MAX;
      for (auto i : frontier()) {
        if (nodes_[i].depth_first_seen >= config_.max_depth) continue;
        min_depth = std::min(min_depth, nodes_[i].depth_first_seen);
      }
      if (min_depth == SIZE_MAX) {
        termination_ = frontier().empty() ? Termination::exhausted : Termination::depth_limit;
        return termination_;
      }
      for (auto i : frontier())
        if (nodes_[i].depth_first_seen == min_depth) level.push_back(i);

      if (!expand_level(level)) {
        termination_ = Termination::node_limit;
        return termination_;
      }
      if (config_.stop_when_found && !config_.cycle_lengths.empty()) {
        bool all = true;
        for (auto k : config_.cycle_lengths)
          if (find_cycles(k, 1).empty()) all = false;
        if (all) {
          termination_ = Termination::cycles_found;
          return termination_;
        }
      }
    }
  }

  /// Simple cycles of length k, each starting at its smallest node index.
  std::vector<Cycle> find_cycles(std::size_t k, std::size_t limit) const {
    std::vector<Cycle> out;
    if (k == 0) return out;
    auto adj = adjacency();
    std::vector<std::size_t> path_nodes, path_edges;
    for (std::size_t s = 0; s < nodes_.size() && out.size() < limit; ++s) {
      path_nodes = {s};
      path_edges.clear();
      walk(adj, s, k, path_nodes, path_edges, out, limit);
    }
    return out;
  }

  /// Recomputes the chart of an edge and checks its certificate.
  bool verify_edge(const GraphEdge& e) const {
    const auto& src = nodes_[e.from].representative;
    auto c = chart(src, e.subset, config_.characteristic, config_.normalized);
    if (!c.pointed) return false;
    return verify_certificate(nodes_[e.to].representative, chart_vertex(c, config_.normalized),
                              e.certificate);
  }

  SearchReport report() const {
    SearchReport r;
    r.node_count = nodes_.size();
    r.nodes_explored = static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const auto& n) { return n.expanded; }));
    r.edges = edges_.size();
    r.frontier = frontier().size();
    r.termination = termination_;
    for (auto k : config_.cycle_lengths) {
      for (auto& c : find_cycles(k, config_.max_cycles_per_length)) {
        c.verified = std::all_of(c.edges.begin(), c.edges.end(),
                                 [&](std::size_t e) { return verify_edge(edges_[e]); });
        r.cycles_found.push_back(std::move(c));
      }
    }
    return r;
  }

  /// The node whose class contains `s`, with a certificate rep -> s.
  std::optional<std::pair<std::size_t, IsoCertificate>> locate(const AffineSemigroup& s) const {
    return lookup(fingerprint(s), s);
  }

  std::optional<std::size_t> find_key(const std::string& key) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].key == key) return i;
    return std::nullopt;
  }

  // --- persistence ---------------------------------------------------------

  void save(std::ostream& os) const;
  static SearchGraph load(std::istream& is);

 private:
  struct Pending {
    std::size_t from;
    BlowupChart chart;
    std::optional<Fingerprint> fp;
  };

  std::optional<std::pair<std::size_t, IsoCertificate>> lookup(const Fingerprint& fp,
                                                               const AffineSemigroup& s) const {
    auto it = buckets_.find(fp.bytes());
    if (it == buckets_.end()) return std::nullopt;
    for (auto idx : it->second)
      if (auto cert = find_isomorphism(nodes_[idx].representative, s)) return {{idx, *cert}};
    return std::nullopt;
  }

  std::size_t insert(const AffineSemigroup& s, Fingerprint fp, std::size_t depth) {
    std::string digest = fp.digest();
    std::size_t ordinal = digest_counts_[digest]++;
    GraphNode n;
    n.key = digest + "-" + std::to_string(ordinal);
    n.representative = s;
    n.smooth = is_smooth_vertex(s);
    n.depth_first_seen = depth;
    nodes_.push_back(std::move(n));
    buckets_[fp.bytes()].push_back(nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  void remove_last_node() {
    auto fp = fingerprint(nodes_.back().representative);
    auto& bucket = buckets_[fp.bytes()];
    bucket.pop_back();
    if (bucket.empty()) buckets_.erase(fp.bytes());
    std::string digest = nodes_.back().key.substr(0, nodes_.back().key.find('-'));
    if (--digest_counts_[digest] == 0) digest_counts_.erase(digest);
    nodes_.pop_back();
  }

  /// Returns false if the node limit stopped expansion; the node that hit
  /// the limit is rolled back and stays in the frontier.
  bool expand_level(const std::vector<std::size_t>& level) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> jobs;
    for (auto i : level)
      for (auto& sub : admissible_subsets(nodes_[i].representative, config_.characteristic))
        jobs.emplace_back(i, std::move(sub));

    std::vector<Pending> pending(jobs.size());
    detail::parallel_for(jobs.size(), config_.threads, [&](std::size_t j) {
      auto& [from, sub] = jobs[j];
      Pending p{from, chart(nodes_[from].representative, sub, config_.characteristic,
                            config_.normalized),
                std::nullopt};
      if (p.chart.pointed) p.fp = fingerprint(chart_vertex(p.chart, config_.normalized));
      pending[j] = std::move(p);
    });

    std::size_t j = 0;
    for (auto i : level) {
      const std::size_t nodes_before = nodes_.size(), edges_before = edges_.size();
      for (; j < pending.size() && pending[j].from == i; ++j) {
        auto& p = pending[j];
        if (!p.chart.pointed) continue;
        const auto& vertex = chart_vertex(p.chart, config_.normalized);
        GraphEdge e{i, 0, p.chart.subset, {}};
        if (auto hit = lookup(*p.fp, vertex)) {
          e.to = hit->first;
          e.certificate = std::move(hit->second);
        } else {
          if (nodes_.size() >= config_.max_nodes) {
            while (nodes_.size() > nodes_before) remove_last_node();
            edges_.resize(edges_before);
            return false;
          }
          e.to = insert(vertex, std::move(*p.fp), nodes_[i].depth_first_seen + 1);
          e.certificate = identity_certificate(vertex);
        }
        edges_.push_back(std::move(e));
      }
      nodes_[i].expanded = true;
    }
    return true;
  }

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(nodes_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) adj[edges_[e].from].push_back(e);
    return adj;
  }

  void walk(const std::vector<std::vector<std::size_t>>& adj, std::size_t start, std::size_t k,
            std::vector<std::size_t>& path_nodes, std::vector<std::size_t>& path_edges,
            std::vector<Cycle>& out, std::size_t limit) const {
    std::size_t cur = path_nodes.back();
    std::set<std::size_t> seen_targets;
    for (auto e : adj[cur]) {
      if (out.size() >= limit) return;
      std::size_t to = edges_[e].to;
      if (!seen_targets.insert(to).second) continue;  // first edge per target
      if (path_edges.size() + 1 == k) {
        if (to != start) continue;
        Cycle c;
        c.length = k;
        for (auto n : path_nodes) c.keys.push_back(nodes_[n].key);
        c.edges = path_edges;
        c.edges.push_back(e);
        for (auto ce : c.edges) c.certificates.push_back(edges_[ce].certificate);
        out.push_back(std::move(c));
        continue;
      }
      if (to <= start) continue;
      if (std::find(path_nodes.begin(), path_nodes.end(), to) != path_nodes.end()) continue;
      path_nodes.push_back(to);
      path_edges.push_back(e);
      walk(adj, start, k, path_nodes, path_edges, out, limit);
      path_nodes.pop_back();
      path_edges.pop_back();
    }
  }

  SearchConfig config_;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::map<std::vector<std::uint8_t>, std::vector<std::size_t>> buckets_;
  std::map<std::string, std::size_t> digest_counts_;
  Termination termination_ = Termination::exhausted;
};

/// Explores from `start` under `config`.
inline SearchReport explore(const AffineSemigroup& start, const SearchConfig& config) {
  SearchGraph g(config);
  g.add_root(start);
  g.run();
  return g.report();
}

// --- line-delimited graph records --------------------------------------------
//
// One JSON object per line, fields in this order:
//   {"kind":"header","version":1,"characteristic":p,"normalized":b,
//    "max_depth":n,"max_nodes":n,"cycle_lengths":[k...],"termination":"..."}
//   {"kind":"node","key":"...","rows":d,"cols":n,"generators":[row-major d x n],
//    "depth":n,"smooth":b,"expanded":b}
//   {"kind":"edge","from":"key","to":"key","subset":[i...],"certificate":[row-major d x d]}
// Node generator columns are the node's Hilbert basis. Integers are decimal
// JSON numbers and must fit in 64 bits.

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline long long to_int64(const Integer& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("graph file: integer does not fit in 64 bits: " + v.str());
  return static_cast<long long>(v);
}

inline ordered_json row_major(const IntMatrix& m) {
  ordered_json a = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a.push_back(to_int64(m(r, c)));
  return a;
}

inline IntMatrix from_row_major(const ordered_json& a, std::size_t rows, std::size_t cols,
                                std::size_t line) {
  if (!a.is_array() || a.size() != rows * cols)
    throw GraphFormatError(line, "matrix has wrong number of entries");
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& x = a[r * cols + c];
      if (!x.is_number_integer()) throw GraphFormatError(line, "matrix entry is not an integer");
      m(r, c) = x.get<long long>();
    }
  return m;
}

}  // namespace detail

inline void SearchGraph::save(std::ostream& os) const {
  using detail::ordered_json;
  ordered_json h;
  h["kind"] = "header";
  h["version"] = 1;
  h["characteristic"] = config_.characteristic.value();
  h["normalized"] = config_.normalized;
  h["max_depth"] = config_.max_depth;
  h["max_nodes"] = config_.max_nodes;
  h["cycle_lengths"] = config_.cycle_lengths;
  h["termination"] = to_string(termination_);
  os << h.dump() << '\n';
  for (const auto& n : nodes_) {
    const auto& hb = n.representative.hilbert_basis();
    ordered_json j;
    j["kind"] = "node";
    j["key"] = n.key;
    j["rows"] = n.representative.ambient_dim();
    j["cols"] = hb.size();
    j["generators"] = detail::row_major(IntMatrix(n.representative.ambient_dim(), hb));
    j["depth"] = n.depth_first_seen;
    j["smooth"] = n.smooth;
    j["expanded"] = n.expanded;
    os << j.dump() << '\n';
  }
  for (const auto& e : edges_) {
    ordered_json j;
    j["kind"] = "edge";
    j["from"] = nodes_[e.from].key;
    j["to"] = nodes_[e.to].key;
    j["subset"] = e.subset;
    j["certificate"] = detail::row_major(e.certificate.matrix);
    os << j.dump() << '\n';
  }
}

inline SearchGraph SearchGraph::load(std::istream& is) {
  using detail::ordered_json;
  SearchGraph g;
  std::string text;
  std::size_t line = 0;
  std::map<std::string, std::size_t> index;
  while (std::getline(is, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
      throw GraphFormatError(line, std::string("malformed record: ") + ex.what());
    }
    try {
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "header") {
        if (j.at("version").get<int>() != 1) throw GraphFormatError(line, "unsupported version");
        g.config_.characteristic = Characteristic(j.at("characteristic").get<long long>());
        g.config_.normalized = j.at("normalized").get<bool>();
        g.config_.max_depth = j.at("max_depth").get<std::size_t>();
        g.config_.max_nodes = j.at("max_nodes").get<std::size_t>();
        g.config_.cycle_lengths = j.at("cycle_lengths").get<std::set<std::size_t>>();
        g.termination_ = termination_from_string(j.at("termination").get<std::string>());
      } else if (kind == "node") {
        std::string key = j.at("key").get<std::string>();
        if (index.count(key)) throw GraphFormatError(line, "duplicate node key " + key);
        auto rows = j.at("rows").get<std::size_t>();
        auto cols = j.at("cols").get<std::size_t>();
        IntMatrix m = detail::from_row_major(j.at("generators"), rows, cols, line);
        auto s = AffineSemigroup::from_hilbert_basis(rows, m.columns());
        if (!s.is_pointed()) throw GraphFormatError(line, "node semigroup is not pointed");
        auto fp = fingerprint(s);
        if (key.substr(0, key.find('-')) != fp.digest())
          throw GraphFormatError(line, "node key does not match its fingerprint");
        GraphNode n;
        n.key = key;
        n.representative = s;
        n.depth_first_seen = j.at("depth").get<std::size_t>();
        n.smooth = j.at("smooth").get<bool>();
        n.expanded = j.at("expanded").get<bool>();
        g.nodes_.push_back(std::move(n));
        index[key] = g.nodes_.size() - 1;
        g.buckets_[fp.bytes()].push_back(g.nodes_.size() - 1);
        std::size_t ordinal = 0;
        try {
          ordinal = std::stoul(key.substr(key.find('-') + 1));
        } catch (const std::exception&) {
          throw GraphFormatError(line, "node key has no ordinal: " + key);
        }
        auto& next = g.digest_counts_[fp.digest()];
        next = std::max(next, ordinal + 1);
      } else if (kind == "edge") {
        auto from = index.find(j.at("from").get<std::string>());
        auto to = index.find(j.at("to").get<std::string>());
        if (from == index.end() || to == index.end())
          throw GraphFormatError(line, "edge refers to an unknown node");
        GraphEdge e;
        e.from = from->second;
        e.to = to->second;
        e.subset = j.at("subset").get<std::vector<std::size_t>>();
        std::size_t d = g.nodes_[e.from].representative.ambient_dim();
        auto m = detail::from_row_major(j.at("certificate"), d, d, line);
        e.certificate = IsoCertificate{std::move(m), {}};
        g.edges_.push_back(std::move(e));
      } else {
        throw GraphFormatError(line, "unknown record kind " + kind);
      }
    } catch (const GraphFormatError&) {
      throw;
    } catch (const std::exception& ex) {
      throw GraphFormatError(line, ex.what());
    }
  }
  return g;
}

}  // namespace nashloop
