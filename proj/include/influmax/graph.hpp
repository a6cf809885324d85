#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace influmax {

using VertexId = std::uint32_t;

// Seed vertices in selection order.
using SeedSet = std::vector<VertexId>;

struct Neighbor {
  VertexId id;
  std::uint32_t multiplicity;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Immutable undirected multigraph in compressed adjacency form. Parallel
// edges are kept as per-pair multiplicities, self loops are dropped at
// build time, and vertex ids are dense 0..n-1 with the original labels
// kept in a side table. Safe for concurrent reads once built.
class Graph {
 public:
  Graph() = default;

  // Endpoint pairs over ids < n. Self loops are dropped; duplicate pairs
  // accumulate multiplicity unless dedup collapses them to 1.
  static Graph from_edges(std::size_t n,
                          std::span<const std::pair<VertexId, VertexId>> edges,
                          bool dedup = false) {
    std::vector<std::pair<VertexId, VertexId>> kept;
    kept.reserve(edges.size());
    for (auto [a, b] : edges) {
      if (a >= n || b >= n)
        throw std::invalid_argument("edge endpoint out of range");
      if (a == b) continue;
      kept.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::vector<std::int64_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(i);
    return from_sorted_labels(std::move(labels), std::move(kept), dedup);
  }

  // Shared building block for the loaders: `labels` sorted ascending,
  // `edges` already remapped to ids with first < second, no self loops.
  static Graph from_sorted_labels(std::vector<std::int64_t> labels,
                                  std::vector<std::pair<VertexId, VertexId>> edges,
                                  bool dedup);

  std::size_t num_vertices() const { return degrees_.size(); }

  // Edge count with parallel edges counted individually.
  std::uint64_t num_edges() const { return m_; }

  // Multiplicity-weighted degree d_u.
  std::uint64_t degree(VertexId u) const {
    check_vertex(u);
    return degrees_[u];
  }

  std::span<const Neighbor> neighbors(VertexId u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }

  // Number of parallel edges between u and v, 0 if not adjacent.
  std::uint32_t multiplicity(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    auto ns = neighbors(u);
    auto it = std::lower_bound(ns.begin(), ns.end(), v,
                               [](const Neighbor& a, VertexId b) { return a.id < b; });
    return (it != ns.end() && it->id == v) ? it->multiplicity : 0;
  }

  std::int64_t label(VertexId u) const {
    check_vertex(u);
    return labels_[u];
  }

  const std::vector<std::int64_t>& labels() const { return labels_; }

  // Inverse of the dense remapping; labels are stored sorted.
  std::optional<VertexId> find_label(std::int64_t label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<VertexId>(it - labels_.begin());
  }

  void check_vertex(VertexId u) const {
    if (u >= num_vertices())
      throw std::out_of_range("vertex id out of range: " + std::to_string(u));
  }

  // Structural sanity: sorted adjacency, no self loops, symmetric
  // multiplicities, sum(degree) == 2m. Runs after every build.
  void check_invariants() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> offsets_;  // n+1 entries into adjacency_
  std::vector<Neighbor> adjacency_;
  std::vector<std::uint64_t> degrees_;
  std::vector<std::int64_t> labels_;
};

inline Graph Graph::from_sorted_labels(std::vector<std::int64_t> labels,
                                       std::vector<std::pair<VertexId, VertexId>> edges,
                                       bool dedup) {
  const std::size_t n = labels.size();
  std::sort(edges.begin(), edges.end());

  // Run-length encode parallel edges into (pair, multiplicity).
  std::vector<std::pair<std::pair<VertexId, VertexId>, std::uint32_t>> uniq;
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    while (j < edges.size() && edges[j] == edges[i]) ++j;
    uniq.push_back({edges[i], dedup ? 1u : static_cast<std::uint32_t>(j - i)});
    i = j;
  }

  Graph g;
  g.labels_ = std::move(labels);
  g.degrees_.assign(n, 0);
  std::vector<std::uint64_t> counts(n, 0);
  for (const auto& [e, c] : uniq) {
    g.m_ += c;
    g.degrees_[e.first] += c;
    g.degrees_[e.second] += c;
    ++counts[e.first];
    ++counts[e.second];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) g.offsets_[u + 1] = g.offsets_[u] + counts[u];
  g.adjacency_.resize(g.offsets_[n]);

  // Scanning pairs in sorted order appends every adjacency list in
  // ascending neighbor order: (w,u) entries precede (u,v) lexicographically.
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [e, c] : uniq) {
    g.adjacency_[cursor[e.first]++] = Neighbor{e.second, c};
    g.adjacency_[cursor[e.second]++] = Neighbor{e.first, c};
  }

  g.check_invariants();
  return g;
}

inline void Graph::check_invariants() const {
  const std::size_t n = num_vertices();
  if (offsets_.size() != n + 1 || labels_.size() != n)
    throw std::logic_error("graph: table sizes inconsistent");
  std::uint64_t total = 0;
  for (VertexId u = 0; u < n; ++u) {
    auto ns = neighbors(u);
    std::uint64_t du = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (ns[i].id >= n) throw std::logic_error("graph: adjacency id out of range");
      if (ns[i].id == u) throw std::logic_error("graph: self loop survived build");
      if (i > 0 && ns[i - 1].id >= ns[i].id)
        throw std::logic_error("graph: adjacency not sorted");
      if (ns[i].multiplicity == 0) throw std::logic_error("graph: zero multiplicity");
      if (multiplicity(ns[i].id, u) != ns[i].multiplicity)
        throw std::logic_error("graph: asymmetric multiplicity");
      du += ns[i].multiplicity;
    }
    if (du != degrees_[u]) throw std::logic_error("graph: degree mismatch");
    total += du;
  }
  if (total != 2 * m_) throw std::logic_error("graph: sum of degrees != 2m");
}

// All vertices within `h` hops of u, including u itself, sorted ascending.
inline std::vector<VertexId> neighbors_within(const Graph& g, VertexId u, std::size_t h) {
  g.check_vertex(u);
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  std::vector<VertexId> result{u};
  std::vector<VertexId> level{u};
  seen[u] = 1;
  std::vector<VertexId> next;
  for (std::size_t d = 0; d < h && !level.empty(); ++d) {
    next.clear();
    for (VertexId v : level) {
      for (const Neighbor& nb : g.neighbors(v)) {
        if (!seen[nb.id]) {
          seen[nb.id] = 1;
          next.push_back(nb.id);
          result.push_back(nb.id);
        }
      }
    }
    level.swap(next);
  }
  std::sort(result.begin(), result.end());
  return result;
}

enum class EdgeListFormat { autodetect, plain, header, snap };

struct LoadOptions {
  EdgeListFormat format = EdgeListFormat::autodetect;
  // Collapse parallel edges to a single edge. Defaults to on for snap
  // input (an arc present in both directions should not double the
  // undirected edge) and off for plain/header collaboration lists where
  // repeated pairs are meaningful.
  std::optional<bool> dedup;
  // Receives non-fatal loader diagnostics, e.g. header/count mismatches.
  std::function<void(const std::string&)> warn;
};

namespace detail {

struct TextLine {
  std::string_view text;
  std::size_t number;  // 1-based physical line
};

inline std::vector<TextLine> split_lines(std::string_view text) {
  std::vector<TextLine> lines;
  std::size_t start = 0, number = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({line, number});
    if (end == text.size()) break;
    start = end + 1;
    ++number;
  }
  return lines;
}

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f'; }

inline std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

inline bool parse_i64(std::string_view tok, std::int64_t& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

inline bool is_comment(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && is_space(line[i])) ++i;
  return i < line.size() && line[i] == '#';
}

// Leading '#' means snap; a 2-token first line that reads as a plausible
// "n m" header matching the remaining line count means header; else plain.
inline EdgeListFormat detect_format(const std::vector<TextLine>& lines) {
  std::size_t first = lines.size();
  std::size_t nonblank = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (tokenize(lines[i].text).empty()) continue;
    ++nonblank;
    if (first == lines.size()) first = i;
  }
  if (first == lines.size()) return EdgeListFormat::plain;
  if (is_comment(lines[first].text)) return EdgeListFormat::snap;
  auto toks = tokenize(lines[first].text);
  if (toks.size() == 2) {
    std::int64_t n = 0, m = 0;
    if (parse_i64(toks[0], n) && parse_i64(toks[1], m) && n >= 1 && m >= 1 &&
        m == static_cast<std::int64_t>(nonblank - 1))
      return EdgeListFormat::header;
  }
  return EdgeListFormat::plain;
}

}  // namespace detail

inline Graph load_edge_list(std::string_view text, const LoadOptions& opts = {}) {
  auto lines = detail::split_lines(text);

  EdgeListFormat format = opts.format == EdgeListFormat::autodetect
                              ? detail::detect_format(lines)
                              : opts.format;
  const bool dedup = opts.dedup.value_or(format == EdgeListFormat::snap);

  std::optional<std::pair<std::int64_t, std::int64_t>> declared;
  std::vector<std::int64_t> labels;
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;  // normalized label pairs
  bool want_header = format == EdgeListFormat::header;
  bool any_content = false;

  for (const auto& line : lines) {
    if (format == EdgeListFormat::snap && detail::is_comment(line.text)) continue;
    auto toks = detail::tokenize(line.text);
    if (toks.empty()) continue;
    any_content = true;
    std::string where = "line " + std::to_string(line.number) + ": ";
    if (toks.size() != 2)
      throw std::runtime_error(where + "expected 2 tokens, got " +
                               std::to_string(toks.size()));
    std::int64_t a = 0, b = 0;
    if (!detail::parse_i64(toks[0], a))
      throw std::runtime_error(where + "non-integer token '" + std::string(toks[0]) + "'");
    if (!detail::parse_i64(toks[1], b))
      throw std::runtime_error(where + "non-integer token '" + std::string(toks[1]) + "'");
    if (want_header) {
      declared = {{a, b}};
      want_header = false;
      continue;
    }
    labels.push_back(a);
    labels.push_back(b);
    if (a == b) continue;  // self loop
    raw.emplace_back(std::min(a, b), std::max(a, b));
  }

  if (!any_content) throw std::runtime_error("empty edge list input");
  if (labels.empty()) throw std::runtime_error("edge list contains no edges");

  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto id_of = [&](std::int64_t lab) {
    return static_cast<VertexId>(
        std::lower_bound(labels.begin(), labels.end(), lab) - labels.begin());
  };
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(raw.size());
  for (auto [a, b] : raw) edges.emplace_back(id_of(a), id_of(b));

  Graph g = Graph::from_sorted_labels(std::move(labels), std::move(edges), dedup);

  if (declared && opts.warn) {
    if (declared->first != static_cast<std::int64_t>(g.num_vertices()))
      opts.warn("header declares n=" + std::to_string(declared->first) + " but " +
                std::to_string(g.num_vertices()) + " vertices were loaded; using loaded count");
    if (declared->second != static_cast<std::int64_t>(g.num_edges()))
      opts.warn("header declares m=" + std::to_string(declared->second) + " but " +
                std::to_string(g.num_edges()) + " edges were loaded; using loaded count");
  }
  return g;
}

inline Graph load_edge_list(std::istream& in, const LoadOptions& opts = {}) {
  std::string text(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
  return load_edge_list(std::string_view(text), opts);
}

inline Graph load_edge_list_file(const std::filesystem::path& path,
                                 const LoadOptions& opts = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open edge list file: " + path.string());
  return load_edge_list(in, opts);
}

}  // namespace influmax
