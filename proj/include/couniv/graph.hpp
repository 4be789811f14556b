#pragma once

// Finite directed graphs, paths, reachability and cofinality.
//
// Edge directions follow the range/source convention: an edge e points from
// s(e) to r(e), and a path e_1 e_2 ... e_n satisfies s(e_i) = r(e_{i+1}).
// Paths therefore grow at their source end, and "v reaches w" means that a
// path with range v and source w exists.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace couniv {

enum class VertexId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};

constexpr std::size_t index(VertexId v) noexcept {
  return static_cast<std::size_t>(v);
}
constexpr std::size_t index(EdgeId e) noexcept {
  return static_cast<std::size_t>(e);
}

/// A finite, validated directed graph.
///
/// Vertex and edge identifiers are opaque strings. Internally both are
/// numbered in lexicographic order of their identifiers, so every
/// enumeration that iterates ids in numeric order is also lexicographic.
class Graph {
 public:
  Graph() = default;

  std::size_t vertex_count() const noexcept { return vertex_names_.size(); }
  std::size_t edge_count() const noexcept { return edge_names_.size(); }

  auto vertices() const {
    return std::views::iota(std::uint32_t{0},
                            static_cast<std::uint32_t>(vertex_count())) |
           std::views::transform([](std::uint32_t i) { return VertexId{i}; });
  }
  auto edges() const {
    return std::views::iota(std::uint32_t{0},
                            static_cast<std::uint32_t>(edge_count())) |
           std::views::transform([](std::uint32_t i) { return EdgeId{i}; });
  }

  const std::string& name(VertexId v) const { return vertex_names_[index(v)]; }
  const std::string& name(EdgeId e) const { return edge_names_[index(e)]; }

  std::optional<VertexId> find_vertex(std::string_view id) const;
  std::optional<EdgeId> find_edge(std::string_view id) const;
  /// Lookup that throws ValidationError for unknown ids.
  VertexId vertex(std::string_view id) const;
  EdgeId edge(std::string_view id) const;

  VertexId source(EdgeId e) const { return source_[index(e)]; }
  VertexId range(EdgeId e) const { return range_[index(e)]; }

  /// vE^1: the edges whose range is v, in id order.
  std::span<const EdgeId> edges_into(VertexId v) const {
    return into_[index(v)];
  }
  /// E^1v: the edges whose source is v, in id order.
  std::span<const EdgeId> edges_out_of(VertexId v) const {
    return out_of_[index(v)];
  }

  /// True when v receives no edges.
  bool is_source(VertexId v) const { return into_[index(v)].empty(); }

  /// Canonical text form; parse_graph(to_text()) reproduces the graph.
  std::string to_text() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_names_ == b.vertex_names_ &&
           a.edge_names_ == b.edge_names_ && a.source_ == b.source_ &&
           a.range_ == b.range_;
  }

 private:
  friend class GraphBuilder;

  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<VertexId> source_;
  std::vector<VertexId> range_;
  std::vector<std::vector<EdgeId>> into_;
  std::vector<std::vector<EdgeId>> out_of_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
};

/// Accumulates declarations and produces a validated Graph.
///
/// Line numbers are optional and only used to give errors context.
class GraphBuilder {
 public:
  GraphBuilder& add_vertex(std::string id, std::size_t line = 0);
  GraphBuilder& add_edge(std::string id, std::string source, std::string range,
                         std::size_t line = 0);

  /// Throws ValidationError on duplicate ids, dangling endpoints or
  /// identifiers that the text formats cannot carry.
  Graph build() const;

 private:
  struct VertexDecl {
    std::string id;
    std::size_t line;
  };
  struct EdgeDecl {
    std::string id, source, range;
    std::size_t line;
  };
  std::vector<VertexDecl> vertices_;
  std::vector<EdgeDecl> edges_;
};

/// Whether `id` can be used as a vertex or edge identifier.
bool is_valid_identifier(std::string_view id);

/// Parses the line-oriented graph format:
///
///     # comment
///     vertex v
///     edge e : v -> v
///
/// Errors are reported as ParseError carrying the offending line.
Graph parse_graph(std::string_view text);

/// A finite path. The empty path at v has range = source = v.
class Path {
 public:
  static Path empty(VertexId v) { return Path({}, v, v); }
  static Path edge(const Graph& g, EdgeId e);
  /// Validates composability; an empty sequence is rejected because its
  /// vertex would be ambiguous.
  static Path of(const Graph& g, std::vector<EdgeId> edges);

  bool is_empty() const noexcept { return edges_.empty(); }
  std::size_t size() const noexcept { return edges_.size(); }
  std::span<const EdgeId> edges() const noexcept { return edges_; }
  EdgeId operator[](std::size_t i) const { return edges_[i]; }
  VertexId range() const noexcept { return range_; }
  VertexId source() const noexcept { return source_; }

  /// This path followed by `tail`; requires source() == tail.range().
  Path concat(const Path& tail) const;
  /// Whether this path equals `prefix` followed by some path.
  bool has_prefix(const Path& prefix) const;
  /// Removes the first n edges (the range-most ones).
  Path drop_front(const Graph& g, std::size_t n) const;
  /// Keeps the first n edges.
  Path take_front(const Graph& g, std::size_t n) const;

  /// Shorter paths first, then lexicographic by edge id.
  friend std::strong_ordering operator<=>(const Path& a, const Path& b);
  friend bool operator==(const Path& a, const Path& b) = default;

 private:
  Path(std::vector<EdgeId> edges, VertexId range, VertexId source)
      : edges_(std::move(edges)), range_(range), source_(source) {}

  std::vector<EdgeId> edges_;
  VertexId range_{};
  VertexId source_{};
};

/// Space-separated edge ids, or `[v]` for the empty path at v.
std::string to_string(const Graph& g, const Path& p);

/// Vertices receiving no edges, in id order.
std::vector<VertexId> sources(const Graph& g);

/// The reflexive-transitive relation "v reaches w" (vE*w is nonempty).
class Reachability {
 public:
  explicit Reachability(const Graph& g);

  bool reaches(VertexId from, VertexId to) const {
    return bits_[index(from) * n_ + index(to)] != 0;
  }
  /// All pairs (v, w) with v reaching w, ordered by v then w.
  std::vector<std::pair<VertexId, VertexId>> pairs() const;

 private:
  std::size_t n_;
  std::vector<char> bits_;
};

enum class PathMode {
  /// Paths of length exactly l, or shorter ones that stop at a source.
  Boundary,
  /// Every path of length at most l.
  AtMost,
};

/// Paths with range v, bounded by `length` according to `mode`, ordered.
std::vector<Path> paths_up_to(const Graph& g, VertexId v, std::size_t length,
                              PathMode mode = PathMode::Boundary);

/// Strongly connected components, each sorted, listed by smallest vertex.
std::vector<std::vector<VertexId>> strongly_connected_components(
    const Graph& g);

/// Whether every vertex reaches every boundary path of the graph.
///
/// A finite boundary path ends at a source, and the vertices that an
/// infinite path visits infinitely often lie in a single component that
/// carries a cycle. So the graph is cofinal iff every vertex reaches every
/// source and at least one vertex of every cyclic component.
bool is_cofinal(const Graph& g);

}  // namespace couniv
