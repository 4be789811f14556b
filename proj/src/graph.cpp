#include "couniv/graph.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "couniv/error.hpp"

namespace couniv {

std::optional<VertexId> Graph::find_vertex(std::string_view id) const {
  auto it = vertex_index_.find(std::string(id));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Graph::find_edge(std::string_view id) const {
  auto it = edge_index_.find(std::string(id));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

VertexId Graph::vertex(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw ValidationError("unknown vertex '" + std::string(id) + "'");
}

EdgeId Graph::edge(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw ValidationError("unknown edge '" + std::string(id) + "'");
}

std::string Graph::to_text() const {
  std::ostringstream out;
  for (VertexId v : vertices()) out << "vertex " << name(v) << '\n';
  for (EdgeId e : edges()) {
    out << "edge " << name(e) << " : " << name(source(e)) << " -> "
        << name(range(e)) << '\n';
  }
  return out.str();
}

bool is_valid_identifier(std::string_view id) {
  if (id.empty() || id.find("->") != std::string_view::npos) return false;
  for (unsigned char c : id) {
    if (c <= 0x20 || c == 0x7f) return false;
    switch (c) {
      case '[': case ']': case '(': case ')': case '|': case '*':
      case '+': case ',': case '#': case ';': case '"': case '\\':
        return false;
      default:
        break;
    }
  }
  return id != ":";
}

GraphBuilder& GraphBuilder::add_vertex(std::string id, std::size_t line) {
  vertices_.push_back({std::move(id), line});
  return *this;
}

GraphBuilder& GraphBuilder::add_edge(std::string id, std::string source,
                                     std::string range, std::size_t line) {
  edges_.push_back({std::move(id), std::move(source), std::move(range), line});
  return *this;
}

Graph GraphBuilder::build() const {
  std::map<std::string, std::size_t> vertex_lines;
  for (const auto& d : vertices_) {
    if (!is_valid_identifier(d.id)) {
      throw ValidationError(d.line, "invalid vertex id '" + d.id + "'");
    }
    if (!vertex_lines.emplace(d.id, d.line).second) {
      throw ValidationError(d.line, "duplicate vertex id '" + d.id + "'");
    }
  }
  std::map<std::string, const EdgeDecl*> edge_decls;
  for (const auto& d : edges_) {
    if (!is_valid_identifier(d.id)) {
      throw ValidationError(d.line, "invalid edge id '" + d.id + "'");
    }
    if (!edge_decls.emplace(d.id, &d).second) {
      throw ValidationError(d.line, "duplicate edge id '" + d.id + "'");
    }
    for (const auto* end : {&d.source, &d.range}) {
      if (!vertex_lines.contains(*end)) {
        throw ValidationError(
            d.line, "edge '" + d.id + "' has dangling endpoint '" + *end + "'");
      }
    }
  }

  Graph g;
  for (const auto& [id, line] : vertex_lines) {
    g.vertex_index_.emplace(id, VertexId{static_cast<std::uint32_t>(
                                    g.vertex_names_.size())});
    g.vertex_names_.push_back(id);
  }
  g.into_.resize(g.vertex_names_.size());
  g.out_of_.resize(g.vertex_names_.size());
  for (const auto& [id, decl] : edge_decls) {
    EdgeId e{static_cast<std::uint32_t>(g.edge_names_.size())};
    g.edge_index_.emplace(id, e);
    g.edge_names_.push_back(id);
    VertexId s = g.vertex_index_.at(decl->source);
    VertexId r = g.vertex_index_.at(decl->range);
    g.source_.push_back(s);
    g.range_.push_back(r);
    g.into_[index(r)].push_back(e);
    g.out_of_[index(s)].push_back(e);
  }
  return g;
}

Graph parse_graph(std::string_view text) {
  static const std::regex vertex_re(R"(^vertex\s+(\S+)$)");
  static const std::regex edge_re(R"(^edge\s+(\S+?)\s*:\s+(\S+?)\s*->\s*(\S+)$)");

  GraphBuilder builder;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);

    std::smatch m;
    if (std::regex_match(line, m, vertex_re)) {
      builder.add_vertex(m[1], line_no);
    } else if (std::regex_match(line, m, edge_re)) {
      builder.add_edge(m[1], m[2], m[3], line_no);
    } else if (line.rfind("vertex", 0) == 0) {
      throw ParseError(line_no, "expected 'vertex <id>'");
    } else if (line.rfind("edge", 0) == 0) {
      throw ParseError(line_no, "expected 'edge <id> : <source> -> <range>'");
    } else {
      throw ParseError(line_no, "unrecognised declaration '" + line + "'");
    }
  }
  try {
    return builder.build();
  } catch (const ValidationError& e) {
    throw ParseError(e.line(), e.detail());
  }
}

Path Path::edge(const Graph& g, EdgeId e) {
  return Path({e}, g.range(e), g.source(e));
}

Path Path::of(const Graph& g, std::vector<EdgeId> edges) {
  if (edges.empty()) {
    throw ValidationError("Path::of needs at least one edge; use Path::empty");
  }
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (g.source(edges[i]) != g.range(edges[i + 1])) {
      throw ValidationError("edges '" + g.name(edges[i]) + "' and '" +
                            g.name(edges[i + 1]) + "' do not compose");
    }
  }
  VertexId r = g.range(edges.front());
  VertexId s = g.source(edges.back());
  return Path(std::move(edges), r, s);
}

Path Path::concat(const Path& tail) const {
  if (source_ != tail.range_) {
    throw ValidationError("paths do not compose");
  }
  std::vector<EdgeId> edges = edges_;
  edges.insert(edges.end(), tail.edges_.begin(), tail.edges_.end());
  return Path(std::move(edges), range_, tail.source_);
}

bool Path::has_prefix(const Path& prefix) const {
  if (prefix.range_ != range_ || prefix.size() > size()) return false;
  return std::equal(prefix.edges_.begin(), prefix.edges_.end(), edges_.begin());
}

Path Path::drop_front(const Graph& g, std::size_t n) const {
  if (n > size()) throw PreconditionError("drop_front past end of path");
  if (n == size()) return empty(source_);
  std::vector<EdgeId> rest(edges_.begin() + static_cast<std::ptrdiff_t>(n),
                           edges_.end());
  VertexId r = g.range(rest.front());
  return Path(std::move(rest), r, source_);
}

Path Path::take_front(const Graph& g, std::size_t n) const {
  if (n > size()) throw PreconditionError("take_front past end of path");
  if (n == 0) return empty(range_);
  std::vector<EdgeId> head(edges_.begin(),
                           edges_.begin() + static_cast<std::ptrdiff_t>(n));
  VertexId s = g.source(head.back());
  return Path(std::move(head), range_, s);
}

std::strong_ordering operator<=>(const Path& a, const Path& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.edges_ <=> b.edges_; c != 0) return c;
  return a.range_ <=> b.range_;
}

std::string to_string(const Graph& g, const Path& p) {
  if (p.is_empty()) return "[" + g.name(p.range()) + "]";
  std::string out;
  for (EdgeId e : p.edges()) {
    if (!out.empty()) out += ' ';
    out += g.name(e);
  }
  return out;
}

std::vector<VertexId> sources(const Graph& g) {
  std::vector<VertexId> out;
  for (VertexId v : g.vertices()) {
    if (g.is_source(v)) out.push_back(v);
  }
  return out;
}

Reachability::Reachability(const Graph& g)
    : n_(g.vertex_count()), bits_(n_ * n_, 0) {
  std::vector<VertexId> stack;
  for (VertexId v : g.vertices()) {
    char* row = &bits_[index(v) * n_];
    row[index(v)] = 1;
    stack.assign(1, v);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (EdgeId e : g.edges_into(u)) {
        VertexId w = g.source(e);
        if (!row[index(w)]) {
          row[index(w)] = 1;
          stack.push_back(w);
        }
      }
    }
  }
}

std::vector<std::pair<VertexId, VertexId>> Reachability::pairs() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (bits_[i * n_ + j]) {
        out.emplace_back(VertexId{static_cast<std::uint32_t>(i)},
                         VertexId{static_cast<std::uint32_t>(j)});
      }
    }
  }
  return out;
}

std::vector<Path> paths_up_to(const Graph& g, VertexId v, std::size_t length,
                              PathMode mode) {
  std::vector<Path> out;
  std::vector<Path> frontier{Path::empty(v)};
  for (std::size_t depth = 0;; ++depth) {
    std::vector<Path> next;
    for (const Path& p : frontier) {
      bool stops = depth == length || g.is_source(p.source());
      if (mode == PathMode::AtMost || stops) out.push_back(p);
      if (depth == length) continue;
      for (EdgeId e : g.edges_into(p.source())) {
        next.push_back(p.concat(Path::edge(g, e)));
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<VertexId>> strongly_connected_components(
    const Graph& g) {
  Reachability reach(g);
  std::vector<char> placed(g.vertex_count(), 0);
  std::vector<std::vector<VertexId>> out;
  for (VertexId v : g.vertices()) {
    if (placed[index(v)]) continue;
    std::vector<VertexId> component;
    for (VertexId w : g.vertices()) {
      if (reach.reaches(v, w) && reach.reaches(w, v)) {
        component.push_back(w);
        placed[index(w)] = 1;
      }
    }
    out.push_back(std::move(component));
  }
  return out;
}

bool is_cofinal(const Graph& g) {
  Reachability reach(g);
  std::vector<VertexId> targets = sources(g);
  std::vector<std::vector<VertexId>> cyclic;
  for (auto& component : strongly_connected_components(g)) {
    bool has_cycle = component.size() > 1;
    for (EdgeId e : g.edges_into(component.front())) {
      has_cycle = has_cycle || g.source(e) == component.front();
    }
    if (has_cycle) cyclic.push_back(std::move(component));
  }
  for (VertexId v : g.vertices()) {
    for (VertexId w : targets) {
      if (!reach.reaches(v, w)) return false;
    }
    for (const auto& component : cyclic) {
      // Reaching one vertex of a component reaches all of them.
      if (!reach.reaches(v, component.front())) return false;
    }
  }
  return true;
}

}  // namespace couniv
