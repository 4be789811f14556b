#include "couniv/cycles.hpp"

#include <algorithm>
#include <set>

#include "couniv/error.hpp"

namespace couniv {

bool contains(const VertexSet& set, VertexId v) {
  return std::binary_search(set.begin(), set.end(), v);
}

Cycle Cycle::from_path(const Graph& g, Path p) {
  if (p.is_empty()) throw ValidationError("a cycle needs at least one edge");
  if (p.range() != p.source()) {
    throw ValidationError("path " + to_string(g, p) + " is not closed");
  }
  std::set<VertexId> seen;
  for (EdgeId e : p.edges()) {
    if (!seen.insert(g.source(e)).second) {
      throw ValidationError("path " + to_string(g, p) + " is not simple");
    }
  }
  return Cycle(std::move(p));
}

Cycle Cycle::rotated(const Graph& g, std::size_t k) const {
  k %= size();
  if (k == 0) return *this;
  std::vector<EdgeId> edges(path_.edges().begin(), path_.edges().end());
  std::rotate(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(k),
              edges.end());
  return Cycle(Path::of(g, std::move(edges)));
}

Cycle Cycle::canonical(const Graph& g) const {
  // Edges of a simple cycle are distinct, so the least rotation is the one
  // starting at the least edge.
  auto edges = path_.edges();
  auto it = std::min_element(edges.begin(), edges.end());
  return rotated(g, static_cast<std::size_t>(it - edges.begin()));
}

Cycle Cycle::rotation_at(const Graph& g, VertexId v) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (g.range(path_[i]) == v) return rotated(g, i);
  }
  throw PreconditionError("vertex '" + g.name(v) + "' is not on cycle " +
                          to_string(g, path_));
}

VertexSet Cycle::vertex_set(const Graph& g) const {
  VertexSet out;
  for (EdgeId e : path_.edges()) out.push_back(g.source(e));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeId> Cycle::edge_set() const {
  std::vector<EdgeId> out(path_.edges().begin(), path_.edges().end());
  std::sort(out.begin(), out.end());
  return out;
}

CycleClass make_class(const Graph& g, const Cycle& c) {
  Cycle rep = c.canonical(g);
  std::vector<Cycle> rotations;
  for (std::size_t i = 0; i < rep.size(); ++i) {
    rotations.push_back(rep.rotated(g, i));
  }
  return CycleClass{rep, std::move(rotations), rep.vertex_set(g),
                    rep.edge_set()};
}

std::vector<Cycle> simple_cycles(const Graph& g, std::size_t guard) {
  // Each cycle is found once, from its least vertex, by a DFS confined to
  // that vertex's strongly connected component and to larger vertices.
  std::vector<std::size_t> component(g.vertex_count());
  {
    auto components = strongly_connected_components(g);
    for (std::size_t c = 0; c < components.size(); ++c) {
      for (VertexId v : components[c]) component[index(v)] = c;
    }
  }

  std::vector<Cycle> out;
  std::vector<EdgeId> stack;
  std::vector<char> on_path(g.vertex_count(), 0);

  auto dfs = [&](auto&& self, VertexId start, VertexId at) -> void {
    for (EdgeId e : g.edges_into(at)) {
      VertexId w = g.source(e);
      if (w == start) {
        stack.push_back(e);
        if (out.size() == guard) {
          throw GuardExceeded("more than " + std::to_string(guard) +
                              " simple cycles");
        }
        out.push_back(Cycle::from_edges(g, stack).canonical(g));
        stack.pop_back();
      } else if (w > start && !on_path[index(w)] &&
                 component[index(w)] == component[index(start)]) {
        stack.push_back(e);
        on_path[index(w)] = 1;
        self(self, start, w);
        on_path[index(w)] = 0;
        stack.pop_back();
      }
    }
  };

  for (VertexId v : g.vertices()) {
    on_path[index(v)] = 1;
    dfs(dfs, v, v);
    on_path[index(v)] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool has_entrance_in(const Graph& g, const Cycle& mu, const VertexSet& m) {
  for (VertexId v : mu.vertex_set(g)) {
    if (!contains(m, v)) {
      throw PreconditionError("cycle " + to_string(g, mu.path()) +
                              " is not contained in the vertex set");
    }
  }
  for (EdgeId own : mu.path().edges()) {
    for (EdgeId e : g.edges_into(g.range(own))) {
      if (e != own && contains(m, g.source(e))) return true;
    }
  }
  return false;
}

std::vector<CycleClass> entrance_free_classes(const Graph& g) {
  VertexSet all(g.vertices().begin(), g.vertices().end());
  std::vector<CycleClass> out;
  for (const Cycle& c : simple_cycles(g)) {
    if (!has_entrance_in(g, c, all)) out.push_back(make_class(g, c));
  }
  return out;
}

std::optional<CycleClass> class_of_edge(const Graph& g, EdgeId e) {
  for (auto& c : entrance_free_classes(g)) {
    if (std::binary_search(c.edge_set.begin(), c.edge_set.end(), e)) return c;
  }
  return std::nullopt;
}

bool is_cutting_set(const Graph& g, std::span<const EdgeId> edges) {
  auto classes = entrance_free_classes(g);
  std::vector<int> hits(classes.size(), 0);
  for (EdgeId e : edges) {
    bool found = false;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto& es = classes[i].edge_set;
      if (std::binary_search(es.begin(), es.end(), e)) {
        ++hits[i];
        found = true;
      }
    }
    if (!found) return false;
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

std::vector<CuttingSet> cutting_sets(const Graph& g, std::size_t guard) {
  auto classes = entrance_free_classes(g);
  std::size_t count = 1;
  for (const auto& c : classes) {
    count *= c.edge_set.size();
    if (count > guard) {
      throw GuardExceeded("more than " + std::to_string(guard) +
                          " cutting sets");
    }
  }
  std::vector<CuttingSet> out;
  std::vector<std::size_t> choice(classes.size(), 0);
  while (true) {
    CuttingSet x;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      x.edges.push_back(classes[i].edge_set[choice[i]]);
    }
    std::sort(x.edges.begin(), x.edges.end());
    out.push_back(std::move(x));
    bool advanced = false;
    for (std::size_t i = classes.size(); i-- > 0;) {
      if (++choice[i] < classes[i].edge_set.size()) {
        advanced = true;
        break;
      }
      choice[i] = 0;
    }
    if (!advanced) break;
  }
  std::sort(out.begin(), out.end(),
            [](const CuttingSet& a, const CuttingSet& b) {
              return a.edges < b.edges;
            });
  return out;
}

CuttingSet canonical_cutting_set(const Graph& g) {
  CuttingSet x;
  for (const auto& c : entrance_free_classes(g)) {
    x.edges.push_back(c.edge_set.front());
  }
  std::sort(x.edges.begin(), x.edges.end());
  return x;
}

MuLambda mu_lambda(const Graph& g, EdgeId x) {
  auto c = class_of_edge(g, x);
  if (!c) {
    throw PreconditionError("edge '" + g.name(x) +
                            "' is not on an entrance-free cycle");
  }
  for (const Cycle& mu : c->rotations) {
    if (mu[0] == x) {
      Path lambda = mu.path().drop_front(g, 1);
      return MuLambda{mu, std::move(lambda)};
    }
  }
  throw ConsistencyError("class rotations do not start at every edge");
}

}  // namespace couniv
