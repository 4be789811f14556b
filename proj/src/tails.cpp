#include "couniv/tails.hpp"

#include <algorithm>

#include "couniv/error.hpp"

namespace couniv {

namespace {

bool is_tail(const Graph& g, const Reachability& reach, const VertexSet& m) {
  if (m.empty()) return false;
  for (VertexId w : m) {
    for (VertexId v : g.vertices()) {
      if (reach.reaches(v, w) && !contains(m, v)) return false;
    }
  }
  for (VertexId v : m) {
    if (g.is_source(v)) continue;
    auto in = g.edges_into(v);
    if (std::none_of(in.begin(), in.end(),
                     [&](EdgeId e) { return contains(m, g.source(e)); })) {
      return false;
    }
  }
  for (VertexId u : m) {
    for (VertexId v : m) {
      if (v < u) continue;
      bool common = std::any_of(m.begin(), m.end(), [&](VertexId w) {
        return reach.reaches(u, w) && reach.reaches(v, w);
      });
      if (!common) return false;
    }
  }
  return true;
}

std::optional<CycleClass> classify(const Graph& g, const VertexSet& m) {
  std::optional<CycleClass> found;
  for (const Cycle& c : simple_cycles(g)) {
    auto vs = c.vertex_set(g);
    if (!std::includes(m.begin(), m.end(), vs.begin(), vs.end())) continue;
    if (has_entrance_in(g, c, m)) continue;
    if (found) {
      throw ConsistencyError(
          "maximal tail contains two cycles without an entrance in it");
    }
    found = make_class(g, c);
  }
  return found;
}

std::string path_symbol(const Graph& g, const Path& p) {
  return "s[" + to_string(g, p) + "]";
}

}  // namespace

bool is_maximal_tail(const Graph& g, const VertexSet& m) {
  return is_tail(g, Reachability(g), m);
}

std::vector<MaximalTail> maximal_tails(const Graph& g, std::size_t guard) {
  const std::size_t n = g.vertex_count();
  if (n > guard) {
    throw GuardExceeded("maximal tail enumeration limited to " +
                        std::to_string(guard) + " vertices, graph has " +
                        std::to_string(n));
  }
  Reachability reach(g);
  std::vector<MaximalTail> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet m;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) m.push_back(VertexId{static_cast<std::uint32_t>(i)});
    }
    if (is_tail(g, reach, m)) out.push_back({m, classify(g, m)});
  }
  std::sort(out.begin(), out.end(), [](const MaximalTail& a, const MaximalTail& b) {
    if (a.vertices.size() != b.vertices.size()) {
      return a.vertices.size() < b.vertices.size();
    }
    return a.vertices < b.vertices;
  });
  return out;
}

std::optional<CycleClass> classify_tail(const Graph& g, const VertexSet& m) {
  if (!is_maximal_tail(g, m)) {
    throw PreconditionError("vertex set is not a maximal tail");
  }
  return classify(g, m);
}

MaximalTail tail_of_class(const Graph& base, const ToeplitzGraph& tg,
                          const CycleClass& c) {
  VertexSet all(base.vertices().begin(), base.vertices().end());
  if (has_entrance_in(base, c.representative, all)) {
    throw PreconditionError("cycle class has an entrance");
  }
  Reachability reach(base);
  MaximalTail t;
  for (VertexId v : base.vertices()) {
    bool hits = std::any_of(c.vertex_set.begin(), c.vertex_set.end(),
                            [&](VertexId w) { return reach.reaches(v, w); });
    if (hits) t.vertices.push_back(tg.alpha_v[index(v)]);
  }
  std::sort(t.vertices.begin(), t.vertices.end());
  t.circle = make_class(tg.graph, tg.alpha(c.representative));
  return t;
}

std::vector<PrimIdealDescriptor> prim_ideal_catalog(const Graph& g,
                                                    std::size_t guard) {
  std::vector<PrimIdealDescriptor> out;
  for (auto& tail : maximal_tails(g, guard)) {
    PrimIdealDescriptor d{tail.is_gamma() ? PrimIdealDescriptor::Kind::GaugeInvariant
                                          : PrimIdealDescriptor::Kind::Circle,
                          tail, {}};
    for (VertexId w : g.vertices()) {
      if (!contains(tail.vertices, w)) d.generators.push_back("p[" + g.name(w) + "]");
    }
    if (tail.circle) {
      const Path& mu = tail.circle->representative.path();
      d.generators.push_back("z*p[" + g.name(mu.range()) + "] - " +
                             path_symbol(g, mu));
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace couniv
