#include "couniv/transforms.hpp"

#include <algorithm>
#include <set>

#include "couniv/error.hpp"

namespace couniv {

namespace {

std::string alpha_name(const std::string& id) { return "alpha:" + id; }
std::string beta_name(const std::string& id) { return "beta:" + id; }

}  // namespace

Path ToeplitzGraph::alpha(const Path& p) const {
  if (p.is_empty()) return Path::empty(alpha_v[index(p.range())]);
  std::vector<EdgeId> edges;
  for (EdgeId e : p.edges()) edges.push_back(alpha_e[index(e)]);
  return Path::of(graph, std::move(edges));
}

Cycle ToeplitzGraph::alpha(const Cycle& c) const {
  return Cycle::from_path(graph, alpha(c.path()));
}

ToeplitzGraph toeplitz_graph(const Graph& g) {
  GraphBuilder b;
  for (VertexId v : g.vertices()) {
    b.add_vertex(alpha_name(g.name(v)));
    if (!g.is_source(v)) b.add_vertex(beta_name(g.name(v)));
  }
  for (EdgeId e : g.edges()) {
    const std::string& r = g.name(g.range(e));
    const std::string& s = g.name(g.source(e));
    b.add_edge(alpha_name(g.name(e)), alpha_name(s), alpha_name(r));
    if (!g.is_source(g.source(e))) {
      b.add_edge(beta_name(g.name(e)), beta_name(s), alpha_name(r));
    }
  }
  ToeplitzGraph tg{b.build(), {}, {}, {}, {}};
  for (VertexId v : g.vertices()) {
    tg.alpha_v.push_back(tg.graph.vertex(alpha_name(g.name(v))));
    tg.beta_v.push_back(tg.graph.find_vertex(beta_name(g.name(v))));
  }
  for (EdgeId e : g.edges()) {
    tg.alpha_e.push_back(tg.graph.edge(alpha_name(g.name(e))));
    tg.beta_e.push_back(tg.graph.find_edge(beta_name(g.name(e))));
  }
  return tg;
}

ReducedGraph reduced_graph(const Graph& g, const CuttingSet& x) {
  if (!is_cutting_set(g, x.edges)) {
    throw ValidationError("the given edges do not form a cutting set");
  }
  GraphBuilder b;
  for (VertexId v : g.vertices()) b.add_vertex("zeta:" + g.name(v));
  for (EdgeId e : g.edges()) {
    if (std::binary_search(x.edges.begin(), x.edges.end(), e)) continue;
    b.add_edge("zeta:" + g.name(e), "zeta:" + g.name(g.source(e)),
               "zeta:" + g.name(g.range(e)));
  }
  ReducedGraph f{b.build(), {}, {}};
  for (VertexId v : g.vertices()) {
    f.zeta_v.push_back(f.graph.vertex("zeta:" + g.name(v)));
  }
  for (EdgeId e : g.edges()) {
    f.zeta_e.push_back(f.graph.find_edge("zeta:" + g.name(e)));
  }
  return f;
}

ClassPhases class_phases(const Graph& g, const EdgePhases& kappa) {
  ClassPhases out;
  for (const auto& c : entrance_free_classes(g)) out.emplace(c.representative, Phase());
  std::set<Cycle> assigned;
  for (const auto& [e, phase] : kappa) {
    auto c = class_of_edge(g, e);
    if (!c) {
      throw ValidationError("edge '" + g.name(e) +
                            "' is not on an entrance-free cycle");
    }
    if (!assigned.insert(c->representative).second) {
      throw ValidationError("two phases given for the class of edge '" +
                            g.name(e) + "'");
    }
    out[c->representative] = phase;
  }
  return out;
}

EdgePhases edge_phases(const Graph& g, const CuttingSet& x,
                       const ClassPhases& kappa) {
  EdgePhases out;
  for (EdgeId e : x.edges) {
    auto c = class_of_edge(g, e);
    if (!c) throw ValidationError("edge '" + g.name(e) + "' is not in C(E)^1");
    auto it = kappa.find(c->representative);
    out.emplace(e, it == kappa.end() ? Phase() : it->second);
  }
  return out;
}

namespace {

std::vector<CyclePin> pins_for(const std::vector<CycleClass>& classes,
                               const ClassPhases& kappa,
                               const std::vector<CycleClass>* target) {
  std::vector<CyclePin> pins;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto it = kappa.find(classes[i].representative);
    if (it == kappa.end()) {
      throw ValidationError("no phase given for an entrance-free class");
    }
    pins.push_back({it->second, target ? (*target)[i] : classes[i]});
  }
  return pins;
}

void check_keys(const std::vector<CycleClass>& classes, const ClassPhases& kappa) {
  for (const auto& [cycle, phase] : kappa) {
    bool known = std::any_of(classes.begin(), classes.end(),
                             [&](const CycleClass& c) { return c.representative == cycle; });
    if (!known) throw ValidationError("phase given for a cycle outside C(E)");
  }
}

}  // namespace

IdealGenerators ikappa_generators(const Graph& g, const ClassPhases& kappa) {
  auto classes = entrance_free_classes(g);
  check_keys(classes, kappa);
  IdealGenerators out;
  for (VertexId v : g.vertices()) {
    if (!g.is_source(v)) out.gaps.push_back(v);
  }
  out.pins = pins_for(classes, kappa, nullptr);
  return out;
}

IdealGenerators jkappa_generators(const Graph& base, const ToeplitzGraph& tg,
                                  const ClassPhases& kappa) {
  auto classes = entrance_free_classes(base);
  check_keys(classes, kappa);
  std::vector<CycleClass> lifted;
  for (const auto& c : classes) {
    lifted.push_back(make_class(tg.graph, tg.alpha(c.representative)));
  }
  IdealGenerators out;
  for (VertexId v : base.vertices()) {
    if (tg.beta_v[index(v)]) out.projections.push_back(*tg.beta_v[index(v)]);
  }
  out.pins = pins_for(classes, kappa, &lifted);
  return out;
}

Phase Rescaling::factor(EdgeId e) const {
  auto it = factors.find(e);
  return it == factors.end() ? Phase() : it->second;
}

Phase Rescaling::along(const Path& p) const {
  Phase out;
  for (EdgeId e : p.edges()) out = out * factor(e);
  return out;
}

Rescaling Rescaling::inverse() const {
  Rescaling out;
  for (const auto& [e, phase] : factors) out.factors.emplace(e, phase.conj());
  return out;
}

Rescaling rescale_generators(const Graph& g, const CuttingSet& x,
                             const EdgePhases& kappa) {
  if (!is_cutting_set(g, x.edges)) {
    throw ValidationError("the given edges do not form a cutting set");
  }
  Rescaling out;
  for (EdgeId e : x.edges) {
    auto it = kappa.find(e);
    if (it == kappa.end()) {
      throw ValidationError("no phase given for cutting-set edge '" +
                            g.name(e) + "'");
    }
    out.factors.emplace(e, it->second.conj());
  }
  if (kappa.size() != x.edges.size()) {
    throw ValidationError("phase given for an edge outside the cutting set");
  }
  return out;
}

}  // namespace couniv
