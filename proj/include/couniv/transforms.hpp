#pragma once

// Graph transformations and symbolic ideal generators.
//
//   * The Toeplitz graph doubles every vertex v that receives edges into
//     alpha(v) and a new source beta(v); each edge e gets a copy alpha(e)
//     and, when s(e) receives edges, a second copy beta(e) leaving beta(s(e)).
//   * The reduced graph deletes the edges of a cutting set.
//   * IdealGenerators describe the generating sets of the kernels used to
//     pass from the Toeplitz algebra to the co-universal quotient.

#include <map>
#include <optional>
#include <vector>

#include "couniv/cycles.hpp"
#include "couniv/graph.hpp"
#include "couniv/scalar.hpp"

namespace couniv {

struct ToeplitzGraph {
  Graph graph;
  std::vector<VertexId> alpha_v;                // indexed by base vertex
  std::vector<std::optional<VertexId>> beta_v;  // set when vE^1 is nonempty
  std::vector<EdgeId> alpha_e;                  // indexed by base edge
  std::vector<std::optional<EdgeId>> beta_e;    // set when s(e) receives edges

  /// alpha applied edgewise; the empty path maps to the empty path at
  /// alpha(v).
  Path alpha(const Path& p) const;
  Cycle alpha(const Cycle& c) const;
};

ToeplitzGraph toeplitz_graph(const Graph& g);

struct ReducedGraph {
  Graph graph;
  std::vector<VertexId> zeta_v;
  std::vector<std::optional<EdgeId>> zeta_e;  // empty for cutting-set edges
};

/// Throws ValidationError unless x is a cutting set of g.
ReducedGraph reduced_graph(const Graph& g, const CuttingSet& x);

/// Phases indexed by entrance-free class, keyed by canonical representative.
using ClassPhases = std::map<Cycle, Phase>;
/// Phases indexed by edge, normally the edges of a cutting set.
using EdgePhases = std::map<EdgeId, Phase>;

/// Moves phases on cutting-set edges to their classes. Throws
/// ValidationError if an edge is not on an entrance-free cycle or two edges
/// share a class. Classes without an edge get the trivial phase.
ClassPhases class_phases(const Graph& g, const EdgePhases& kappa);
/// Moves phases on classes to the edges of x.
EdgePhases edge_phases(const Graph& g, const CuttingSet& x,
                       const ClassPhases& kappa);

/// kappa p_{r(mu)} - s_mu for every rotation mu of `cls`.
struct CyclePin {
  Phase kappa;
  CycleClass cls;
};

/// Generators of an ideal in graph-algebra symbols over `graph_of_symbols`:
/// gaps Delta_v = p_v - sum s_e s_e^*, vertex projections p_v, and cycle
/// pins.
struct IdealGenerators {
  std::vector<VertexId> gaps;
  std::vector<VertexId> projections;
  std::vector<CyclePin> pins;
};

/// The ideal whose quotient of the Toeplitz algebra is the kappa-twisted
/// co-universal algebra. Throws ValidationError if kappa misses a class or
/// names a cycle that is not an entrance-free class representative.
IdealGenerators ikappa_generators(const Graph& g, const ClassPhases& kappa);

/// The same ideal transported into C*(Toeplitz graph): beta-vertex
/// projections and pins on alpha-cycles.
IdealGenerators jkappa_generators(const Graph& base, const ToeplitzGraph& tg,
                                  const ClassPhases& kappa);

/// The gauge rescaling s_x -> factor(x) s_x for x in a cutting set, all
/// other generators fixed.
struct Rescaling {
  EdgePhases factors;

  Phase factor(EdgeId e) const;
  /// Product of the factors of the edges of p.
  Phase along(const Path& p) const;
  Rescaling inverse() const;
};

/// The rescaling that carries I^1 onto I^kappa: factors conj(kappa(x)).
/// Throws ValidationError if kappa is not defined exactly on x.
Rescaling rescale_generators(const Graph& g, const CuttingSet& x,
                             const EdgePhases& kappa);

}  // namespace couniv
