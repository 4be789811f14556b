#pragma once

// Concrete representations of graph algebras and relation checking.
//
// Every representation acts on a Hilbert space with an orthonormal basis of
// paths: finite paths for the left-regular representation, boundary paths
// for the boundary and twisted representations, and the Omega subspace of
// boundary paths for the Omega representation. A monomial s_a s_b^* sends
// the basis vector of b y to that of a y and kills every other vector; the
// twisted representation also multiplies by kappa(x) for each cutting-set
// edge x in a and by conj(kappa(x)) for each one in b.
//
// Operator equality is decided on a finite test set. For elements whose
// keys have length at most L, an operator applied to a point lambda z with
// |lambda| = L equals its action on lambda with z appended. Appending a
// tail that is not purely periodic is injective, so one such tail per
// lambda detects every difference. Only when the sole continuation is a
// periodic orbit (lambda ends on an entrance-free cycle) is that orbit
// used instead, and then it is the only point with that prefix anyway.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "couniv/algebra.hpp"
#include "couniv/boundary.hpp"
#include "couniv/graph.hpp"
#include "couniv/scalar.hpp"
#include "couniv/transforms.hpp"

namespace couniv {

using BasisElement = std::variant<Path, BoundaryPath>;
using Vector = std::map<BasisElement, Scalar>;

std::string to_string(const Graph& g, const BasisElement& x);
std::string to_string(const Graph& g, const Vector& v);

enum class RepKind { LeftRegular, Boundary, Omega, Twisted };

/// A point of a test set. Stand-ins are eventually periodic paths used in
/// the Omega representation in place of aperiodic paths with the same
/// prefix; the operators in scope cannot tell the two apart.
struct TestPoint {
  BasisElement x;
  bool stand_in = false;
};

std::string to_string(const Graph& g, const TestPoint& t);

class Representation {
 public:
  static Representation left_regular(const Graph& g);
  static Representation boundary(const Graph& g);
  static Representation omega(const Graph& g);
  /// kappa lives on edges of entrance-free cycles, at most one per class;
  /// classes without an edge are untwisted.
  static Representation twisted(const Graph& g, const EdgePhases& kappa);

  RepKind kind() const;
  const Graph& graph() const;
  const EdgePhases& kappa() const;

  /// Whether x belongs to this representation's basis.
  bool accepts(const BasisElement& x) const;

  /// Throws PreconditionError when x is not a basis element.
  Vector apply(const AlgebraElement& a, const BasisElement& x) const;
  Vector apply(const AlgebraElement& a, const Vector& v) const;
  /// Action on a test point, stand-ins included.
  Vector act(const AlgebraElement& a, const TestPoint& t) const;

  /// Test points deciding equality of elements with keys of length at most
  /// `key_length`. Computed once per length and cached.
  const std::vector<TestPoint>& test_set(std::size_t key_length) const;

 private:
  struct State;
  explicit Representation(std::shared_ptr<State> s) : state_(std::move(s)) {}
  std::shared_ptr<State> state_;
};

/// The first test point on which a and b act differently.
std::optional<TestPoint> difference_witness(const Representation& rep,
                                            const AlgebraElement& a,
                                            const AlgebraElement& b,
                                            std::size_t key_length);
bool operator_equal(const Representation& rep, const AlgebraElement& a,
                    const AlgebraElement& b);

/// Images of the generators p_v, s_e of a base graph as elements acting in
/// a representation (possibly of a different graph).
class Family {
 public:
  Family(Representation rep, Graph base, std::vector<AlgebraElement> vertices,
         std::vector<AlgebraElement> edges);
  /// p_v and s_e themselves.
  static Family standard(const Representation& rep);

  const Representation& rep() const { return rep_; }
  const Graph& base() const { return base_; }
  const AlgebraElement& vertex(VertexId v) const { return vertices_[index(v)]; }
  const AlgebraElement& edge(EdgeId e) const { return edges_[index(e)]; }
  /// Product of edge images along p; the vertex image for an empty path.
  AlgebraElement path(const Path& p) const;
  std::size_t max_image_length() const;

 private:
  Representation rep_;
  Graph base_;
  std::vector<AlgebraElement> vertices_;
  std::vector<AlgebraElement> edges_;
};

/// q_v = p_alpha(v) + p_beta(v) and t_e = s_alpha(e) + s_beta(e), with the
/// beta summands present when defined, acting in `rep` over the Toeplitz
/// graph.
Family toeplitz_family(const Graph& base, const ToeplitzGraph& tg,
                       const Representation& rep);

/// The twisted boundary family with every cutting-set generator multiplied
/// by conj(kappa). Throws PreconditionError for other kinds.
Family rescale_family(const Representation& twisted);

/// For each entrance-free class of the base graph, the phase by which s_mu
/// acts on the range of p_{r(mu)}, mu the canonical rotation. Throws
/// PreconditionError when some s_mu is not such a multiple.
ClassPhases extract_kappa(const Family& f);
ClassPhases extract_kappa(const Representation& rep);

enum class Level { TCK, CK, Reduced, NormalizedReduced };

std::string to_string(Level level);
/// Accepts tck, ck, reduced, normalized.
Level parse_level(std::string_view text);

struct RelationFailure {
  std::string relation;
  std::string witness;
};

struct RelationReport {
  Level level;
  std::vector<RelationFailure> failures;
  /// Phases found while checking the reduced relation.
  ClassPhases kappa;

  bool pass() const { return failures.empty(); }
};

/// Smallest depth at which the relations of `level` are decided.
std::size_t minimum_depth(const Graph& base, Level level);

/// Checks every relation instance of `level` and reports all failures with
/// the least test point witnessing each. Throws PreconditionError when
/// depth is below minimum_depth.
RelationReport verify_relations(const Family& f, Level level, std::size_t depth);
RelationReport verify_relations(const Representation& rep, Level level,
                                std::size_t depth);

/// {"level", "pass", "failures": [{"relation", "witness"}]}, plus "kappa"
/// for reduced levels.
nlohmann::json to_json(const Graph& base, const RelationReport& r);

}  // namespace couniv
