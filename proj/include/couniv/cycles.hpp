#pragma once

// Simple cycles, entrance-free cycle classes C(E), cutting sets and the
// factorisation mu(x) = x lambda(x).

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "couniv/graph.hpp"

namespace couniv {

/// Sorted list of vertices, used wherever a vertex subset is needed.
using VertexSet = std::vector<VertexId>;

bool contains(const VertexSet& set, VertexId v);

/// A simple cycle: a closed path whose edge sources are pairwise distinct.
class Cycle {
 public:
  /// Throws ValidationError unless `p` is a nonempty simple closed path.
  static Cycle from_path(const Graph& g, Path p);
  static Cycle from_edges(const Graph& g, std::vector<EdgeId> edges) {
    return from_path(g, Path::of(g, std::move(edges)));
  }

  const Path& path() const noexcept { return path_; }
  std::size_t size() const noexcept { return path_.size(); }
  EdgeId operator[](std::size_t i) const { return path_[i]; }
  /// r(mu) = s(mu).
  VertexId base() const noexcept { return path_.range(); }

  /// The rotation mu_{k+1} ... mu_n mu_1 ... mu_k.
  Cycle rotated(const Graph& g, std::size_t k) const;
  /// The least rotation by edge id.
  Cycle canonical(const Graph& g) const;
  /// The rotation with range v; requires v on the cycle.
  Cycle rotation_at(const Graph& g, VertexId v) const;

  /// [mu]^0, sorted.
  VertexSet vertex_set(const Graph& g) const;
  /// [mu]^1, sorted.
  std::vector<EdgeId> edge_set() const;

  friend auto operator<=>(const Cycle&, const Cycle&) = default;
  friend bool operator==(const Cycle&, const Cycle&) = default;

 private:
  explicit Cycle(Path p) : path_(std::move(p)) {}
  Path path_;
};

/// A cycle up to cyclic permutation.
struct CycleClass {
  Cycle representative;          // least rotation
  std::vector<Cycle> rotations;  // starting at mu_1, mu_2, ...
  VertexSet vertex_set;
  std::vector<EdgeId> edge_set;

  friend bool operator==(const CycleClass& a, const CycleClass& b) {
    return a.representative == b.representative;
  }
  friend auto operator<=>(const CycleClass& a, const CycleClass& b) {
    return a.representative <=> b.representative;
  }
};

CycleClass make_class(const Graph& g, const Cycle& c);

/// Bound on the number of simple cycles enumerated before giving up.
inline constexpr std::size_t kDefaultCycleGuard = 100000;

/// All simple cycles, one per class, in canonical rotation and sorted.
/// Throws GuardExceeded past `guard` cycles.
std::vector<Cycle> simple_cycles(const Graph& g,
                                 std::size_t guard = kDefaultCycleGuard);

/// Whether some edge other than mu_i has range r(mu_i) and source in `m`.
/// Requires [mu]^0 to be a subset of `m`.
bool has_entrance_in(const Graph& g, const Cycle& mu, const VertexSet& m);

/// C(E): classes of cycles with no entrance in the whole vertex set.
std::vector<CycleClass> entrance_free_classes(const Graph& g);

/// The class of C(E) containing edge e, if any.
std::optional<CycleClass> class_of_edge(const Graph& g, EdgeId e);

/// One edge from each class of C(E).
struct CuttingSet {
  std::vector<EdgeId> edges;  // sorted

  friend bool operator==(const CuttingSet&, const CuttingSet&) = default;
};

bool is_cutting_set(const Graph& g, std::span<const EdgeId> edges);
/// Every cutting set, lexicographically ordered. Throws GuardExceeded when
/// there would be more than `guard` of them.
std::vector<CuttingSet> cutting_sets(const Graph& g,
                                     std::size_t guard = kDefaultCycleGuard);
/// The least edge of each class.
CuttingSet canonical_cutting_set(const Graph& g);

struct MuLambda {
  Cycle mu;     // the entrance-free cycle with mu_1 = x
  Path lambda;  // mu_2 ... mu_n, or the empty path at s(x)
};

/// Throws PreconditionError unless x lies on an entrance-free cycle.
MuLambda mu_lambda(const Graph& g, EdgeId x);

}  // namespace couniv
