#pragma once

// Boundary paths: finite paths that stop at a source, and eventually
// periodic infinite paths prefix.period.period...
//
// Eventually periodic paths are stored in a canonical form so that two
// encodings describe the same infinite path exactly when they compare
// equal. The period of a simple cycle is already primitive, so the form is
// obtained by absorbing the prefix into the periodic tail for as long as
// its last edge matches the last edge of the period; the period is then
// read from the first position at which the path becomes periodic.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "couniv/cycles.hpp"
#include "couniv/graph.hpp"

namespace couniv {

class BoundaryPath {
 public:
  /// Throws PreconditionError unless s(alpha) receives no edges.
  static BoundaryPath finite(const Graph& g, Path alpha);
  /// prefix followed by period repeated forever, canonicalised. Throws
  /// ValidationError unless s(prefix) = r(period).
  static BoundaryPath periodic(const Graph& g, Path prefix, Cycle period);

  bool is_finite() const noexcept { return !period_.has_value(); }
  /// The whole path when finite; the preperiod otherwise.
  const Path& prefix() const noexcept { return prefix_; }
  /// Requires !is_finite().
  const Cycle& period() const { return *period_; }

  VertexId range() const noexcept { return prefix_.range(); }
  /// Length of a finite path.
  std::size_t size() const { return prefix_.size(); }
  /// The finite empty path at a source.
  bool is_empty() const noexcept { return is_finite() && prefix_.is_empty(); }
  /// Edge i (0-based) of the path; requires i < size() when finite.
  EdgeId at(std::size_t i) const;
  /// Vertex x(n): the range of edge n, or the final source of a finite path.
  VertexId vertex_at(const Graph& g, std::size_t n) const;

  friend std::strong_ordering operator<=>(const BoundaryPath& a,
                                          const BoundaryPath& b);
  friend bool operator==(const BoundaryPath& a, const BoundaryPath& b) {
    return a.prefix_ == b.prefix_ && a.period_ == b.period_;
  }

 private:
  BoundaryPath(Path prefix, std::optional<Cycle> period)
      : prefix_(std::move(prefix)), period_(std::move(period)) {}

  Path prefix_;
  std::optional<Cycle> period_;
};

/// Drops the first n edges. Throws PreconditionError when a finite path is
/// shorter than n.
BoundaryPath shift(const Graph& g, const BoundaryPath& x, std::size_t n = 1);

/// lambda x; requires s(lambda) = r(x), else ValidationError.
BoundaryPath prepend(const Graph& g, const Path& lambda, const BoundaryPath& x);

/// The y with x = beta y, if x starts with beta.
std::optional<BoundaryPath> strip_prefix(const Graph& g, const BoundaryPath& x,
                                         const Path& beta);

/// `alpha|.` for finite paths and `prefix|(period)` otherwise, with empty
/// paths written `[v]`.
std::string to_string(const Graph& g, const BoundaryPath& x);

/// Finite boundary paths of length at most d together with every
/// eventually periodic path whose preperiod has length at most d and whose
/// period is a simple cycle. Sorted and duplicate free.
std::vector<BoundaryPath> boundary_set(const Graph& g, std::size_t depth);

/// Membership in the Omega subspace: finite, or with an entrance-free
/// period.
bool in_omega(const Graph& g, const BoundaryPath& x);

/// boundary_set(g, d) restricted to Omega.
std::vector<BoundaryPath> omega_set(const Graph& g, std::size_t depth);

/// A vertex v and a boundary path x such that v reaches no vertex of x,
/// found among boundary_set(g, |E^0|). Empty exactly when g is cofinal.
std::optional<std::pair<VertexId, BoundaryPath>> cofinality_witness(
    const Graph& g);

}  // namespace couniv
