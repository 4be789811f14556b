#pragma once

// Maximal tails and the primitive-ideal catalog of a graph algebra.
//
// A maximal tail is a nonempty vertex set M with
//   (1) M closed under "reaches": w in M and v reaches w imply v in M;
//   (2) every v in M receiving edges receives one from inside M;
//   (3) any two vertices of M reach a common vertex of M.
// A tail is of circle type when some cycle inside M has no entrance from M,
// and of gauge type otherwise.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "couniv/cycles.hpp"
#include "couniv/graph.hpp"
#include "couniv/transforms.hpp"

namespace couniv {

struct MaximalTail {
  VertexSet vertices;
  /// Set for circle-type tails.
  std::optional<CycleClass> circle;

  bool is_gamma() const { return !circle.has_value(); }
  friend bool operator==(const MaximalTail&, const MaximalTail&) = default;
};

inline constexpr std::size_t kDefaultTailGuard = 16;

bool is_maximal_tail(const Graph& g, const VertexSet& m);

/// All maximal tails ordered by size and then lexicographically. Throws
/// GuardExceeded when the graph has more than `guard` vertices.
std::vector<MaximalTail> maximal_tails(const Graph& g,
                                       std::size_t guard = kDefaultTailGuard);

/// The unique cycle class inside m without an entrance in m, if any.
/// Throws PreconditionError if m is not a maximal tail and
/// ConsistencyError if two such classes exist.
std::optional<CycleClass> classify_tail(const Graph& g, const VertexSet& m);

/// The tail {alpha(v) : v reaches C} of the Toeplitz graph attached to an
/// entrance-free class C of the base graph. Throws PreconditionError if C is
/// not entrance-free in `base`.
MaximalTail tail_of_class(const Graph& base, const ToeplitzGraph& tg,
                          const CycleClass& c);

struct PrimIdealDescriptor {
  enum class Kind { GaugeInvariant, Circle };
  Kind kind;
  MaximalTail tail;
  /// Generators in element syntax; circle ideals use the symbol z for the
  /// circle parameter.
  std::vector<std::string> generators;
};

std::vector<PrimIdealDescriptor> prim_ideal_catalog(
    const Graph& g, std::size_t guard = kDefaultTailGuard);

}  // namespace couniv
