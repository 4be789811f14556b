#include "couniv/boundary.hpp"

#include <algorithm>
#include <set>

#include "couniv/error.hpp"

namespace couniv {

namespace {

// Whole-graph data needed to test Omega membership.
std::vector<std::vector<EdgeId>> entrance_free_edge_sets(const Graph& g) {
  std::vector<std::vector<EdgeId>> out;
  for (const auto& c : entrance_free_classes(g)) out.push_back(c.edge_set);
  return out;
}

bool period_in(const std::vector<std::vector<EdgeId>>& sets, const Cycle& c) {
  auto edges = c.edge_set();
  return std::find(sets.begin(), sets.end(), edges) != sets.end();
}

}  // namespace

BoundaryPath BoundaryPath::finite(const Graph& g, Path alpha) {
  if (!g.is_source(alpha.source())) {
    throw PreconditionError("finite boundary path " + to_string(g, alpha) +
                            " must end at a vertex receiving no edges");
  }
  return BoundaryPath(std::move(alpha), std::nullopt);
}

BoundaryPath BoundaryPath::periodic(const Graph& g, Path prefix, Cycle period) {
  if (prefix.source() != period.base()) {
    throw ValidationError("prefix " + to_string(g, prefix) +
                          " does not compose with period " +
                          to_string(g, period.path()));
  }
  while (!prefix.is_empty() &&
         prefix[prefix.size() - 1] == period[period.size() - 1]) {
    prefix = prefix.take_front(g, prefix.size() - 1);
    period = period.rotated(g, period.size() - 1);
  }
  return BoundaryPath(std::move(prefix), std::move(period));
}

EdgeId BoundaryPath::at(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  if (!period_) throw PreconditionError("index past end of finite path");
  return (*period_)[(i - prefix_.size()) % period_->size()];
}

VertexId BoundaryPath::vertex_at(const Graph& g, std::size_t n) const {
  if (is_finite() && n >= size()) {
    if (n > size()) throw PreconditionError("vertex index past end of path");
    return prefix_.source();
  }
  return g.range(at(n));
}

std::strong_ordering operator<=>(const BoundaryPath& a, const BoundaryPath& b) {
  if (auto c = a.prefix_ <=> b.prefix_; c != 0) return c;
  if (a.is_finite() != b.is_finite()) {
    return a.is_finite() ? std::strong_ordering::less
                         : std::strong_ordering::greater;
  }
  if (a.is_finite()) return std::strong_ordering::equal;
  return a.period_->path() <=> b.period_->path();
}

BoundaryPath shift(const Graph& g, const BoundaryPath& x, std::size_t n) {
  const Path& prefix = x.prefix();
  if (n <= prefix.size()) {
    Path rest = prefix.drop_front(g, n);
    if (x.is_finite()) return BoundaryPath::finite(g, std::move(rest));
    // The remaining prefix still ends where it did, so it stays canonical.
    return BoundaryPath::periodic(g, std::move(rest), x.period());
  }
  if (x.is_finite()) {
    throw PreconditionError("cannot shift the finite path " + to_string(g, x) +
                            " by " + std::to_string(n));
  }
  std::size_t k = (n - prefix.size()) % x.period().size();
  return BoundaryPath::periodic(g, Path::empty(x.period().rotated(g, k).base()),
                                x.period().rotated(g, k));
}

BoundaryPath prepend(const Graph& g, const Path& lambda, const BoundaryPath& x) {
  if (lambda.source() != x.range()) {
    throw ValidationError("path " + to_string(g, lambda) +
                          " cannot be prepended to " + to_string(g, x));
  }
  Path joined = lambda.concat(x.prefix());
  if (x.is_finite()) return BoundaryPath::finite(g, std::move(joined));
  return BoundaryPath::periodic(g, std::move(joined), x.period());
}

std::optional<BoundaryPath> strip_prefix(const Graph& g, const BoundaryPath& x,
                                         const Path& beta) {
  if (beta.range() != x.range()) return std::nullopt;
  if (x.is_finite() && beta.size() > x.size()) return std::nullopt;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (x.at(i) != beta[i]) return std::nullopt;
  }
  return shift(g, x, beta.size());
}

std::string to_string(const Graph& g, const BoundaryPath& x) {
  std::string head = to_string(g, x.prefix());
  if (x.is_finite()) return head + "|.";
  return head + "|(" + to_string(g, x.period().path()) + ")";
}

std::vector<BoundaryPath> boundary_set(const Graph& g, std::size_t depth) {
  std::set<BoundaryPath> out;
  std::vector<Cycle> rotations;
  for (const Cycle& c : simple_cycles(g)) {
    for (std::size_t k = 0; k < c.size(); ++k) rotations.push_back(c.rotated(g, k));
  }
  for (VertexId v : g.vertices()) {
    for (Path& p : paths_up_to(g, v, depth, PathMode::AtMost)) {
      if (g.is_source(p.source())) out.insert(BoundaryPath::finite(g, p));
      for (const Cycle& mu : rotations) {
        if (mu.base() == p.source()) out.insert(BoundaryPath::periodic(g, p, mu));
      }
    }
  }
  return {out.begin(), out.end()};
}

bool in_omega(const Graph& g, const BoundaryPath& x) {
  return x.is_finite() || period_in(entrance_free_edge_sets(g), x.period());
}

std::vector<BoundaryPath> omega_set(const Graph& g, std::size_t depth) {
  auto sets = entrance_free_edge_sets(g);
  std::vector<BoundaryPath> out;
  for (auto& x : boundary_set(g, depth)) {
    if (x.is_finite() || period_in(sets, x.period())) out.push_back(std::move(x));
  }
  return out;
}

std::optional<std::pair<VertexId, BoundaryPath>> cofinality_witness(
    const Graph& g) {
  Reachability reach(g);
  auto candidates = boundary_set(g, g.vertex_count());
  for (VertexId v : g.vertices()) {
    for (const BoundaryPath& x : candidates) {
      // Every vertex of x occurs among its first |prefix| + |period| + 1.
      std::size_t horizon =
          x.prefix().size() + (x.is_finite() ? 0 : x.period().size());
      bool hit = false;
      for (std::size_t n = 0; n <= horizon && !hit; ++n) {
        hit = reach.reaches(v, x.vertex_at(g, n));
      }
      if (!hit) return std::pair{v, x};
    }
  }
  return std::nullopt;
}

}  // namespace couniv
