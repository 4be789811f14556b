#pragma once

// Finite sums of monomials s_alpha s_beta^* with s(alpha) = s(beta).
//
// The product of two monomials follows the path-algebra rule
//
//   (s_a s_b^*)(s_c s_d^*) = s_{a c'} s_d^*     if c = b c',
//                          = s_a s_{d b'}^*     if b = c b',
//                          = 0                  otherwise,
//
// which holds in every Toeplitz-Cuntz-Krieger family. Vertex projections
// are the monomials on empty paths.

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "couniv/boundary.hpp"
#include "couniv/graph.hpp"
#include "couniv/scalar.hpp"
#include "couniv/transforms.hpp"

namespace couniv {

struct MonomialKey {
  Path alpha;
  Path beta;

  friend auto operator<=>(const MonomialKey&, const MonomialKey&) = default;
  friend bool operator==(const MonomialKey&, const MonomialKey&) = default;
};

class AlgebraElement {
 public:
  using Terms = std::map<MonomialKey, Scalar>;

  AlgebraElement() = default;
  /// c s_alpha s_beta^*; throws ValidationError unless s(alpha) = s(beta).
  static AlgebraElement monomial(Path alpha, Path beta, Scalar c = 1);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Longest path occurring in a key.
  std::size_t max_key_length() const;

  /// Adds c to the coefficient of key, dropping it if the sum vanishes.
  void add(const MonomialKey& key, const Scalar& c);

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement scaled(const Scalar& c) const;
  /// The same element with every coefficient in inexact mode.
  AlgebraElement to_inexact() const;
  bool is_exact() const;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  Terms terms_;
};

AlgebraElement make_vertex(const Graph& g, VertexId v);
AlgebraElement make_edge(const Graph& g, EdgeId e);
/// s_alpha; the empty path gives its vertex projection.
AlgebraElement make_path(const Graph& g, const Path& p);

AlgebraElement adjoint(const AlgebraElement& a);
AlgebraElement multiply(const Graph& g, const AlgebraElement& a,
                        const AlgebraElement& b);

/// Parses `c * s[a1 a2] * s*[b1] + p[v] - ...`. Factors are rationals,
/// decimals (inexact), `i`, `e(t)` for the phase e^{2 pi i t}, parenthesised
/// subexpressions and the generators `p[v]`, `s[path]`, `s*[path]`.
AlgebraElement parse_element(const Graph& g, std::string_view text);
/// Inverse of parse_element; the zero element prints as `0`.
std::string to_string(const Graph& g, const AlgebraElement& a);

/// Strips trailing powers of entrance-free cycles.
Path w_normal_form(const Graph& g, const Path& alpha);
/// Whether alpha does not end with an entrance-free cycle.
bool in_w(const Graph& g, const Path& alpha);
AlgebraElement element_w_normal_form(const Graph& g, const AlgebraElement& a);
/// W-normalise and keep the diagonal keys.
AlgebraElement diag_expectation(const Graph& g, const AlgebraElement& a);

/// Image under s_e -> factor(e) s_e: a key (alpha, beta) picks up
/// along(alpha) * conj(along(beta)).
AlgebraElement apply_rescaling(const Rescaling& r, const AlgebraElement& a);

/// The generators as elements over `g`, which must be the graph the
/// generators were built over: gaps first, then projections, then one pin
/// per rotation.
std::vector<AlgebraElement> ideal_elements(const Graph& g,
                                           const IdealGenerators& gens);

/// Spanning monomials s_alpha s_beta^* of the ideal attached to a boundary
/// path x: s(alpha) = s(beta) is a vertex of x, and |alpha|, |beta| are at
/// most `length_bound`.
std::vector<AlgebraElement> ideal_spanning_family(const Graph& g,
                                                  const BoundaryPath& x,
                                                  std::size_t length_bound);

}  // namespace couniv
