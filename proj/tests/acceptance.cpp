// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Time bounds are wall-clock limits per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "couniv/algebra.hpp"
#include "couniv/boundary.hpp"
#include "couniv/cycles.hpp"
#include "couniv/error.hpp"
#include "couniv/representation.hpp"
#include "couniv/tails.hpp"
#include "couniv/transforms.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

namespace {

using namespace couniv;
using couniv::testing::corpus;

/// Collects the first few failure messages of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (messages_.size() < 5) messages_.push_back(what);
  }
  bool ok() const { return failures_ == 0 && checks_ > 0; }
  std::string summary() const {
    std::ostringstream out;
    out << checks_ << " checks";
    if (failures_ > 0) out << ", " << failures_ << " failed";
    for (const auto& m : messages_) out << "\n    " << m;
    return out.str();
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

struct Criterion {
  int number;
  const char* name;
  double seconds;
  std::function<void(Check&)> body;
};

Phase turns(long n, long d) { return Phase::turns(Rational(n, d)); }

AlgebraElement el(const Graph& g, std::string_view text) { return parse_element(g, text); }

// 1. The single loop: one boundary point, and every monomial acts as p_v.
void single_loop_collapse(Check& c) {
  const Graph g = couniv::testing::g1();
  c.expect(boundary_set(g, 6).size() == 1, "G1 boundary set is not a single point");
  const auto rep = Representation::boundary(g);
  c.expect(operator_equal(rep, el(g, "s[e]"), el(g, "p[v]")), "s_e != p_v");
  for (std::size_t i = 0; i <= 5; ++i) {
    for (std::size_t j = 0; j <= 5; ++j) {
      std::vector<EdgeId> a(i, g.edge("e")), b(j, g.edge("e"));
      const Path alpha = i == 0 ? Path::empty(g.vertex("v")) : Path::of(g, a);
      const Path beta = j == 0 ? Path::empty(g.vertex("v")) : Path::of(g, b);
      const auto m = AlgebraElement::monomial(alpha, beta);
      c.expect(operator_equal(rep, m, el(g, "p[v]")), "monomial " + to_string(g, m) + " != p_v");
    }
  }
}

// 2. q_v, t_e over the Toeplitz graph form a Toeplitz-Cuntz-Krieger family,
// and each gap q_v - sum t_e t_e^* is the projection at beta(v).
void toeplitz_dictionary(Check& c) {
  c.expect(corpus().size() >= 20, "corpus has fewer than 20 graphs");
  for (const auto& [name, g] : corpus()) {
    c.expect(g.vertex_count() <= 8, name + " has more than 8 vertices");
    const ToeplitzGraph tg = toeplitz_graph(g);
    const auto lr = Representation::left_regular(tg.graph);
    const Family f = toeplitz_family(g, tg, lr);
    c.expect(verify_relations(f, Level::TCK, minimum_depth(g, Level::TCK) + 1).pass(),
             name + ": Toeplitz family fails TCK");
    const auto bd = Representation::boundary(tg.graph);
    const Family fb = toeplitz_family(g, tg, bd);
    for (VertexId v : g.vertices()) {
      if (g.is_source(v)) continue;
      AlgebraElement gap = fb.vertex(v);
      for (EdgeId e : g.edges_into(v)) {
        gap = gap - multiply(tg.graph, fb.edge(e), adjoint(fb.edge(e)));
      }
      const auto beta = make_vertex(tg.graph, *tg.beta_v[index(v)]);
      c.expect(operator_equal(bd, gap, beta), name + ": gap at " + g.name(v) + " != p_beta");
      c.expect(!operator_equal(bd, gap, AlgebraElement()), name + ": gap at " + g.name(v) + " is 0");
    }
  }
}

// 3. Deleting any cutting set leaves no entrance-free cycle. Random graphs
// at this density seldom have one, so the corpus is checked as well.
void reduced_graph_invariant(Check& c) {
  std::vector<testing::NamedGraph> graphs = corpus();
  std::mt19937_64 rng(20240603);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  for (int i = 0; i < 100; ++i) {
    graphs.push_back({"random" + std::to_string(i),
                      couniv::testing::random_graph(rng, size(rng), 0.3)});
  }
  for (const auto& [name, g] : graphs) {
    for (const CuttingSet& x : cutting_sets(g)) {
      const ReducedGraph f = reduced_graph(g, x);
      c.expect(entrance_free_classes(f.graph).empty(), name + ": reduced graph keeps a class");
    }
  }
}

// 4. The Toeplitz graph of the single loop has exactly the tails {alpha(v)}
// (circle type) and {alpha(v), beta(v)} (gauge-invariant type).
void toeplitz_loop_tails(Check& c) {
  const Graph g = couniv::testing::g1();
  const ToeplitzGraph tg = toeplitz_graph(g);
  const VertexId a = tg.alpha_v[0];
  const VertexId b = *tg.beta_v[0];
  const auto tails = maximal_tails(tg.graph);
  c.expect(tails.size() == 2, "expected 2 tails, got " + std::to_string(tails.size()));
  VertexSet both{a, b};
  std::sort(both.begin(), both.end());
  bool tau = false, gamma = false;
  for (const auto& t : tails) {
    if (t.vertices == VertexSet{a} && t.circle &&
        t.circle->representative.path().edges().size() == 1 &&
        t.circle->representative.path().edges()[0] == tg.alpha_e[0]) {
      tau = true;
    }
    if (t.vertices == both && t.is_gamma()) gamma = true;
  }
  c.expect(tau, "missing Tau tail {alpha(v)} with class [alpha(e)]");
  c.expect(gamma, "missing Gamma tail {alpha(v), beta(v)}");
}

// 5. Which representation satisfies which relations.
void relation_matrix(Check& c) {
  for (const auto& [name, g] : corpus()) {
    const std::size_t d =
        std::max<std::size_t>(minimum_depth(g, Level::Reduced), 2 * g.vertex_count());
    const auto lr = Representation::left_regular(g);
    c.expect(verify_relations(lr, Level::TCK, d).pass(), name + ": left-regular fails TCK");
    const auto ck = verify_relations(lr, Level::CK, d);
    std::set<std::string> failing;
    for (const auto& f : ck.failures) failing.insert(f.relation);
    for (VertexId v : g.vertices()) {
      if (g.is_source(v)) continue;
      bool found = false;
      const std::string tag = "(CK) p[" + g.name(v) + "] =";
      for (const auto& r : failing) found = found || r.rfind(tag, 0) == 0;
      c.expect(found, name + ": left-regular satisfies CK at " + g.name(v));
    }
    c.expect(ck.failures.size() == g.vertex_count() - sources(g).size(),
             name + ": CK failures at non-receiving vertices");

    c.expect(verify_relations(Representation::boundary(g), Level::NormalizedReduced, d).pass(),
             name + ": boundary fails normalized reduced");
    c.expect(verify_relations(Representation::omega(g), Level::NormalizedReduced, d).pass(),
             name + ": omega fails normalized reduced");

    EdgePhases kappa;
    long n = 1;
    for (EdgeId e : canonical_cutting_set(g).edges) kappa[e] = turns(n++, 7);
    const auto tw = Representation::twisted(g, kappa);
    const auto report = verify_relations(tw, Level::Reduced, d);
    c.expect(report.pass(), name + ": twisted fails reduced");
    c.expect(extract_kappa(tw) == class_phases(g, kappa), name + ": extracted kappa differs");
  }
}

// 6. Rescaling the twisted family removes the twist.
void de_twisting(Check& c) {
  std::vector<Graph> graphs;
  for (const auto& [name, g] : corpus()) {
    if (!entrance_free_classes(g).empty()) graphs.push_back(g);
  }
  c.expect(!graphs.empty(), "no corpus graph has an entrance-free cycle");
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> den(1, 12);
  for (int i = 0; i < 50; ++i) {
    const Graph& g = graphs[static_cast<std::size_t>(i) % graphs.size()];
    EdgePhases kappa;
    for (EdgeId e : canonical_cutting_set(g).edges) {
      const long d = den(rng);
      kappa[e] = turns(std::uniform_int_distribution<long>(0, d - 1)(rng), d);
    }
    const auto tw = Representation::twisted(g, kappa);
    const Family f = rescale_family(tw);
    const std::size_t depth = minimum_depth(g, Level::NormalizedReduced);
    c.expect(verify_relations(f, Level::NormalizedReduced, depth).pass(),
             "kappa sample " + std::to_string(i) + ": rescaled family fails normalized");
    for (const auto& [cls, k] : extract_kappa(f)) {
      c.expect(k.is_one(), "kappa sample " + std::to_string(i) + ": phase survives rescaling");
    }
  }
}

/// W-paths grouped by source, lengths at most `len`.
std::map<VertexId, std::vector<Path>> w_paths_by_source(const Graph& g, std::size_t len) {
  std::map<VertexId, std::vector<Path>> out;
  for (VertexId v : g.vertices()) {
    for (const Path& p : paths_up_to(g, v, len, PathMode::AtMost)) {
      if (in_w(g, p)) out[p.source()].push_back(p);
    }
  }
  return out;
}

// 7. The expectation equals the diagonal compression on the Omega points.
void expectation(Check& c) {
  std::mt19937_64 rng(7);
  for (const auto& [name, g] : corpus()) {
    if (g.vertex_count() == 0) continue;
    const std::size_t depth = 2 * g.vertex_count();
    const auto rep = Representation::omega(g);
    const auto points = omega_set(g, depth);
    for (int i = 0; i < 200; ++i) {
      const auto a = couniv::testing::random_element(g, rng, 3, 3);
      const auto psi = diag_expectation(g, a);
      for (const auto& x : points) {
        const Vector ax = rep.apply(a, BasisElement{x});
        const auto it = ax.find(BasisElement{x});
        Vector expected;
        if (it != ax.end() && !it->second.is_zero()) expected.emplace(BasisElement{x}, it->second);
        c.expect(rep.apply(psi, BasisElement{x}) == expected,
                 name + ": expectation of " + to_string(g, a) + " at " + to_string(g, x));
      }
    }

    // Off-diagonal W-monomials vanish, and distinct W-paths with a common
    // source never agree after the same continuation.
    const auto w = w_paths_by_source(g, g.vertex_count());
    for (const auto& [src, ps] : w) {
      std::vector<BoundaryPath> tails;
      for (const auto& y : points) {
        if (y.range() == src) tails.push_back(y);
      }
      for (const Path& alpha : ps) {
        for (const Path& beta : ps) {
          if (alpha == beta) continue;
          c.expect(diag_expectation(g, AlgebraElement::monomial(alpha, beta)).is_zero(),
                   name + ": off-diagonal W-monomial survives");
          for (const auto& y : tails) {
            c.expect(prepend(g, alpha, y) != prepend(g, beta, y),
                     name + ": " + to_string(g, alpha) + " and " + to_string(g, beta) +
                         " agree on " + to_string(g, y));
          }
        }
      }
    }
  }
}

// 8. Cofinality against the oracle; for non-cofinal graphs the ideal of a
// witness path is proper and nonzero.
void simplicity(Check& c) {
  for (const auto& [name, g] : corpus()) {
    const bool cofinal = is_cofinal(g);
    c.expect(cofinal == couniv::testing::brute_force_cofinal(g), name + ": cofinality differs");
    if (cofinal) continue;
    const auto witness = cofinality_witness(g);
    c.expect(witness.has_value(), name + ": no cofinality witness");
    if (!witness) continue;
    const auto& [v, x] = *witness;
    const auto rep = Representation::omega(g);
    const auto pv = make_vertex(g, v);
    const auto family = ideal_spanning_family(g, x, g.vertex_count());
    bool has_range_projection = false;
    for (const auto& m : family) {
      c.expect(operator_equal(rep, multiply(g, pv, m), AlgebraElement()),
               name + ": p_v * " + to_string(g, m) + " != 0");
      c.expect(operator_equal(rep, multiply(g, m, pv), AlgebraElement()),
               name + ": " + to_string(g, m) + " * p_v != 0");
      if (m == make_vertex(g, x.range())) has_range_projection = true;
    }
    c.expect(has_range_projection, name + ": family lacks p at the range of x");
    c.expect(!operator_equal(rep, make_vertex(g, x.range()), AlgebraElement()),
             name + ": p at the range of x is 0");
  }
}

// 9. operator_equal against the deep-walk oracle.
void cross_oracle(Check& c) {
  std::mt19937_64 rng(9);
  const RepKind kinds[] = {RepKind::LeftRegular, RepKind::Boundary, RepKind::Omega};
  for (const auto& [name, g] : corpus()) {
    if (g.vertex_count() == 0) continue;
    const Representation reps[] = {Representation::left_regular(g), Representation::boundary(g),
                                   Representation::omega(g)};
    const couniv::testing::WalkOracle oracles[] = {
        {g, kinds[0]}, {g, kinds[1]}, {g, kinds[2]}};
    std::vector<VertexId> receiving;
    for (VertexId v : g.vertices()) {
      if (!g.is_source(v)) receiving.push_back(v);
    }
    std::size_t equal_pairs = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto x = couniv::testing::random_element(g, rng, 3, 2);
      auto y = couniv::testing::random_element(g, rng, 3, 2);
      // A third of the pairs differ by a Cuntz-Krieger gap, a third by W
      // normalisation, the rest are independent.
      if (i % 3 == 0 && !receiving.empty()) {
        const VertexId v = receiving[rng() % receiving.size()];
        AlgebraElement gap = make_vertex(g, v);
        for (EdgeId e : g.edges_into(v)) {
          gap = gap - multiply(g, make_edge(g, e), adjoint(make_edge(g, e)));
        }
        y = x + gap.scaled(couniv::testing::random_coefficient(rng));
      } else if (i % 3 == 1) {
        y = x + element_w_normal_form(g, y) - y;
      }
      const int r = i % 3 == 2 ? static_cast<int>(rng() % 3) : 1 + static_cast<int>(rng() % 2);
      const bool fast = operator_equal(reps[r], x, y);
      equal_pairs += fast ? 1 : 0;
      c.expect(fast == oracles[r].equal(x, y),
               name + ": " + to_string(g, x) + " vs " + to_string(g, y));
    }
    c.expect(equal_pairs > 0, name + ": no equal pair was generated");
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "single-loop collapse", 1, single_loop_collapse},
      {2, "Toeplitz dictionary", 30, toeplitz_dictionary},
      {3, "reduced-graph invariant", 60, reduced_graph_invariant},
      {4, "Toeplitz tail catalog of the single loop", 1, toeplitz_loop_tails},
      {5, "relation matrix", 60, relation_matrix},
      {6, "co-universal de-twisting", 30, de_twisting},
      {7, "expectation", 120, expectation},
      {8, "simplicity dichotomy", 60, simplicity},
      {9, "cross-oracle equality", 120, cross_oracle},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < cr.seconds;
    const bool pass = error.empty() && check.ok() && in_time;
    failed += pass ? 0 : 1;
    std::printf("[%s] %d %s: %.2f s (limit %.0f s), %s%s%s\n", pass ? "PASS" : "FAIL", cr.number,
                cr.name, secs, cr.seconds, check.summary().c_str(),
                error.empty() ? "" : "\n    exception: ", error.c_str());
    if (!in_time) std::printf("    time limit exceeded\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
