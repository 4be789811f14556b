#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "couniv/error.hpp"
#include "couniv/tails.hpp"
#include "support/corpus.hpp"

namespace couniv {
namespace {

using testing::corpus;
using testing::g1;
using testing::g2;
using testing::g3;
using testing::g4;

std::set<std::string> names(const Graph& g, const VertexSet& m) {
  std::set<std::string> out;
  for (VertexId v : m) out.insert(g.name(v));
  return out;
}

VertexSet all_vertices(const Graph& g) {
  VertexSet out;
  for (VertexId v : g.vertices()) out.push_back(v);
  return out;
}

// MT1-MT3 checked directly from their statements.
bool satisfies_axioms(const Graph& g, const VertexSet& m) {
  if (m.empty()) return false;
  const Reachability r(g);
  for (VertexId w : m)
    for (VertexId v : g.vertices())
      if (r.reaches(v, w) && !contains(m, v)) return false;
  for (VertexId v : m) {
    if (g.is_source(v)) continue;
    bool inside = false;
    for (EdgeId e : g.edges_into(v)) inside = inside || contains(m, g.source(e));
    if (!inside) return false;
  }
  for (VertexId u : m)
    for (VertexId v : m) {
      bool common = false;
      for (VertexId w : m) common = common || (r.reaches(u, w) && r.reaches(v, w));
      if (!common) return false;
    }
  return true;
}

TEST(MaximalTails, ToeplitzOfLoop) {
  const ToeplitzGraph tg = toeplitz_graph(g1());
  const auto tails = maximal_tails(tg.graph);
  ASSERT_EQ(tails.size(), 2u);
  EXPECT_EQ(names(tg.graph, tails[0].vertices), std::set<std::string>{"alpha:v"});
  ASSERT_FALSE(tails[0].is_gamma());
  EXPECT_EQ(to_string(tg.graph, tails[0].circle->representative.path()), "alpha:e");
  EXPECT_EQ(names(tg.graph, tails[1].vertices),
            (std::set<std::string>{"alpha:v", "beta:v"}));
  EXPECT_TRUE(tails[1].is_gamma());
}

TEST(MaximalTails, Loop) {
  const Graph a = g1();
  const auto tails = maximal_tails(a);
  ASSERT_EQ(tails.size(), 1u);
  EXPECT_FALSE(tails[0].is_gamma());
}

TEST(MaximalTails, Line) {
  // {v} fails the second axiom: v receives e only from w, outside the set.
  const Graph d = g4();
  EXPECT_FALSE(is_maximal_tail(d, {d.vertex("v")}));
  const auto tails = maximal_tails(d);
  ASSERT_EQ(tails.size(), 1u);
  EXPECT_EQ(names(d, tails[0].vertices), (std::set<std::string>{"v", "w"}));
  EXPECT_TRUE(tails[0].is_gamma());
}

TEST(MaximalTails, GuardExceeded) {
  EXPECT_THROW(maximal_tails(g3(), 2), GuardExceeded);
}

TEST(MaximalTails, MatchesAxiomsBySubsetEnumeration) {
  for (const auto& [name, g] : corpus()) {
    for (const Graph& h : {g, toeplitz_graph(g).graph}) {
      if (h.vertex_count() > 12) continue;
      std::set<VertexSet> expected;
      const std::size_t n = h.vertex_count();
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        VertexSet m;
        for (std::uint32_t i = 0; i < n; ++i)
          if (mask & (1u << i)) m.push_back(VertexId{i});
        if (satisfies_axioms(h, m)) expected.insert(m);
      }
      std::set<VertexSet> got;
      for (const auto& t : maximal_tails(h)) {
        EXPECT_TRUE(satisfies_axioms(h, t.vertices)) << name;
        got.insert(t.vertices);
      }
      EXPECT_EQ(got, expected) << name;
    }
  }
}

TEST(ClassifyTail, Examples) {
  const Graph a = g1();
  EXPECT_TRUE(classify_tail(a, {a.vertex("v")}).has_value());
  const ToeplitzGraph tg = toeplitz_graph(a);
  EXPECT_FALSE(classify_tail(tg.graph, all_vertices(tg.graph)).has_value());
  const Graph c = g3();
  EXPECT_FALSE(classify_tail(c, all_vertices(c)).has_value());
  EXPECT_THROW(classify_tail(c, {c.vertex("w")}), PreconditionError);
}

TEST(TailOfClass, Examples) {
  const Graph a = g1();
  const ToeplitzGraph ta = toeplitz_graph(a);
  const MaximalTail ma = tail_of_class(a, ta, entrance_free_classes(a)[0]);
  EXPECT_EQ(names(ta.graph, ma.vertices), std::set<std::string>{"alpha:v"});

  const Graph b = g2();
  const ToeplitzGraph tb = toeplitz_graph(b);
  const MaximalTail mb = tail_of_class(b, tb, entrance_free_classes(b)[0]);
  EXPECT_EQ(names(tb.graph, mb.vertices), (std::set<std::string>{"alpha:u", "alpha:v"}));
  ASSERT_TRUE(mb.circle.has_value());
  EXPECT_EQ(mb.circle->representative, tb.alpha(entrance_free_classes(b)[0].representative));

  const Graph c = g3();
  const Cycle mu = simple_cycles(c)[0];
  EXPECT_THROW(tail_of_class(c, toeplitz_graph(c), make_class(c, mu)), PreconditionError);
}

TEST(TailOfClass, ForcedByEntranceFreeClasses) {
  // A tail of the Toeplitz graph avoiding every beta-vertex and containing
  // alpha(C^0) for an entrance-free class C is the class tail of C.
  for (const auto& [name, g] : corpus()) {
    const ToeplitzGraph tg = toeplitz_graph(g);
    if (tg.graph.vertex_count() > kDefaultTailGuard) continue;
    const auto tails = maximal_tails(tg.graph);
    for (const auto& t : tails) {
      if (t.is_gamma()) continue;
      for (VertexId v : g.vertices()) {
        if (tg.beta_v[index(v)]) EXPECT_FALSE(contains(t.vertices, *tg.beta_v[index(v)]));
      }
    }
    for (const CycleClass& c : entrance_free_classes(g)) {
      const MaximalTail m = tail_of_class(g, tg, c);
      EXPECT_TRUE(is_maximal_tail(tg.graph, m.vertices)) << name;
      EXPECT_EQ(classify_tail(tg.graph, m.vertices), m.circle) << name;
      std::set<VertexSet> forced;
      for (const auto& t : tails) {
        bool has_beta = false;
        for (VertexId v : g.vertices()) {
          if (tg.beta_v[index(v)] && contains(t.vertices, *tg.beta_v[index(v)])) has_beta = true;
        }
        bool has_class = true;
        for (VertexId v : c.vertex_set) has_class = has_class && contains(t.vertices, tg.alpha_v[index(v)]);
        if (!has_beta && has_class) forced.insert(t.vertices);
      }
      EXPECT_EQ(forced, std::set<VertexSet>{m.vertices}) << name;
    }
  }
}

TEST(TailOfClass, CircleTailsNeedNotComeFromClasses) {
  // The cycle of g3 has an entrance, yet in its Toeplitz graph the set
  // {alpha(u), alpha(v)} is a circle-type tail: both entrances start outside.
  const Graph c = g3();
  const ToeplitzGraph tg = toeplitz_graph(c);
  const VertexSet m{tg.alpha_v[index(c.vertex("u"))], tg.alpha_v[index(c.vertex("v"))]};
  VertexSet sorted = m;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_TRUE(is_maximal_tail(tg.graph, sorted));
  EXPECT_TRUE(classify_tail(tg.graph, sorted).has_value());
  EXPECT_TRUE(entrance_free_classes(c).empty());
}

TEST(PrimIdealCatalog, Examples) {
  const ToeplitzGraph ta = toeplitz_graph(g1());
  const auto ca = prim_ideal_catalog(ta.graph);
  ASSERT_EQ(ca.size(), 2u);
  const auto gauge = std::find_if(ca.begin(), ca.end(), [](const auto& d) {
    return d.kind == PrimIdealDescriptor::Kind::GaugeInvariant;
  });
  const auto circle = std::find_if(ca.begin(), ca.end(), [](const auto& d) {
    return d.kind == PrimIdealDescriptor::Kind::Circle;
  });
  ASSERT_NE(gauge, ca.end());
  ASSERT_NE(circle, ca.end());
  EXPECT_TRUE(gauge->generators.empty());
  EXPECT_EQ(circle->generators,
            (std::vector<std::string>{"p[beta:v]", "z*p[alpha:v] - s[alpha:e]"}));

  const auto cd = prim_ideal_catalog(g4());
  ASSERT_EQ(cd.size(), 1u);
  EXPECT_EQ(cd[0].kind, PrimIdealDescriptor::Kind::GaugeInvariant);

  const auto cb = prim_ideal_catalog(g2());
  ASSERT_EQ(cb.size(), 1u);
  EXPECT_EQ(cb[0].kind, PrimIdealDescriptor::Kind::Circle);
  EXPECT_EQ(cb[0].generators, std::vector<std::string>{"z*p[v] - s[e1 e2]"});
}

}  // namespace
}  // namespace couniv
