#include <gtest/gtest.h>

#include <random>
#include <set>

#include "couniv/error.hpp"
#include "couniv/transforms.hpp"
#include "support/corpus.hpp"

namespace couniv {
namespace {

using testing::corpus;
using testing::g1;
using testing::g2;
using testing::g3;
using testing::g4;

std::set<std::string> vertex_names(const Graph& g) {
  std::set<std::string> out;
  for (VertexId v : g.vertices()) out.insert(g.name(v));
  return out;
}

Phase turns(long n, long d) { return Phase::turns(Rational(n, d)); }

TEST(Toeplitz, LoopExample) {
  const Graph a = g1();
  const ToeplitzGraph tg = toeplitz_graph(a);
  EXPECT_EQ(vertex_names(tg.graph), (std::set<std::string>{"alpha:v", "beta:v"}));
  ASSERT_EQ(tg.graph.edge_count(), 2u);
  const Graph& t = tg.graph;
  const EdgeId ae = t.edge("alpha:e"), be = t.edge("beta:e");
  EXPECT_EQ(t.name(t.source(ae)), "alpha:v");
  EXPECT_EQ(t.name(t.range(ae)), "alpha:v");
  EXPECT_EQ(t.name(t.source(be)), "beta:v");
  EXPECT_EQ(t.name(t.range(be)), "alpha:v");
}

TEST(Toeplitz, LineExample) {
  const ToeplitzGraph tg = toeplitz_graph(g4());
  EXPECT_EQ(vertex_names(tg.graph), (std::set<std::string>{"alpha:v", "alpha:w", "beta:v"}));
  ASSERT_EQ(tg.graph.edge_count(), 1u);
  EXPECT_TRUE(tg.graph.find_edge("alpha:e").has_value());
  EXPECT_FALSE(tg.beta_e[0].has_value());
}

TEST(Toeplitz, StructuralInvariants) {
  for (const auto& [name, g] : corpus()) {
    const ToeplitzGraph tg = toeplitz_graph(g);
    const Graph& t = tg.graph;
    std::size_t expect_v = g.vertex_count(), expect_e = g.edge_count();
    for (VertexId v : g.vertices()) {
      EXPECT_EQ(tg.beta_v[index(v)].has_value(), !g.is_source(v)) << name;
      if (tg.beta_v[index(v)]) {
        ++expect_v;
        EXPECT_TRUE(t.is_source(*tg.beta_v[index(v)])) << name;
      }
    }
    for (EdgeId e : g.edges()) {
      const EdgeId ae = tg.alpha_e[index(e)];
      EXPECT_EQ(t.range(ae), tg.alpha_v[index(g.range(e))]);
      EXPECT_EQ(t.source(ae), tg.alpha_v[index(g.source(e))]);
      EXPECT_EQ(tg.beta_e[index(e)].has_value(), !g.is_source(g.source(e))) << name;
      if (auto be = tg.beta_e[index(e)]) {
        ++expect_e;
        EXPECT_EQ(t.range(*be), tg.alpha_v[index(g.range(e))]);
        EXPECT_EQ(t.source(*be), *tg.beta_v[index(g.source(e))]);
      }
    }
    EXPECT_EQ(t.vertex_count(), expect_v) << name;
    EXPECT_EQ(t.edge_count(), expect_e) << name;

    // The cycles of the Toeplitz graph are the alpha-images of the cycles.
    std::set<Cycle> lifted;
    for (const Cycle& c : simple_cycles(g)) lifted.insert(tg.alpha(c).canonical(t));
    const auto cs = simple_cycles(t);
    EXPECT_EQ(std::set<Cycle>(cs.begin(), cs.end()), lifted) << name;
  }
}

TEST(Reduced, Examples) {
  const Graph a = g1();
  const ReducedGraph fa = reduced_graph(a, {{a.edge("e")}});
  EXPECT_EQ(fa.graph.vertex_count(), 1u);
  EXPECT_EQ(fa.graph.edge_count(), 0u);
  EXPECT_EQ(fa.graph.name(fa.zeta_v[0]), "zeta:v");

  const Graph b = g2();
  const ReducedGraph fb = reduced_graph(b, {{b.edge("e1")}});
  EXPECT_EQ(fb.graph.vertex_count(), 2u);
  ASSERT_EQ(fb.graph.edge_count(), 1u);
  EXPECT_EQ(fb.graph.name(EdgeId{0}), "zeta:e2");
  EXPECT_FALSE(fb.zeta_e[index(b.edge("e1"))].has_value());

  const Graph c = g3();
  const ReducedGraph fc = reduced_graph(c, {});
  EXPECT_EQ(fc.graph.vertex_count(), 3u);
  EXPECT_EQ(fc.graph.edge_count(), 3u);
  for (EdgeId e : c.edges()) {
    const EdgeId z = *fc.zeta_e[index(e)];
    EXPECT_EQ(fc.graph.name(z), "zeta:" + c.name(e));
    EXPECT_EQ(fc.graph.source(z), fc.zeta_v[index(c.source(e))]);
  }
  EXPECT_THROW(reduced_graph(b, {}), ValidationError);
}

TEST(Reduced, NoEntranceFreeCyclesRemain) {
  std::mt19937_64 rng(29);
  std::vector<Graph> graphs;
  for (const auto& ng : corpus()) graphs.push_back(ng.graph);
  for (int i = 0; i < 30; ++i) graphs.push_back(testing::random_graph(rng, 1 + i % 8, 0.3));
  for (const Graph& g : graphs) {
    for (const CuttingSet& x : cutting_sets(g)) {
      EXPECT_TRUE(entrance_free_classes(reduced_graph(g, x).graph).empty()) << g.to_text();
    }
  }
}

TEST(ClassPhases, DefaultsAndValidation) {
  const Graph b = g2();
  const ClassPhases k = class_phases(b, {{b.edge("e2"), turns(1, 3)}});
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k.begin()->second, turns(1, 3));
  EXPECT_TRUE(class_phases(b, {}).begin()->second.is_one());
  EXPECT_THROW(class_phases(b, {{b.edge("e1"), turns(1, 3)}, {b.edge("e2"), turns(1, 3)}}),
               ValidationError);
  const Graph c = g3();
  EXPECT_THROW(class_phases(c, {{c.edge("f"), turns(1, 2)}}), ValidationError);

  const EdgePhases back = edge_phases(b, {{b.edge("e2")}}, k);
  EXPECT_EQ(back.at(b.edge("e2")), turns(1, 3));
}

TEST(IKappa, Examples) {
  const Graph a = g1();
  const Cycle loop = simple_cycles(a)[0];
  const IdealGenerators ga = ikappa_generators(a, {{loop, Phase()}});
  EXPECT_EQ(ga.gaps, std::vector<VertexId>{a.vertex("v")});
  ASSERT_EQ(ga.pins.size(), 1u);
  EXPECT_TRUE(ga.pins[0].kappa.is_one());

  const Graph b = g2();
  const Cycle c2 = simple_cycles(b)[0];
  const IdealGenerators gb = ikappa_generators(b, {{c2, turns(1, 2)}});
  EXPECT_EQ(gb.gaps.size(), 2u);
  ASSERT_EQ(gb.pins.size(), 1u);
  EXPECT_EQ(gb.pins[0].cls.rotations.size(), 2u);
  EXPECT_EQ(gb.pins[0].kappa, turns(1, 2));

  const Graph c = g3();
  const IdealGenerators gc = ikappa_generators(c, {});
  EXPECT_EQ(gc.gaps.size(), 2u);
  EXPECT_TRUE(gc.pins.empty());

  EXPECT_THROW(ikappa_generators(b, {}), ValidationError);
}

TEST(JKappa, Examples) {
  const Graph a = g1();
  const ToeplitzGraph ta = toeplitz_graph(a);
  const Cycle loop = simple_cycles(a)[0];
  const IdealGenerators ja = jkappa_generators(a, ta, {{loop, turns(1, 4)}});
  EXPECT_EQ(ja.projections, std::vector<VertexId>{*ta.beta_v[0]});
  ASSERT_EQ(ja.pins.size(), 1u);
  EXPECT_EQ(ta.graph.name(ja.pins[0].cls.representative[0]), "alpha:e");
  EXPECT_TRUE(ja.gaps.empty());

  const Graph d = g4();
  const ToeplitzGraph td = toeplitz_graph(d);
  const IdealGenerators jd = jkappa_generators(d, td, {});
  ASSERT_EQ(jd.projections.size(), 1u);
  EXPECT_EQ(td.graph.name(jd.projections[0]), "beta:v");

  const Graph c = g3();
  const ToeplitzGraph tc = toeplitz_graph(c);
  const IdealGenerators jc = jkappa_generators(c, tc, {});
  std::set<std::string> names;
  for (VertexId v : jc.projections) names.insert(tc.graph.name(v));
  EXPECT_EQ(names, (std::set<std::string>{"beta:u", "beta:v"}));
}

TEST(Rescaling, Examples) {
  const Graph a = g1();
  const Rescaling r = rescale_generators(a, {{a.edge("e")}}, {{a.edge("e"), turns(1, 4)}});
  EXPECT_EQ(r.factor(a.edge("e")), turns(3, 4));

  const Graph b = g2();
  const Rescaling rb = rescale_generators(b, {{b.edge("e1")}}, {{b.edge("e1"), turns(1, 2)}});
  EXPECT_EQ(rb.factor(b.edge("e1")), turns(1, 2));
  EXPECT_TRUE(rb.factor(b.edge("e2")).is_one());
  const Path mu = Path::of(b, {b.edge("e1"), b.edge("e2")});
  EXPECT_EQ(rb.along(mu), turns(1, 2));

  const Rescaling id = rescale_generators(b, {{b.edge("e1")}}, {{b.edge("e1"), Phase()}});
  EXPECT_TRUE(id.factor(b.edge("e1")).is_one());

  EXPECT_THROW(rescale_generators(b, {{b.edge("e1")}}, {}), ValidationError);
  EXPECT_THROW(rescale_generators(b, {{b.edge("e1")}}, {{b.edge("e2"), Phase()}}),
               ValidationError);
}

TEST(Rescaling, InverseComposesToIdentity) {
  for (const auto& [name, g] : corpus()) {
    const CuttingSet x = canonical_cutting_set(g);
    EdgePhases k;
    long n = 1;
    for (EdgeId e : x.edges) k[e] = turns(n++, 7);
    const Rescaling r = rescale_generators(g, x, k);
    const Rescaling inv = r.inverse();
    for (EdgeId e : g.edges()) EXPECT_TRUE((r.factor(e) * inv.factor(e)).is_one()) << name;
  }
}

}  // namespace
}  // namespace couniv
