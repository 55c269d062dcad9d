#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "spinmod/dualgraph.hpp"
#include "spinmod/errors.hpp"
#include "spinmod/random_graphs.hpp"

namespace spinmod {
namespace {

DualGraph one_vertex(int genus, std::size_t loops) {
  std::vector<Edge> edges(loops, Edge{0, 0});
  return DualGraph({{"C", genus}}, edges);
}

// Applies a vertex permutation and reverses edge order.
DualGraph relabel(const DualGraph& g, const std::vector<VertexId>& perm) {
  std::vector<Vertex> vs(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) vs[perm[v]] = g.vertices()[v];
  std::vector<Edge> es;
  for (auto it = g.edges().rbegin(); it != g.edges().rend(); ++it)
    es.push_back({perm[it->v], perm[it->u]});
  return DualGraph(vs, es);
}

TEST(DualGraph, GenusExamples) {
  EXPECT_EQ(one_vertex(2, 0).genus(), 2);
  EXPECT_EQ(DualGraph::two_component(1, 1, 3).genus(), 4);
  EXPECT_EQ(DualGraph::two_component(1, 2, 1).genus(), 3);
}

TEST(DualGraph, Stability) {
  EXPECT_TRUE(DualGraph::two_component(1, 1, 1).is_stable());
  DualGraph g({{"A", 0}, {"B", 2}}, {{0, 1}, {0, 1}});
  EXPECT_FALSE(g.is_stable());
  EXPECT_TRUE(one_vertex(0, 2).is_stable());
  EXPECT_FALSE(one_vertex(0, 1).is_stable());
}

TEST(DualGraph, CanonicalMultidegree) {
  EXPECT_EQ(DualGraph::two_component(1, 1, 3).canonical_multidegree(), (std::vector<int>{3, 3}));
  EXPECT_EQ(one_vertex(2, 0).canonical_multidegree(), (std::vector<int>{2}));
  DualGraph tri({{"A", 0}, {"B", 1}, {"C", 1}, {"D", 1}}, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(tri.canonical_multidegree()[0], 1);
  EXPECT_EQ(one_vertex(1, 2).valence(0), 4);
}

TEST(DualGraph, RejectsBadInput) {
  EXPECT_THROW(DualGraph({{"A", 1}, {"B", 1}}, {}), InputError);
  EXPECT_THROW(DualGraph({{"A", 1}, {"A", 1}}, {{0, 1}}), InputError);
  EXPECT_THROW(DualGraph({{"A", -1}}, {}), InputError);
  EXPECT_THROW(DualGraph({{"A", 1}}, {{0, 3}}), InputError);
  EXPECT_THROW(DualGraph({}, {}), InputError);
}

TEST(DualGraph, JsonRoundTrip) {
  auto j = nlohmann::json::parse(
      R"({"vertices":[{"id":"C1","genus":1},{"id":"C2","genus":1}],"edges":[["C1","C2"],["C1","C2"],["C2","C2"]]})");
  DualGraph g = DualGraph::from_json(j);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.has_loops());
  EXPECT_EQ(g.genus(), 4);
  DualGraph h = DualGraph::from_json(nlohmann::json::parse(g.to_json().dump()));
  EXPECT_EQ(h.to_json().dump(), g.to_json().dump());

  auto bad = nlohmann::json::parse(R"({"vertices":[{"id":"A","genus":1}],"edges":[["A","Z"]]})");
  EXPECT_THROW(DualGraph::from_json(bad), InputError);
  EXPECT_THROW(DualGraph::from_json(nlohmann::json::array()), InputError);
  EXPECT_THROW(DualGraph::from_file("/nonexistent/curve.json"), InputError);
}

TEST(BlowUp, EmptySubsetIsIdentity) {
  DualGraph g = DualGraph::two_component(1, 1, 3);
  BlowUpGraph x = blow_up(g, {});
  EXPECT_EQ(x.vertex_count(), 2u);
  EXPECT_EQ(x.edges().size(), 3u);
  EXPECT_EQ(x.contract().to_json().dump(), g.to_json().dump());
}

TEST(BlowUp, FullSupportDisconnectsNormalization) {
  BlowUpGraph x = blow_up(DualGraph::two_component(1, 1, 3), {0, 1, 2});
  EXPECT_EQ(x.vertex_count(), 5u);
  EXPECT_EQ(x.normalization_components().size(), 2u);
  for (VertexId v = 2; v < 5; ++v) {
    EXPECT_TRUE(x.is_exceptional(v));
    EXPECT_EQ(x.vertex_genus(v), 0);
  }
}

TEST(BlowUp, SingleNodeKeepsNormalizationConnected) {
  BlowUpGraph x = blow_up(DualGraph::two_component(1, 1, 3), {1});
  EXPECT_EQ(x.vertex_count(), 3u);
  EXPECT_EQ(x.normalization_components().size(), 1u);
  EXPECT_THROW(blow_up(DualGraph::two_component(1, 1, 3), {7}), InputError);
  EXPECT_THROW(blow_up(DualGraph::two_component(1, 1, 3), {1, 1}), InputError);
}

TEST(SigmaGraph, TwoComponentShapes) {
  for (std::size_t delta = 1; delta <= 6; ++delta) {
    DualGraph g = DualGraph::two_component(1, 2, delta);
    std::vector<EdgeId> all(delta);
    std::iota(all.begin(), all.end(), 0);
    SigmaGraph full = sigma_graph(blow_up(g, all));
    EXPECT_EQ(full.vertex_count(), 2u);
    EXPECT_EQ(full.edges.size(), delta);
    EXPECT_EQ(full.b1(), static_cast<long>(delta) - 1);
    for (std::size_t h = 0; h < delta; ++h) {
      std::vector<EdgeId> part(all.begin(), all.begin() + static_cast<long>(h));
      SigmaGraph s = sigma_graph(blow_up(g, part));
      EXPECT_EQ(s.vertex_count(), 1u);
      EXPECT_EQ(s.b1(), static_cast<long>(h));
    }
  }
}

TEST(BlowUpProperty, GenusPreservedAndContractionRecoversBase) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    DualGraph g = random_dual_graph(rng);
    std::size_t e = g.edge_count();
    std::uint64_t mask = e == 0 ? 0 : rng() % (std::uint64_t{1} << e);
    std::vector<EdgeId> subset;
    for (EdgeId i = 0; i < e; ++i)
      if (mask >> i & 1) subset.push_back(i);
    BlowUpGraph x = blow_up(g, subset);
    EXPECT_EQ(x.genus(), g.genus());
    EXPECT_EQ(x.contract().to_json().dump(), g.to_json().dump());
    for (VertexId v = g.vertex_count(); v < x.vertex_count(); ++v) {
      int valence = 0;
      for (const Edge& ed : x.edges()) valence += (ed.u == v) + (ed.v == v);
      EXPECT_EQ(valence, 2);
    }
  }
}

TEST(DualGraphProperty, MultidegreeSumsToTwoGMinusTwo) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    DualGraph g = random_dual_graph(rng);
    auto d = g.canonical_multidegree();
    EXPECT_EQ(std::accumulate(d.begin(), d.end(), 0), 2 * g.genus() - 2);
  }
}

TEST(DualGraphProperty, IsomorphismInvariance) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    DualGraph g = random_dual_graph(rng);
    std::vector<VertexId> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    DualGraph h = relabel(g, perm);
    EXPECT_EQ(h.genus(), g.genus());
    EXPECT_EQ(h.is_stable(), g.is_stable());
    auto a = g.canonical_multidegree();
    auto b = h.canonical_multidegree();
    for (VertexId v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(b[perm[v]], a[v]);
  }
}

TEST(RandomGraphs, RespectBoundsAndDeterminism) {
  std::mt19937_64 a(5), b(5);
  for (int trial = 0; trial < 100; ++trial) {
    DualGraph g = random_dual_graph(a);
    DualGraph h = random_dual_graph(b);
    EXPECT_EQ(g.to_json().dump(), h.to_json().dump());
    EXPECT_LE(g.vertex_count(), 4u);
    EXPECT_LE(g.edge_count(), 6u);
    for (const auto& v : g.vertices()) EXPECT_LE(v.genus, 3);
  }
}

}  // namespace
}  // namespace spinmod
