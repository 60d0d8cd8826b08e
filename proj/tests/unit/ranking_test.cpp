#include "hgoe/ranking.hpp"

#include <gtest/gtest.h>

#include "hgoe/error.hpp"
#include "hgoe/indexer.hpp"
#include "hgoe/synthetic.hpp"
#include "support.hpp"

namespace hgoe {
namespace {

using testing::star_graph;

Hypergraph eiffel_graph() {
  const std::vector<CorpusDocument> docs{
      {"d1", "the eiffel tower", {"Eiffel Tower"}},
      {"d2", "gustave eiffel engineer", {"Gustave Eiffel"}},
      {"d3", "bank tower", {"First National Bank Tower"}},
  };
  return index_corpus(docs, Variant::Base);
}

TEST(Seeds, TermsExpandToEntitiesMentioningThem) {
  const auto g = eiffel_graph();
  const auto seeds = map_query_to_seeds("Eiffel tower", g);
  const NodeId et = *g.find_node(NodeKind::Entity, "Eiffel Tower");
  const NodeId ge = *g.find_node(NodeKind::Entity, "Gustave Eiffel");
  const NodeId fnb = *g.find_node(NodeKind::Entity, "First National Bank Tower");
  EXPECT_EQ(seeds.per_term.at("eiffel"), (std::vector<NodeId>{std::min(et, ge), std::max(et, ge)}));
  EXPECT_EQ(seeds.per_term.at("tower"), (std::vector<NodeId>{std::min(et, fnb), std::max(et, fnb)}));
  std::vector<NodeId> all{et, ge, fnb};
  std::sort(all.begin(), all.end());
  EXPECT_EQ(seeds.seeds, all);
}

TEST(Seeds, TermWithoutEntitiesSeedsItself) {
  const auto g = eiffel_graph();
  const auto seeds = map_query_to_seeds("engineer", g);
  EXPECT_EQ(seeds.seeds, (std::vector<NodeId>{*g.find_node(NodeKind::Term, "engineer")}));
}

TEST(Seeds, UnknownTermsGiveNoSeeds) {
  const auto g = eiffel_graph();
  EXPECT_TRUE(map_query_to_seeds("louvre", g).empty());
  EXPECT_TRUE(map_query_to_seeds("", g).empty());
}

TEST(Params, ZeroLengthOrRepeatsRejected) {
  RankingParams p;
  p.walk_length = 0;
  EXPECT_THROW(p.validate(), InputError);
  p.walk_length = 2;
  p.repeats = 0;
  EXPECT_THROW(p.validate(), InputError);
  const auto g = star_graph(2);
  EXPECT_THROW(rws("s", g, p), InputError);
}

TEST(FatigueTable, CountdownSemantics) {
  FatigueTable t;
  t.fatigue_node(3, 2);
  t.fatigue_edge(1, 0);
  EXPECT_TRUE(t.node_fatigued(3));
  EXPECT_FALSE(t.edge_fatigued(1));
  EXPECT_EQ(t.nodes(), (std::map<NodeId, std::uint32_t>{{3, 2}}));
  t.tick();
  EXPECT_EQ(t.node_remaining(3), 1u);
  t.tick();
  EXPECT_FALSE(t.node_fatigued(3));
  EXPECT_TRUE(t.empty());
  t.fatigue_edge(7, 1);
  EXPECT_EQ(t.edges(), (std::map<EdgeId, std::uint32_t>{{7, 1}}));
}

TEST(Walk, SingleEdgeOneStep) {
  Hypergraph g;
  const NodeId a = g.upsert_node(NodeKind::Term, "a");
  const NodeId b = g.upsert_node(NodeKind::Term, "b");
  const EdgeId e = g.add_edge(EdgeKind::Document, Topology::undirected({a, b}), "d");
  RankingParams p;
  p.walk_length = 1;
  FatigueTable fatigue;
  Rng rng(1);
  std::uint64_t clock = 0;
  const auto trace = random_walk(g, a, p, fatigue, rng, clock);
  EXPECT_EQ(trace.edges, (std::vector<EdgeId>{e}));
  EXPECT_EQ(trace.nodes, (std::vector<NodeId>{b}));
  EXPECT_EQ(trace.steps, 1u);
  EXPECT_EQ(clock, 1u);
}

TEST(Walk, NodeFatigueLetsTheWalkReturn) {
  Hypergraph g;
  const NodeId a = g.upsert_node(NodeKind::Term, "a");
  const NodeId b = g.upsert_node(NodeKind::Term, "b");
  const EdgeId e = g.add_edge(EdgeKind::Document, Topology::undirected({a, b}), "d");
  RankingParams p;
  p.walk_length = 2;
  p.node_fatigue = 10;
  FatigueTable fatigue;
  Rng rng(1);
  std::uint64_t clock = 0;
  const auto trace = random_walk(g, a, p, fatigue, rng, clock);
  EXPECT_EQ(trace.edges, (std::vector<EdgeId>{e, e}));
  EXPECT_EQ(trace.nodes, (std::vector<NodeId>{b, a}));
  EXPECT_TRUE(fatigue.node_fatigued(a));
  EXPECT_TRUE(fatigue.node_fatigued(b));
}

TEST(Walk, EdgeFatigueStopsTheWalk) {
  Hypergraph g;
  const NodeId a = g.upsert_node(NodeKind::Term, "a");
  const NodeId b = g.upsert_node(NodeKind::Term, "b");
  g.add_edge(EdgeKind::Document, Topology::undirected({a, b}), "d");
  RankingParams p;
  p.walk_length = 2;
  p.edge_fatigue = 10;
  FatigueTable fatigue;
  Rng rng(1);
  std::uint64_t clock = 0;
  const auto trace = random_walk(g, a, p, fatigue, rng, clock);
  EXPECT_EQ(trace.steps, 1u);
  EXPECT_EQ(trace.nodes, (std::vector<NodeId>{b}));
  EXPECT_EQ(clock, 1u);
}

TEST(Walk, FatigueLastsExactlyDeltaDecisions) {
  Hypergraph g;
  const NodeId a = g.upsert_node(NodeKind::Term, "a");
  const NodeId b = g.upsert_node(NodeKind::Term, "b");
  g.add_edge(EdgeKind::Document, Topology::undirected({a, b}), "d1");
  RankingParams p;
  p.walk_length = 1;
  p.node_fatigue = 3;
  FatigueTable fatigue;
  Rng rng(1);
  std::uint64_t clock = 0;
  EXPECT_EQ(random_walk(g, a, p, fatigue, rng, clock).steps, 1u);
  EXPECT_EQ(fatigue.node_remaining(b), 3u);
  // b stays blocked while other steps tick the clock.
  for (int i = 0; i < 2; ++i) {
    fatigue.tick();
    EXPECT_TRUE(fatigue.node_fatigued(b));
  }
  fatigue.tick();
  EXPECT_FALSE(fatigue.node_fatigued(b));
}

TEST(Rws, EmptyQueryTakesNoSteps) {
  const auto g = star_graph(3);
  const auto r = rws("", g, RankingParams{});
  EXPECT_EQ(r.total_steps, 0u);
  EXPECT_TRUE(r.entries.empty());
  EXPECT_TRUE(rws("unknown", g, RankingParams{}).entries.empty());
}

TEST(Rws, StarScoresAreUniform) {
  const auto g = star_graph(2);
  RankingParams p;
  p.walk_length = 1;
  p.repeats = 100000;
  p.rng_seed = 11;
  const auto r = rws("s", g, p);
  ASSERT_EQ(r.entries.size(), 2u);
  for (const auto& e : r.entries) EXPECT_NEAR(e.score, 0.5, 0.01);
  EXPECT_EQ(r.total_steps, 100000u);
}

TEST(Rws, WeightedStarFollowsEdgeWeights) {
  const auto g = star_graph(2, {0.8, 0.2});
  RankingParams p;
  p.walk_length = 1;
  p.repeats = 100000;
  p.rng_seed = 12;
  const auto r = rws("s", g, p);
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.entries[0].doc_id, "doc1");
  EXPECT_NEAR(r.entries[0].score, 0.8, 0.01);
}

TEST(Rws, DeterministicForFixedSeed) {
  const auto c = generate_collection();
  const auto g = index_corpus(c.documents, Variant::Base);
  RankingParams p;
  p.node_fatigue = 10;
  p.rng_seed = 99;
  EXPECT_EQ(rws(c.topics[0].query, g, p), rws(c.topics[0].query, g, p));
  auto other = p;
  other.rng_seed = 100;
  EXPECT_NE(rws(c.topics[0].query, g, p).visit_counts, rws(c.topics[0].query, g, other).visit_counts);
}

TEST(Rws, ScoresSumToOneAndAreSorted) {
  const auto c = generate_collection();
  const auto g = index_corpus(c.documents, Variant::Weighted, &c.lexicon, &c.embeddings);
  const auto r = rws(c.topics[3].query, g, RankingParams{});
  ASSERT_FALSE(r.entries.empty());
  double sum = 0.0;
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    sum += r.entries[i].score;
    if (i > 0) {
      const auto& prev = r.entries[i - 1];
      EXPECT_TRUE(prev.score > r.entries[i].score ||
                  (prev.score == r.entries[i].score && prev.doc_id < r.entries[i].doc_id));
    }
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(Rws, ZeroFatigueMatchesReferenceWalker) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (bool weighted : {false, true}) {
      const auto inst = testing::random_instance(seed, weighted);
      RankingParams p;
      p.walk_length = 3;
      p.repeats = 50;
      p.rng_seed = seed * 7 + 1;
      const auto seeds = map_query_to_seeds(inst.query, inst.graph);
      EXPECT_EQ(rws(seeds, inst.graph, p), testing::reference_rws(seeds, inst.graph, p)) << "seed " << seed;
    }
  }
}

TEST(Rws, ObserverSeesEveryStep) {
  const auto c = generate_collection();
  const auto g = index_corpus(c.documents, Variant::Base);
  RankingParams p;
  p.repeats = 20;
  p.node_fatigue = 4;
  std::uint64_t events = 0;
  std::uint64_t last_clock = 0;
  StepObserver obs = [&](const StepEvent& e) {
    if (events > 0) EXPECT_EQ(e.clock, last_clock + 1);
    last_clock = e.clock;
    ++events;
  };
  const auto r = rws(c.topics[0].query, g, p, &obs);
  EXPECT_EQ(events, r.total_steps);
}

TEST(Rws, DenseGraphFatigueShortensWalks) {
  DenseOptions o;
  o.clusters = 20;
  o.documents_per_cluster = 60;
  const auto dense = generate_dense_corpus(o);
  const auto g = index_corpus(dense.documents, Variant::Base);
  std::uint64_t fatigued = 0;
  std::uint64_t plain = 0;
  for (const auto& q : dense.queries) {
    RankingParams p;
    p.rng_seed = 5;
    plain += rws(q.query, g, p).total_steps;
    p.node_fatigue = 10;
    fatigued += rws(q.query, g, p).total_steps;
  }
  EXPECT_LT(fatigued, plain);
}

TEST(Rws, RunTimedReportsTheSameRanking) {
  const auto g = star_graph(3);
  RankingParams p;
  p.rng_seed = 4;
  const auto timed = run_timed("s", g, p);
  EXPECT_EQ(timed.ranking, rws("s", g, p));
  EXPECT_GE(timed.elapsed.count(), 0);
}

}  // namespace
}  // namespace hgoe
