#include "hgoe/hypergraph_io.hpp"

#include <gtest/gtest.h>

#include <cstring>

#include "hgoe/error.hpp"
#include "hgoe/indexer.hpp"
#include "hgoe/synthetic.hpp"
#include "support.hpp"

namespace hgoe {
namespace {

Hypergraph three_nodes_two_edges() {
  Hypergraph g;
  const NodeId a = g.upsert_node(NodeKind::Term, "a");
  const NodeId b = g.upsert_node(NodeKind::Term, "b");
  const NodeId c = g.upsert_node(NodeKind::Entity, "C");
  g.add_edge(EdgeKind::Document, Topology::undirected({a, b, c}), "d1");
  g.add_edge(EdgeKind::ContainedIn, Topology::directed({a}, {c}));
  g.set_document_frequency({{"a", 1}, {"b", 1}});
  return g;
}

TEST(HypergraphIo, EmptyGraphRoundTrip) {
  const Hypergraph g;
  const auto bytes = serialize(g);
  EXPECT_EQ(deserialize(bytes), g);
  EXPECT_EQ(std::memcmp(bytes.data(), "HGOE", 4), 0);
}

TEST(HypergraphIo, SmallGraphRoundTrip) {
  const auto g = three_nodes_two_edges();
  const auto back = deserialize(serialize(g));
  EXPECT_EQ(back, g);
  EXPECT_EQ(back.incidence(0).size(), 2u);
  EXPECT_EQ(back.find_document("d1"), 0u);
}

TEST(HypergraphIo, WeightsAndSimilaritiesSurvive) {
  const auto c = generate_collection();
  const auto g = index_corpus(c.documents, Variant::Weighted, &c.lexicon, &c.embeddings);
  const auto bytes = serialize(g);
  const auto back = deserialize(bytes);
  EXPECT_EQ(back, g);
  EXPECT_EQ(serialize(back), bytes);
}

TEST(HypergraphIo, SaveAndLoad) {
  testing::TempDir dir("io");
  const auto g = three_nodes_two_edges();
  save(g, dir / "g.idx");
  EXPECT_EQ(load(dir / "g.idx"), g);
  EXPECT_THROW(load(dir / "missing.idx"), InputError);
}

TEST(HypergraphIo, CorruptedMagicRejected) {
  auto bytes = serialize(three_nodes_two_edges());
  bytes[0] = 'X';
  try {
    deserialize(bytes);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.offset(), 0u);
  }
}

TEST(HypergraphIo, WrongVersionRejected) {
  auto bytes = serialize(three_nodes_two_edges());
  bytes[4] = 99;
  EXPECT_THROW(deserialize(bytes), FormatError);
}

TEST(HypergraphIo, TruncationRejectedAtEveryLength) {
  const auto bytes = serialize(three_nodes_two_edges());
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    EXPECT_THROW(deserialize(std::span(bytes.data(), n)), FormatError) << "length " << n;
  }
}

TEST(HypergraphIo, TrailingBytesRejected) {
  auto bytes = serialize(three_nodes_two_edges());
  bytes.push_back(0);
  EXPECT_THROW(deserialize(bytes), FormatError);
}

TEST(HypergraphIo, BadVariantByteRejected) {
  auto bytes = serialize(three_nodes_two_edges());
  bytes[8] = 7;
  EXPECT_THROW(deserialize(bytes), FormatError);
}

}  // namespace
}  // namespace hgoe
