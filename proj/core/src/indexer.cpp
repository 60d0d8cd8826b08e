#include "hgoe/indexer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include "hgoe/error.hpp"
#include "hgoe/tokenizer.hpp"

namespace hgoe {

Hypergraph index_corpus(std::span<const CorpusDocument> documents, Variant variant, const SynonymLexicon* lexicon,
                        const EmbeddingTable* embeddings) {
  if (variant != Variant::Base) {
    if (lexicon == nullptr) throw ConfigError("variant '" + std::string(to_string(variant)) + "' needs a synonym lexicon");
    if (embeddings == nullptr) throw ConfigError("variant '" + std::string(to_string(variant)) + "' needs embeddings");
  }

  Hypergraph graph(variant);
  std::map<std::string, std::uint64_t> df;
  std::unordered_set<std::string> seen_entities;
  std::unordered_set<std::string> seen_docs;

  for (const CorpusDocument& doc : documents) {
    if (!seen_docs.insert(doc.doc_id).second) throw InputError("duplicate document id '" + doc.doc_id + "'");

    std::vector<NodeId> members;
    for (const std::string& term : unique_tokens(doc.text)) {
      ++df[term];
      members.push_back(graph.upsert_node(NodeKind::Term, term));
    }

    std::vector<NodeId> entities;
    for (const std::string& name : doc.links) {
      entities.push_back(graph.upsert_node(NodeKind::Entity, name));
    }
    members.insert(members.end(), entities.begin(), entities.end());
    if (members.empty()) throw InputError("document '" + doc.doc_id + "' has no indexable content");
    graph.add_edge(EdgeKind::Document, Topology::undirected(members), doc.doc_id);

    for (const std::string& name : doc.links) {
      if (!seen_entities.insert(name).second) continue;
      std::vector<NodeId> tail;
      for (const std::string& term : unique_tokens(name)) tail.push_back(graph.upsert_node(NodeKind::Term, term));
      if (tail.empty()) continue;
      const NodeId head = *graph.find_node(NodeKind::Entity, name);
      graph.add_edge(EdgeKind::ContainedIn, Topology::directed(std::move(tail), {head}));
    }

    std::sort(entities.begin(), entities.end());
    entities.erase(std::unique(entities.begin(), entities.end()), entities.end());
    if (entities.size() >= 2) graph.add_edge(EdgeKind::RelatedTo, Topology::undirected(std::move(entities)));
  }
  graph.set_document_frequency(std::move(df));

  if (variant != Variant::Base) {
    extend_synonyms(graph, *lexicon);
    extend_context(graph, *embeddings);
  }
  if (variant == Variant::Weighted) compute_weights(graph);
  return graph;
}

void extend_synonyms(Hypergraph& graph, const SynonymLexicon& lexicon) {
  // Overlap is judged against the vocabulary as it was before expansion, so
  // synset order does not matter.
  std::unordered_set<std::string> vocabulary;
  for (const Node& n : graph.nodes()) {
    if (n.kind == NodeKind::Term) vocabulary.insert(n.label);
  }

  for (const auto& synset : lexicon.synsets) {
    const bool overlaps =
        std::any_of(synset.begin(), synset.end(), [&](const std::string& label) { return vocabulary.contains(label); });
    if (!overlaps) continue;
    std::vector<NodeId> members;
    members.reserve(synset.size());
    for (const std::string& label : synset) members.push_back(graph.upsert_node(NodeKind::Term, label));
    graph.add_edge(EdgeKind::Synonym, Topology::undirected(std::move(members)));
  }
}

void extend_context(Hypergraph& graph, const EmbeddingTable& embeddings) {
  struct Embedded {
    NodeId node;
    std::vector<double> unit;
  };
  std::vector<Embedded> terms;
  for (const auto& [label, count] : graph.document_frequency()) {
    const auto id = graph.find_node(NodeKind::Term, label);
    const auto* vec = embeddings.find(label);
    if (!id || vec == nullptr) continue;
    const double norm = std::sqrt(std::inner_product(vec->begin(), vec->end(), vec->begin(), 0.0));
    Embedded e{*id, *vec};
    for (double& v : e.unit) v /= norm;
    terms.push_back(std::move(e));
  }
  std::sort(terms.begin(), terms.end(), [](const Embedded& a, const Embedded& b) { return a.node < b.node; });

  struct Neighbour {
    double similarity;
    NodeId node;
  };
  std::vector<Neighbour> candidates;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    candidates.clear();
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (i == j) continue;
      double cos = std::inner_product(terms[i].unit.begin(), terms[i].unit.end(), terms[j].unit.begin(), 0.0);
      cos = std::min(cos, 1.0);
      if (cos > kContextMinSimilarity) candidates.push_back({cos, terms[j].node});
    }
    if (candidates.empty()) continue;

    const auto keep = std::min(kContextNeighbours, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(),
                      [](const Neighbour& a, const Neighbour& b) {
                        return a.similarity != b.similarity ? a.similarity > b.similarity : a.node < b.node;
                      });

    std::vector<NodeId> members{terms[i].node};
    std::vector<double> similarities;
    for (std::size_t k = 0; k < keep; ++k) {
      members.push_back(candidates[k].node);
      similarities.push_back(candidates[k].similarity);
    }
    const EdgeId id = graph.add_edge(EdgeKind::Context, Topology::undirected(std::move(members)));
    if (graph.edge(id).similarities.empty()) graph.set_similarities(id, std::move(similarities));
  }
}

double sigmoid_idf(std::uint64_t documents, std::uint64_t document_frequency) {
  const double idf = std::log(static_cast<double>(documents) / static_cast<double>(document_frequency));
  return 1.0 / (1.0 + std::exp(-idf));
}

void compute_weights(Hypergraph& graph) {
  if (graph.variant() != Variant::Weighted) throw ConfigError("compute_weights needs a weighted-variant graph");
  const std::uint64_t n_docs = graph.document_count();
  const auto& df = graph.document_frequency();

  for (const Node& node : graph.nodes()) {
    std::uint64_t freq = 0;
    if (node.kind == NodeKind::Term) {
      // Terms that only occur in entity names or synsets count as seen once.
      auto it = df.find(node.label);
      freq = it == df.end() ? 1 : it->second;
    } else {
      for (const Incidence& inc : graph.incidence(node.id)) {
        if (graph.edge(inc.edge).kind == EdgeKind::Document) ++freq;
      }
      if (freq == 0) throw InternalError("entity '" + node.label + "' is not linked from any document");
    }
    graph.set_node_weight(node.id, sigmoid_idf(n_docs, freq));
  }

  // Distinct co-occurring entities per entity, across all related_to edges.
  std::unordered_map<NodeId, std::set<NodeId>> reach;
  for (const Hyperedge& e : graph.edges()) {
    if (e.kind != EdgeKind::RelatedTo) continue;
    for (NodeId a : e.topology.members()) {
      auto& others = reach[a];
      for (NodeId b : e.topology.members()) {
        if (a != b) others.insert(b);
      }
    }
  }
  const auto entity_count = graph.count_nodes(NodeKind::Entity);

  for (const Hyperedge& e : graph.edges()) {
    double weight = 0.0;
    switch (e.kind) {
      case EdgeKind::Document:
        weight = 0.5;
        break;
      case EdgeKind::ContainedIn:
        weight = 1.0 / static_cast<double>(e.topology.tail().size());
        break;
      case EdgeKind::Synonym:
        weight = 1.0 / static_cast<double>(e.topology.members().size());
        break;
      case EdgeKind::Context:
        if (e.similarities.empty()) throw InternalError("context edge without recorded similarities");
        weight = std::accumulate(e.similarities.begin(), e.similarities.end(), 0.0) /
                 static_cast<double>(e.similarities.size());
        break;
      case EdgeKind::RelatedTo: {
        double sum = 0.0;
        for (NodeId v : e.topology.members()) {
          sum += static_cast<double>(reach[v].size()) / static_cast<double>(entity_count - 1);
        }
        weight = sum / static_cast<double>(e.topology.members().size());
        break;
      }
    }
    graph.set_edge_weight(e.id, weight);
  }
}

}  // namespace hgoe
