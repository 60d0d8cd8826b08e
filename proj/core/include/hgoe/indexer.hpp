#pragma once

#include <span>

#include "hgoe/corpus.hpp"
#include "hgoe/hypergraph.hpp"

namespace hgoe {

// Neighbour search parameters for context edges.
inline constexpr std::size_t kContextNeighbours = 2;
inline constexpr double kContextMinSimilarity = 0.5;

// Builds the requested hypergraph-of-entity variant. `lexicon` and
// `embeddings` are required for SynsContext and Weighted (ConfigError
// otherwise) and ignored for Base.
Hypergraph index_corpus(std::span<const CorpusDocument> documents, Variant variant,
                        const SynonymLexicon* lexicon = nullptr, const EmbeddingTable* embeddings = nullptr);

// One Synonym edge per synset that shares at least one label with the graph's
// Term nodes; missing synonym terms are created.
void extend_synonyms(Hypergraph& graph, const SynonymLexicon& lexicon);

// For every corpus term with an embedding, links it to its (up to) two most
// cosine-similar corpus terms above the similarity threshold.
void extend_context(Hypergraph& graph, const EmbeddingTable& embeddings);

// Assigns node and edge weights in (0, 1]. Requires corpus statistics.
void compute_weights(Hypergraph& graph);

// 1 / (1 + exp(-log(N / df))).
double sigmoid_idf(std::uint64_t documents, std::uint64_t document_frequency);

}  // namespace hgoe
