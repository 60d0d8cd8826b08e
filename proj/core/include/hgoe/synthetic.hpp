#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include "hgoe/corpus.hpp"
#include "hgoe/eval.hpp"

namespace hgoe {

// Small test collection with planted relevance: every topic owns a few rare
// terms and one entity; its relevant documents mention them, a couple of
// judged-nonrelevant distractors share one query term, and the rest of the
// corpus is Zipf-distributed background text with generic entity links.
struct CollectionOptions {
  std::size_t documents = 200;
  std::size_t topics = 10;
  std::size_t relevant_per_topic = 6;
  std::size_t distractors_per_topic = 2;
  std::size_t min_terms = 3;
  std::size_t max_terms = 8;
  std::size_t background_vocabulary = 300;
  std::size_t generic_entities = 40;
  // Chance (percent) that a relevant document links the topic entity / one
  // generic entity.
  std::uint64_t topic_link_percent = 60;
  std::uint64_t generic_link_percent = 30;
  std::size_t embedding_dimension = 16;
  std::uint64_t seed = 42;
};

struct SyntheticCollection {
  std::vector<CorpusDocument> documents;
  std::vector<Topic> topics;
  // (topicId, docId, grade)
  std::vector<std::tuple<std::string, std::string, int>> judgments;
  SynonymLexicon lexicon;
  EmbeddingTable embeddings;
};

SyntheticCollection generate_collection(const CollectionOptions& options = {});

// Writes corpus.jsonl, topics.tsv, qrels.txt, synonyms.tsv and embeddings.txt.
void write_collection(const SyntheticCollection& collection, const std::filesystem::path& directory);

// Hyperedge-dense corpus: the vocabulary is split into small clusters and every
// document is a short random subset of one cluster, so term nodes sit in many
// overlapping document edges while their neighbourhoods stay small.
struct DenseOptions {
  std::size_t clusters = 125;
  std::size_t cluster_size = 8;
  std::size_t documents_per_cluster = 140;
  std::size_t min_terms = 2;
  std::size_t max_terms = 4;
  std::size_t queries = 10;
  std::uint64_t seed = 7;
};

struct DenseCorpus {
  std::vector<CorpusDocument> documents;
  // Two-term queries drawn from one cluster each.
  std::vector<Topic> queries;
};

DenseCorpus generate_dense_corpus(const DenseOptions& options = {});

}  // namespace hgoe
