#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hgoe/corpus.hpp"
#include "hgoe/ranking.hpp"

namespace hgoe {

inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;

struct Posting {
  std::uint32_t doc = 0;  // index into InvertedIndex::doc_ids
  std::uint32_t tf = 0;

  bool operator==(const Posting&) const = default;
};

// Term -> postings over the tokenized document text. Postings are sorted by
// docId (doc_ids is kept in ascending docId order).
struct InvertedIndex {
  std::vector<std::string> doc_ids;
  std::vector<std::uint32_t> doc_lengths;
  std::unordered_map<std::string, std::vector<Posting>> postings;
  double avgdl = 0.0;

  std::size_t document_count() const noexcept { return doc_ids.size(); }
  std::uint64_t document_frequency(const std::string& term) const;
};

// Throws InputError on duplicate docIds.
InvertedIndex build_inverted(std::span<const CorpusDocument> documents);

// sum over query tokens of tf * (1 + ln(N / (1 + df))). Top k, docId tie-break.
Ranking search_tfidf(std::string_view query, const InvertedIndex& index, std::size_t k);

// sum over query tokens of idf * tf (k1 + 1) / (tf + k1 (1 - b + b |d| / avgdl))
// with idf = ln((N - df + 0.5) / (df + 0.5) + 1).
Ranking search_bm25(std::string_view query, const InvertedIndex& index, std::size_t k, double k1 = kBm25K1,
                    double b = kBm25B);

}  // namespace hgoe
