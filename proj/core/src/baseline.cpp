#include "hgoe/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hgoe/error.hpp"
#include "hgoe/tokenizer.hpp"

namespace hgoe {

namespace {

// Each query token counts once per occurrence, as in a bag-of-words query.
template <class TermScore>
Ranking score_query(std::string_view query, const InvertedIndex& index, std::size_t k, TermScore&& term_score) {
  Ranking ranking;
  if (index.document_count() == 0 || k == 0) return ranking;

  std::vector<double> scores(index.document_count(), 0.0);
  std::vector<bool> matched(index.document_count(), false);
  for (const std::string& term : tokenize(query)) {
    auto it = index.postings.find(term);
    if (it == index.postings.end()) continue;
    const auto df = static_cast<double>(it->second.size());
    for (const Posting& p : it->second) {
      scores[p.doc] += term_score(static_cast<double>(p.tf), df, index.doc_lengths[p.doc]);
      matched[p.doc] = true;
    }
  }

  std::vector<ScoredDocument> entries;
  for (std::size_t d = 0; d < scores.size(); ++d) {
    if (matched[d]) entries.push_back({index.doc_ids[d], scores[d]});
  }
  sort_entries(entries);
  if (entries.size() > k) entries.resize(k);
  ranking.entries = std::move(entries);
  return ranking;
}

}  // namespace

std::uint64_t InvertedIndex::document_frequency(const std::string& term) const {
  auto it = postings.find(term);
  return it == postings.end() ? 0 : it->second.size();
}

InvertedIndex build_inverted(std::span<const CorpusDocument> documents) {
  std::vector<const CorpusDocument*> sorted;
  sorted.reserve(documents.size());
  for (const auto& d : documents) sorted.push_back(&d);
  std::sort(sorted.begin(), sorted.end(),
            [](const CorpusDocument* a, const CorpusDocument* b) { return a->doc_id < b->doc_id; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->doc_id == sorted[i - 1]->doc_id) {
      throw InputError("duplicate document id '" + sorted[i]->doc_id + "'");
    }
  }

  InvertedIndex index;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto tokens = tokenize(sorted[i]->text);
    std::map<std::string, std::uint32_t> tf;
    for (const auto& t : tokens) ++tf[t];
    for (const auto& [term, count] : tf) {
      index.postings[term].push_back({static_cast<std::uint32_t>(i), count});
    }
    index.doc_ids.push_back(sorted[i]->doc_id);
    index.doc_lengths.push_back(static_cast<std::uint32_t>(tokens.size()));
  }
  if (!index.doc_lengths.empty()) {
    index.avgdl = std::accumulate(index.doc_lengths.begin(), index.doc_lengths.end(), 0.0) /
                  static_cast<double>(index.doc_lengths.size());
  }
  return index;
}

Ranking search_tfidf(std::string_view query, const InvertedIndex& index, std::size_t k) {
  const auto n = static_cast<double>(index.document_count());
  return score_query(query, index, k, [n](double tf, double df, std::uint32_t) {
    return tf * (1.0 + std::log(n / (1.0 + df)));
  });
}

Ranking search_bm25(std::string_view query, const InvertedIndex& index, std::size_t k, double k1, double b) {
  const auto n = static_cast<double>(index.document_count());
  const double avgdl = index.avgdl;
  return score_query(query, index, k, [=](double tf, double df, std::uint32_t length) {
    const double idf = std::log((n - df + 0.5) / (df + 0.5) + 1.0);
    const double norm = avgdl > 0.0 ? static_cast<double>(length) / avgdl : 0.0;
    return idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * norm));
  });
}

}  // namespace hgoe
