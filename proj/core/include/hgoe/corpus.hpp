#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <unordered_map>
#include <vector>

namespace hgoe {

struct CorpusDocument {
  std::string doc_id;
  std::string text;
  // Names of linked entities, in document order.
  std::vector<std::string> links;

  bool operator==(const CorpusDocument&) const = default;
};

// JSON Lines, one {"id": ..., "text": ..., "links": [...]} object per line.
// "text" and "links" are optional; blank lines are skipped. Throws FormatError
// (offset = 1-based line number) on malformed lines, duplicate ids, or
// documents with neither text nor links.
std::vector<CorpusDocument> read_corpus(std::istream& in);
std::vector<CorpusDocument> load_corpus(const std::filesystem::path& path);
void write_corpus(std::ostream& out, const std::vector<CorpusDocument>& documents);

struct SynonymLexicon {
  std::vector<std::vector<std::string>> synsets;
};

// One synset per line, labels separated by tabs. Labels are lowercased
// (ASCII) to match tokenizer output; duplicate labels within a line collapse.
SynonymLexicon read_lexicon(std::istream& in);
SynonymLexicon load_lexicon(const std::filesystem::path& path);

// word2vec text format: a "count dim" header line, then "word v1 ... vdim".
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension = 0) : dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return vectors_.size(); }

  // Throws FormatError on dimension mismatch or a zero vector.
  void add(const std::string& word, std::vector<double> vector);
  const std::vector<double>* find(const std::string& word) const;
  // All words, sorted.
  std::vector<std::string> words() const;

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

EmbeddingTable read_embeddings(std::istream& in);
// Writes words in sorted order with "%.9g" components.
void write_embeddings(std::ostream& out, const EmbeddingTable& table);
void write_lexicon(std::ostream& out, const SynonymLexicon& lexicon);
EmbeddingTable load_embeddings(const std::filesystem::path& path);

}  // namespace hgoe
