#include "hgoe/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "hgoe/error.hpp"
#include "json.hpp"

namespace hgoe {

namespace {

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

std::string ascii_lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  return out;
}

}  // namespace

std::vector<CorpusDocument> read_corpus(std::istream& in) {
  std::vector<CorpusDocument> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
      throw FormatError("corpus line needs a string \"id\"", line_no);
    }
    CorpusDocument doc;
    doc.doc_id = j["id"].get<std::string>();
    if (doc.doc_id.empty()) throw FormatError("empty document id", line_no);
    if (j.contains("text")) {
      if (!j["text"].is_string()) throw FormatError("\"text\" must be a string", line_no);
      doc.text = j["text"].get<std::string>();
    }
    if (j.contains("links")) {
      if (!j["links"].is_array()) throw FormatError("\"links\" must be an array", line_no);
      for (const auto& link : j["links"]) {
        if (!link.is_string() || link.get<std::string>().empty()) {
          throw FormatError("links must be nonempty strings", line_no);
        }
        doc.links.push_back(link.get<std::string>());
      }
    }
    if (doc.text.empty() && doc.links.empty()) {
      throw FormatError("document '" + doc.doc_id + "' has neither text nor links", line_no);
    }
    if (!seen.insert(doc.doc_id).second) throw FormatError("duplicate document id '" + doc.doc_id + "'", line_no);
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<CorpusDocument> load_corpus(const std::filesystem::path& path) {
  auto in = open(path);
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<CorpusDocument>& documents) {
  for (const auto& doc : documents) {
    nlohmann::json j{{"id", doc.doc_id}, {"text", doc.text}, {"links", doc.links}};
    out << j.dump() << '\n';
  }
}

SynonymLexicon read_lexicon(std::istream& in) {
  SynonymLexicon lexicon;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> synset;
    for (auto& label : split(line, '\t')) {
      if (label.empty()) continue;
      synset.push_back(ascii_lower(std::move(label)));
    }
    std::sort(synset.begin(), synset.end());
    synset.erase(std::unique(synset.begin(), synset.end()), synset.end());
    if (synset.size() < 2) throw FormatError("synset needs at least two distinct labels", line_no);
    lexicon.synsets.push_back(std::move(synset));
  }
  return lexicon;
}

SynonymLexicon load_lexicon(const std::filesystem::path& path) {
  auto in = open(path);
  return read_lexicon(in);
}

void EmbeddingTable::add(const std::string& word, std::vector<double> vector) {
  if (vector.size() != dimension_) {
    throw FormatError("embedding for '" + word + "' has dimension " + std::to_string(vector.size()) + ", expected " +
                          std::to_string(dimension_),
                      size());
  }
  if (std::all_of(vector.begin(), vector.end(), [](double v) { return v == 0.0; })) {
    throw FormatError("zero embedding vector for '" + word + "'", size());
  }
  vectors_.emplace(word, std::move(vector));
}

const std::vector<double>* EmbeddingTable::find(const std::string& word) const {
  auto it = vectors_.find(word);
  return it == vectors_.end() ? nullptr : &it->second;
}

std::vector<std::string> EmbeddingTable::words() const {
  std::vector<std::string> out;
  out.reserve(vectors_.size());
  for (const auto& [word, vec] : vectors_) out.push_back(word);
  std::sort(out.begin(), out.end());
  return out;
}

void write_embeddings(std::ostream& out, const EmbeddingTable& table) {
  out << table.size() << ' ' << table.dimension() << '\n';
  char buf[32];
  for (const auto& word : table.words()) {
    out << word;
    for (double v : *table.find(word)) {
      std::snprintf(buf, sizeof buf, " %.9g", v);
      out << buf;
    }
    out << '\n';
  }
}

void write_lexicon(std::ostream& out, const SynonymLexicon& lexicon) {
  for (const auto& synset : lexicon.synsets) {
    for (std::size_t i = 0; i < synset.size(); ++i) out << (i ? "\t" : "") << synset[i];
    out << '\n';
  }
}

EmbeddingTable read_embeddings(std::istream& in) {
  std::string line;
  std::uint64_t line_no = 0;
  std::size_t count = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    std::istringstream header(line);
    if (!(header >> count >> dim) || dim == 0) throw FormatError("expected \"count dim\" header", line_no);
    break;
  }
  if (dim == 0) throw FormatError("empty embedding file", line_no);

  EmbeddingTable table(dim);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream row(line);
    std::string word;
    row >> word;
    std::vector<double> values;
    std::string field;
    while (row >> field) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw FormatError("bad number '" + field + "' in embedding row", line_no);
      }
      values.push_back(v);
    }
    if (values.size() != dim) {
      throw FormatError("embedding for '" + word + "' has dimension " + std::to_string(values.size()) +
                            ", header says " + std::to_string(dim),
                        line_no);
    }
    ++rows;
    word = ascii_lower(std::move(word));
    if (table.find(word)) continue;  // first spelling wins after lowercasing
    if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) {
      throw FormatError("zero embedding vector for '" + word + "'", line_no);
    }
    table.add(word, std::move(values));
  }
  if (rows != count) {
    throw FormatError("header declares " + std::to_string(count) + " vectors, found " + std::to_string(rows),
                      line_no);
  }
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  auto in = open(path);
  return read_embeddings(in);
}

}  // namespace hgoe
