#include "hgoe/trec.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hgoe/error.hpp"

namespace hgoe {

namespace {

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

bool skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

template <class T>
bool parse_number(const std::string& field, T& value) {
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  return ec == std::errc{} && ptr == field.data() + field.size();
}

}  // namespace

std::string format_score(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_run(std::ostream& out, std::string_view topic_id, const Ranking& ranking, std::string_view run_tag,
               std::size_t depth) {
  const std::size_t n = depth == 0 ? ranking.entries.size() : std::min(depth, ranking.entries.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = ranking.entries[i];
    out << topic_id << " Q0 " << e.doc_id << ' ' << (i + 1) << ' ' << format_score(e.score) << ' ' << run_tag << '\n';
  }
}

Run read_run(std::istream& in) {
  struct Row {
    long rank;
    ScoredDocument doc;
  };
  std::map<std::string, std::vector<Row>> rows;
  std::map<std::string, std::set<std::string>> seen;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ss(line);
    std::string topic, q0, doc, rank_s, score_s, tag;
    if (!(ss >> topic >> q0 >> doc >> rank_s >> score_s >> tag)) {
      throw FormatError("run line needs 6 fields", line_no);
    }
    Row row{};
    if (!parse_number(rank_s, row.rank)) throw FormatError("bad rank '" + rank_s + "'", line_no);
    if (!parse_number(score_s, row.doc.score)) throw FormatError("bad score '" + score_s + "'", line_no);
    if (!seen[topic].insert(doc).second) throw FormatError("document '" + doc + "' repeated in topic " + topic, line_no);
    row.doc.doc_id = doc;
    rows[topic].push_back(std::move(row));
  }
  Run run;
  for (auto& [topic, list] : rows) {
    std::stable_sort(list.begin(), list.end(), [](const Row& a, const Row& b) { return a.rank < b.rank; });
    auto& out = run[topic];
    for (auto& r : list) out.push_back(std::move(r.doc));
  }
  return run;
}

Run load_run(const std::filesystem::path& path) {
  auto in = open(path);
  return read_run(in);
}

std::map<std::string, std::vector<std::string>> run_doc_ids(const Run& run) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [topic, entries] : run) out.emplace(topic, doc_ids(entries));
  return out;
}

Qrels read_qrels(std::istream& in) {
  Qrels qrels;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ss(line);
    std::string topic, iteration, doc, grade_s;
    if (!(ss >> topic >> iteration >> doc >> grade_s)) throw FormatError("qrels line needs 4 fields", line_no);
    int grade = 0;
    if (!parse_number(grade_s, grade)) throw FormatError("bad relevance grade '" + grade_s + "'", line_no);
    try {
      qrels.add(topic, doc, grade);
    } catch (const InputError& e) {
      throw FormatError(e.what(), line_no);
    }
  }
  return qrels;
}

Qrels load_qrels(const std::filesystem::path& path) {
  auto in = open(path);
  return read_qrels(in);
}

void write_qrels(std::ostream& out, const std::vector<std::tuple<std::string, std::string, int>>& judgments) {
  for (const auto& [topic, doc, grade] : judgments) out << topic << " 0 " << doc << ' ' << grade << '\n';
}

std::vector<Topic> read_topics(std::istream& in) {
  std::vector<Topic> topics;
  std::set<std::string> ids;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skippable(line)) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw FormatError("topic line needs \"topicId<TAB>query\"", line_no);
    Topic t{line.substr(0, tab), line.substr(tab + 1)};
    if (!ids.insert(t.topic_id).second) throw FormatError("duplicate topic id '" + t.topic_id + "'", line_no);
    topics.push_back(std::move(t));
  }
  return topics;
}

std::vector<Topic> load_topics(const std::filesystem::path& path) {
  auto in = open(path);
  return read_topics(in);
}

void write_topics(std::ostream& out, const std::vector<Topic>& topics) {
  for (const auto& t : topics) out << t.topic_id << '\t' << t.query << '\n';
}

}  // namespace hgoe
