#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "hgoe/eval.hpp"
#include "hgoe/ranking.hpp"

namespace hgoe {

// topicId -> entries in rank order.
using Run = std::map<std::string, std::vector<ScoredDocument>>;

// "topicId Q0 docId rank score runTag" lines; rank starts at 1. At most
// `depth` entries are written (0 = all).
void write_run(std::ostream& out, std::string_view topic_id, const Ranking& ranking, std::string_view run_tag,
               std::size_t depth = 0);

// Parses a run file, ordering each topic by its rank column. Blank lines and
// lines starting with '#' are ignored. FormatError offsets are line numbers.
Run read_run(std::istream& in);
Run load_run(const std::filesystem::path& path);

// Ordered docIds per topic.
std::map<std::string, std::vector<std::string>> run_doc_ids(const Run& run);

// "topicId iteration docId grade" lines.
Qrels read_qrels(std::istream& in);
Qrels load_qrels(const std::filesystem::path& path);
void write_qrels(std::ostream& out, const std::vector<std::tuple<std::string, std::string, int>>& judgments);

// "topicId<TAB>query" lines, in file order.
std::vector<Topic> read_topics(std::istream& in);
std::vector<Topic> load_topics(const std::filesystem::path& path);
void write_topics(std::ostream& out, const std::vector<Topic>& topics);

// Fixed "%.9g" rendering used for scores in every output.
std::string format_score(double value);

}  // namespace hgoe
