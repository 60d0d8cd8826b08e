#include <gtest/gtest.h>

#include <sstream>

#include "hgoe/corpus.hpp"
#include "hgoe/error.hpp"
#include "hgoe/tokenizer.hpp"
#include "hgoe/trec.hpp"

namespace hgoe {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenizer, LowercasesAndSplitsOnPunctuation) {
  EXPECT_EQ(tokenize("Eiffel Tower!"), (Tokens{"eiffel", "tower"}));
  EXPECT_EQ(tokenize(""), Tokens{});
  EXPECT_EQ(tokenize("B-52's flight"), (Tokens{"b", "52", "s", "flight"}));
  EXPECT_EQ(tokenize("  a\tb\n\nc  "), (Tokens{"a", "b", "c"}));
}

TEST(Tokenizer, KeepsDuplicatesAndUtf8) {
  EXPECT_EQ(tokenize("a A a"), (Tokens{"a", "a", "a"}));
  EXPECT_EQ(tokenize("caf\xc3\xa9 ok"), (Tokens{"caf\xc3\xa9", "ok"}));
  EXPECT_EQ(unique_tokens("b a b"), (Tokens{"a", "b"}));
}

TEST(Corpus, ReadsJsonLines) {
  std::istringstream in(
      "{\"id\": \"d1\", \"text\": \"eiffel tower\", \"links\": [\"Eiffel Tower\"]}\n"
      "\n"
      "{\"id\": \"d2\", \"links\": [\"Paris\"]}\n");
  const auto docs = read_corpus(in);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0], (CorpusDocument{"d1", "eiffel tower", {"Eiffel Tower"}}));
  EXPECT_EQ(docs[1], (CorpusDocument{"d2", "", {"Paris"}}));

  std::ostringstream out;
  write_corpus(out, docs);
  std::istringstream again(out.str());
  EXPECT_EQ(read_corpus(again), docs);
}

TEST(Corpus, ErrorsCarryLineNumbers) {
  const auto offset_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_corpus(in);
    } catch (const FormatError& e) {
      return e.offset();
    }
    return 0;
  };
  EXPECT_EQ(offset_of("{\"id\":\"a\",\"text\":\"x\"}\nnot json\n"), 2u);
  EXPECT_EQ(offset_of("{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n"), 2u);
  EXPECT_EQ(offset_of("{\"id\":\"a\"}\n"), 1u);
  EXPECT_EQ(offset_of("{\"text\":\"x\"}\n"), 1u);
  EXPECT_EQ(offset_of("{\"id\":\"a\",\"links\":[3]}\n"), 1u);
}

TEST(Lexicon, LowercasesAndDeduplicates) {
  std::istringstream in("Car\tautomobile\tCAR\n\nbig\tlarge\thuge\n");
  const auto lex = read_lexicon(in);
  ASSERT_EQ(lex.synsets.size(), 2u);
  EXPECT_EQ(lex.synsets[0], (Tokens{"automobile", "car"}));
  EXPECT_EQ(lex.synsets[1].size(), 3u);

  std::istringstream single("car\tCar\n");
  EXPECT_THROW(read_lexicon(single), FormatError);
}

TEST(Embeddings, ReadsWord2VecText) {
  std::istringstream in("2 3\nParis 1 0 0\nlondon 0.5 0.5 0\n");
  const auto table = read_embeddings(in);
  EXPECT_EQ(table.dimension(), 3u);
  EXPECT_EQ(table.size(), 2u);
  ASSERT_NE(table.find("paris"), nullptr);
  EXPECT_EQ(*table.find("paris"), (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(table.find("berlin"), nullptr);

  std::ostringstream out;
  write_embeddings(out, table);
  std::istringstream again(out.str());
  const auto back = read_embeddings(again);
  EXPECT_EQ(back.words(), table.words());
  EXPECT_EQ(*back.find("london"), *table.find("london"));
}

TEST(Embeddings, RejectsMalformedRows) {
  std::istringstream short_row("1 3\nx 1 2\n");
  EXPECT_THROW(read_embeddings(short_row), FormatError);
  std::istringstream zero("1 2\nx 0 0\n");
  EXPECT_THROW(read_embeddings(zero), FormatError);
  std::istringstream count("2 2\nx 1 0\n");
  EXPECT_THROW(read_embeddings(count), FormatError);
  std::istringstream number("1 2\nx 1 abc\n");
  EXPECT_THROW(read_embeddings(number), FormatError);
}

TEST(Trec, RunRoundTrip) {
  Ranking r;
  r.entries = {{"d2", 0.75}, {"d1", 0.25}};
  std::ostringstream out;
  write_run(out, "7", r, "tag");
  EXPECT_EQ(out.str(), "7 Q0 d2 1 0.75 tag\n7 Q0 d1 2 0.25 tag\n");

  std::istringstream in("# comment\n7 Q0 d1 2 0.25 tag\n7 Q0 d2 1 0.75 tag\n");
  const auto run = read_run(in);
  EXPECT_EQ(run_doc_ids(run).at("7"), (Tokens{"d2", "d1"}));
}

TEST(Trec, RunDepthLimitsOutput) {
  Ranking r;
  r.entries = {{"a", 0.5}, {"b", 0.3}, {"c", 0.2}};
  std::ostringstream out;
  write_run(out, "1", r, "t", 2);
  EXPECT_EQ(out.str(), "1 Q0 a 1 0.5 t\n1 Q0 b 2 0.3 t\n");
}

TEST(Trec, MalformedRunLines) {
  std::istringstream fields("1 Q0 d1 1 0.5\n");
  EXPECT_THROW(read_run(fields), FormatError);
  std::istringstream repeated("1 Q0 d1 1 0.5 t\n1 Q0 d1 2 0.4 t\n");
  EXPECT_THROW(read_run(repeated), FormatError);
}

TEST(Trec, QrelsAndTopics) {
  std::istringstream q("1 0 d1 1\n1 0 d2 0\n2 0 d3 2\n");
  const auto qrels = read_qrels(q);
  EXPECT_EQ(qrels.size(), 3u);
  EXPECT_EQ(qrels.relevant("1"), (std::set<std::string>{"d1"}));
  EXPECT_EQ(qrels.topics(), (Tokens{"1", "2"}));

  std::istringstream dup("1 0 d1 1\n1 0 d1 0\n");
  EXPECT_THROW(read_qrels(dup), FormatError);

  std::istringstream t("301\teiffel tower\n302\tparis museums\n");
  const auto topics = read_topics(t);
  ASSERT_EQ(topics.size(), 2u);
  EXPECT_EQ(topics[1], (Topic{"302", "paris museums"}));
  std::istringstream dup_topics("1\ta\n1\tb\n");
  EXPECT_THROW(read_topics(dup_topics), FormatError);
}

TEST(Trec, ScoreFormatting) {
  EXPECT_EQ(format_score(0.5), "0.5");
  EXPECT_EQ(format_score(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_score(0.0), "0");
}

}  // namespace
}  // namespace hgoe
