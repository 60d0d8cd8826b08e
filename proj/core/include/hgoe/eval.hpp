#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hgoe/ranking.hpp"

namespace hgoe {

struct Topic {
  std::string topic_id;
  std::string query;

  bool operator==(const Topic&) const = default;
};

// Relevance grades per (topic, doc). Grade > 0 means relevant.
class Qrels {
 public:
  // Throws InputError on a duplicate (topic, doc) pair or a negative grade.
  void add(const std::string& topic_id, const std::string& doc_id, int grade);

  std::set<std::string> relevant(const std::string& topic_id) const;
  std::vector<std::string> topics() const;
  bool contains_topic(const std::string& topic_id) const { return grades_.contains(topic_id); }
  std::size_t size() const noexcept;

 private:
  std::map<std::string, std::map<std::string, int>> grades_;
};

// Ordered docIds of a ranking.
std::vector<std::string> doc_ids(const Ranking& ranking);
std::vector<std::string> doc_ids(std::span<const ScoredDocument> entries);

// nullopt when `relevant` is empty.
std::optional<double> average_precision(std::span<const std::string> ranking, const std::set<std::string>& relevant);

// |relevant in top k| / k. Throws InputError when k == 0.
double precision_at_k(std::span<const std::string> ranking, const std::set<std::string>& relevant, std::size_t k);

// Position vectors of two rankings over the union of their documents, aligned
// with `universe` (ascending docId). A ranking keeps its own positions
// (1-based) and receives the documents it missed right after its last one,
// in lexicographic order.
struct CompletedPositions {
  std::vector<std::string> universe;
  std::vector<double> a;
  std::vector<double> b;
};
CompletedPositions complete_and_rank(std::span<const std::string> a, std::span<const std::string> b);

// The same completion over m rankings: each returned ordering covers the
// union of all documents.
std::vector<std::vector<std::string>> complete_rankings(const std::vector<std::vector<std::string>>& rankings);

// 1 - 6 sum d^2 / (n (n^2 - 1)) over tie-free position vectors. nullopt when
// n < 2. Throws InputError when the lengths differ.
std::optional<double> spearman_rho(std::span<const double> a, std::span<const double> b);

// |A n B| / |A u B|; 1 when both are empty.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// Kendall's coefficient of concordance over m >= 2 orderings of the same
// items. Throws InputError when m < 2 or the item sets differ. A single item
// is trivially concordant (W = 1).
double kendalls_w(const std::vector<std::vector<std::string>>& rankings);

enum class Alternative { TwoSided, Less, Greater };
enum class MannWhitneyMode { Auto, Exact, Normal };

// Largest pooled sample for which Auto picks exact enumeration.
inline constexpr std::size_t kMannWhitneyExactLimit = 12;

struct MannWhitneyResult {
  // U of the first sample: rank sum of A minus |A|(|A|+1)/2, midranks for ties.
  double u = 0.0;
  double p_value = 1.0;
  bool exact = false;
};

// Exact mode enumerates every split of the pooled ranks; normal mode applies
// the tie-corrected variance and a 0.5 continuity correction. Less means A
// tends to be smaller than B. Throws InputError on an empty sample.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                                 Alternative alternative = Alternative::TwoSided,
                                 MannWhitneyMode mode = MannWhitneyMode::Auto);

struct TopicComparison {
  std::string topic_id;
  // Mean over the repetitions where rho was defined.
  std::optional<double> mean_rho;
  double mean_jaccard = 0.0;
  std::uint32_t repetitions = 0;
};

struct ComparisonReport {
  std::vector<TopicComparison> topics;
  // Mean and sample standard deviation of the per-topic averages.
  double rho_mean = 0.0;
  double rho_std = 0.0;
  double jaccard_mean = 0.0;
  double jaccard_std = 0.0;
  std::size_t undefined_rho_topics = 0;
};

// Ordered docIds a system returns for a topic on a given repetition.
using RetrievalSystem = std::function<std::vector<std::string>(const Topic&, std::uint32_t repetition)>;

// Per topic, averages rho (after completion) and the Jaccard index of the
// retrieved sets over `repetitions` paired runs of both systems.
ComparisonReport repeated_comparison(const RetrievalSystem& system_a, const RetrievalSystem& system_b,
                                     std::span<const Topic> topics, std::uint32_t repetitions);

// mean and sample standard deviation (0 for fewer than two values).
std::pair<double, double> mean_and_std(std::span<const double> values);

struct TopicEffectiveness {
  std::string topic_id;
  double average_precision = 0.0;
  double precision_at_k = 0.0;
  std::size_t retrieved = 0;
  std::size_t relevant = 0;
};

struct EffectivenessReport {
  std::size_t k = 10;
  std::vector<TopicEffectiveness> topics;
  double map = 0.0;
  double mean_precision_at_k = 0.0;
  // Qrels topics without relevant documents (left out of the means).
  std::vector<std::string> excluded_topics;
  // Run topics with no qrels entry (skipped).
  std::vector<std::string> unknown_topics;
};

// Evaluates every qrels topic; topics missing from the run score zero.
EffectivenessReport evaluate_run(const std::map<std::string, std::vector<std::string>>& run, const Qrels& qrels,
                                 std::size_t k = 10);

}  // namespace hgoe
