#include "hgoe/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "hgoe/error.hpp"

namespace hgoe {

void Qrels::add(const std::string& topic_id, const std::string& doc_id, int grade) {
  if (grade < 0) throw InputError("negative relevance grade for " + topic_id + "/" + doc_id);
  if (!grades_[topic_id].emplace(doc_id, grade).second) {
    throw InputError("duplicate judgment for " + topic_id + "/" + doc_id);
  }
}

std::set<std::string> Qrels::relevant(const std::string& topic_id) const {
  std::set<std::string> out;
  auto it = grades_.find(topic_id);
  if (it == grades_.end()) return out;
  for (const auto& [doc, grade] : it->second) {
    if (grade > 0) out.insert(doc);
  }
  return out;
}

std::vector<std::string> Qrels::topics() const {
  std::vector<std::string> out;
  for (const auto& [topic, docs] : grades_) out.push_back(topic);
  return out;
}

std::size_t Qrels::size() const noexcept {
  std::size_t n = 0;
  for (const auto& [topic, docs] : grades_) n += docs.size();
  return n;
}

std::vector<std::string> doc_ids(std::span<const ScoredDocument> entries) {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.doc_id);
  return out;
}

std::vector<std::string> doc_ids(const Ranking& ranking) { return doc_ids(ranking.entries); }

std::optional<double> average_precision(std::span<const std::string> ranking, const std::set<std::string>& relevant) {
  if (relevant.empty()) return std::nullopt;
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (!relevant.contains(ranking[i])) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(relevant.size());
}

double precision_at_k(std::span<const std::string> ranking, const std::set<std::string>& relevant, std::size_t k) {
  if (k == 0) throw InputError("precision cutoff k must be at least 1");
  const std::size_t depth = std::min(k, ranking.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < depth; ++i) hits += relevant.contains(ranking[i]) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(k);
}

namespace {

void check_unique(std::span<const std::string> ranking) {
  std::set<std::string> seen;
  for (const auto& d : ranking) {
    if (!seen.insert(d).second) throw InputError("document '" + d + "' appears twice in a ranking");
  }
}

std::vector<std::string> complete(std::span<const std::string> ranking, const std::set<std::string>& universe) {
  std::vector<std::string> out(ranking.begin(), ranking.end());
  const std::set<std::string> present(ranking.begin(), ranking.end());
  for (const auto& d : universe) {
    if (!present.contains(d)) out.push_back(d);
  }
  return out;
}

}  // namespace

CompletedPositions complete_and_rank(std::span<const std::string> a, std::span<const std::string> b) {
  check_unique(a);
  check_unique(b);
  std::set<std::string> universe(a.begin(), a.end());
  universe.insert(b.begin(), b.end());

  const auto positions = [&universe](std::span<const std::string> ranking) {
    std::unordered_map<std::string, double> pos;
    const auto full = complete(ranking, universe);
    for (std::size_t i = 0; i < full.size(); ++i) pos.emplace(full[i], static_cast<double>(i + 1));
    std::vector<double> out;
    out.reserve(universe.size());
    for (const auto& d : universe) out.push_back(pos.at(d));
    return out;
  };

  CompletedPositions result;
  result.a = positions(a);
  result.b = positions(b);
  result.universe.assign(universe.begin(), universe.end());
  return result;
}

std::vector<std::vector<std::string>> complete_rankings(const std::vector<std::vector<std::string>>& rankings) {
  std::set<std::string> universe;
  for (const auto& r : rankings) {
    check_unique(r);
    universe.insert(r.begin(), r.end());
  }
  std::vector<std::vector<std::string>> out;
  out.reserve(rankings.size());
  for (const auto& r : rankings) out.push_back(complete(r, universe));
  return out;
}

std::optional<double> spearman_rho(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("position vectors differ in length");
  const std::size_t n = a.size();
  if (n < 2) return std::nullopt;
  double sum_d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    sum_d2 += d * d;
  }
  const auto nd = static_cast<double>(n);
  return 1.0 - 6.0 * sum_d2 / (nd * (nd * nd - 1.0));
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.contains(x) ? 1 : 0;
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double kendalls_w(const std::vector<std::vector<std::string>>& rankings) {
  const std::size_t m = rankings.size();
  if (m < 2) throw InputError("Kendall's W needs at least two rankings");
  const std::size_t n = rankings.front().size();

  std::unordered_map<std::string, std::size_t> item_index;
  for (std::size_t i = 0; i < n; ++i) item_index.emplace(rankings.front()[i], i);
  if (item_index.size() != n) throw InputError("ranking contains a repeated item");

  std::vector<double> rank_sums(n, 0.0);
  for (const auto& ranking : rankings) {
    if (ranking.size() != n) throw InputError("rankings cover different item sets");
    std::vector<bool> seen(n, false);
    for (std::size_t pos = 0; pos < n; ++pos) {
      auto it = item_index.find(ranking[pos]);
      if (it == item_index.end() || seen[it->second]) throw InputError("rankings cover different item sets");
      seen[it->second] = true;
      rank_sums[it->second] += static_cast<double>(pos + 1);
    }
  }
  if (n < 2) return 1.0;

  const auto md = static_cast<double>(m);
  const auto nd = static_cast<double>(n);
  const double mean = md * (nd + 1.0) / 2.0;
  double s = 0.0;
  for (double r : rank_sums) s += (r - mean) * (r - mean);
  return 12.0 * s / (md * md * (nd * nd * nd - nd));
}

namespace {

// Midranks of the pooled sample, doubled so they are integers.
std::vector<std::uint64_t> doubled_midranks(const std::vector<double>& pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
  std::vector<std::uint64_t> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    // Positions i..j (0-based) share the rank ((i+1) + (j+1)) / 2.
    const std::uint64_t doubled = (i + 1) + (j + 1);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = doubled;
    i = j + 1;
  }
  return ranks;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b, Alternative alternative,
                                 MannWhitneyMode mode) {
  if (a.empty() || b.empty()) throw InputError("Mann-Whitney U needs two nonempty samples");
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = doubled_midranks(pooled);
  const std::uint64_t doubled_sum_a = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(na),
                                                      std::uint64_t{0});
  const double offset = static_cast<double>(na * (na + 1)) / 2.0;

  MannWhitneyResult result;
  result.u = static_cast<double>(doubled_sum_a) / 2.0 - offset;
  const double mu = static_cast<double>(na * nb) / 2.0;

  const bool exact = mode == MannWhitneyMode::Exact || (mode == MannWhitneyMode::Auto && n <= kMannWhitneyExactLimit);
  result.exact = exact;
  if (exact) {
    // counts[k][s]: subsets of size k with doubled rank sum s.
    const std::uint64_t max_sum = std::accumulate(ranks.begin(), ranks.end(), std::uint64_t{0});
    std::vector<std::vector<double>> counts(na + 1, std::vector<double>(max_sum + 1, 0.0));
    counts[0][0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = std::min(i + 1, na); k >= 1; --k) {
        for (std::uint64_t s = max_sum; s >= ranks[i]; --s) counts[k][s] += counts[k - 1][s - ranks[i]];
      }
    }
    double total = 0.0;
    double tail = 0.0;
    const double observed = result.u - mu;
    constexpr double eps = 1e-9;
    for (std::uint64_t s = 0; s <= max_sum; ++s) {
      const double c = counts[na][s];
      if (c == 0.0) continue;
      total += c;
      const double deviation = static_cast<double>(s) / 2.0 - offset - mu;
      bool extreme = false;
      switch (alternative) {
        case Alternative::TwoSided:
          extreme = std::abs(deviation) >= std::abs(observed) - eps;
          break;
        case Alternative::Less:
          extreme = deviation <= observed + eps;
          break;
        case Alternative::Greater:
          extreme = deviation >= observed - eps;
          break;
      }
      if (extreme) tail += c;
    }
    result.p_value = std::min(1.0, tail / total);
    return result;
  }

  // Tie correction: sum of t^3 - t over groups of tied values.
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
    const auto t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  const auto nd = static_cast<double>(n);
  const double variance =
      static_cast<double>(na * nb) / 12.0 * ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
  if (!(variance > 0.0)) {
    result.p_value = 1.0;
    return result;
  }
  const double sigma = std::sqrt(variance);
  const double diff = result.u - mu;
  switch (alternative) {
    case Alternative::TwoSided: {
      const double z = std::max(0.0, std::abs(diff) - 0.5) / sigma;
      result.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
      break;
    }
    case Alternative::Less:
      result.p_value = normal_cdf((diff + 0.5) / sigma);
      break;
    case Alternative::Greater:
      result.p_value = 1.0 - normal_cdf((diff - 0.5) / sigma);
      break;
  }
  return result;
}

std::pair<double, double> mean_and_std(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  const auto n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

ComparisonReport repeated_comparison(const RetrievalSystem& system_a, const RetrievalSystem& system_b,
                                     std::span<const Topic> topics, std::uint32_t repetitions) {
  if (repetitions == 0) throw InputError("repetitions must be at least 1");
  ComparisonReport report;
  std::vector<double> rhos;
  std::vector<double> jaccards;
  for (const Topic& topic : topics) {
    TopicComparison tc;
    tc.topic_id = topic.topic_id;
    tc.repetitions = repetitions;
    double rho_sum = 0.0;
    std::uint32_t rho_n = 0;
    double j_sum = 0.0;
    for (std::uint32_t rep = 0; rep < repetitions; ++rep) {
      const auto a = system_a(topic, rep);
      const auto b = system_b(topic, rep);
      const auto completed = complete_and_rank(a, b);
      if (auto rho = spearman_rho(completed.a, completed.b)) {
        rho_sum += *rho;
        ++rho_n;
      }
      j_sum += jaccard(std::set<std::string>(a.begin(), a.end()), std::set<std::string>(b.begin(), b.end()));
    }
    if (rho_n > 0) {
      tc.mean_rho = rho_sum / rho_n;
      rhos.push_back(*tc.mean_rho);
    } else {
      ++report.undefined_rho_topics;
    }
    tc.mean_jaccard = j_sum / repetitions;
    jaccards.push_back(tc.mean_jaccard);
    report.topics.push_back(std::move(tc));
  }
  std::tie(report.rho_mean, report.rho_std) = mean_and_std(rhos);
  std::tie(report.jaccard_mean, report.jaccard_std) = mean_and_std(jaccards);
  return report;
}

EffectivenessReport evaluate_run(const std::map<std::string, std::vector<std::string>>& run, const Qrels& qrels,
                                 std::size_t k) {
  EffectivenessReport report;
  report.k = k;
  for (const auto& [topic, docs] : run) {
    if (!qrels.contains_topic(topic)) report.unknown_topics.push_back(topic);
  }

  const std::vector<std::string> empty;
  double ap_sum = 0.0;
  double p_sum = 0.0;
  for (const auto& topic : qrels.topics()) {
    const auto relevant = qrels.relevant(topic);
    auto it = run.find(topic);
    const auto& ranking = it == run.end() ? empty : it->second;
    const auto ap = average_precision(ranking, relevant);
    if (!ap) {
      report.excluded_topics.push_back(topic);
      continue;
    }
    TopicEffectiveness t;
    t.topic_id = topic;
    t.average_precision = *ap;
    t.precision_at_k = precision_at_k(ranking, relevant, k);
    t.retrieved = ranking.size();
    t.relevant = relevant.size();
    ap_sum += t.average_precision;
    p_sum += t.precision_at_k;
    report.topics.push_back(std::move(t));
  }
  if (!report.topics.empty()) {
    report.map = ap_sum / static_cast<double>(report.topics.size());
    report.mean_precision_at_k = p_sum / static_cast<double>(report.topics.size());
  }
  return report;
}

}  // namespace hgoe
