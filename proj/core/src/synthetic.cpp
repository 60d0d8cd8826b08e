#include "hgoe/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "hgoe/error.hpp"
#include "hgoe/rng.hpp"
#include "hgoe/trec.hpp"

namespace hgoe {

namespace {

constexpr const char* kSyllables[] = {"ka", "lo", "mi", "ren", "sa", "tu", "vel", "do", "ne", "ri", "pa", "zo",
                                      "ba", "qui", "mor", "te", "li", "ga", "shu", "ven", "ko", "da", "fi", "nor"};
constexpr std::size_t kSyllableCount = std::size(kSyllables);

// Unique pseudo-words drawn from syllables.
class WordSource {
 public:
  explicit WordSource(Rng& rng) : rng_(rng) {}

  // Falls back to longer words once a length keeps colliding.
  std::string next(std::size_t syllables) {
    for (std::size_t attempt = 1;; ++attempt) {
      std::string w;
      for (std::size_t i = 0; i < syllables; ++i) w += kSyllables[rng_.below(kSyllableCount)];
      if (used_.insert(w).second) return w;
      if (attempt % 64 == 0) ++syllables;
    }
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

double gaussian(Rng& rng) {
  // Box-Muller; 1 - uniform() keeps the log argument in (0, 1].
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Zipf(1) sampler over [0, n) by inverse CDF.
class Zipf {
 public:
  explicit Zipf(std::size_t n) : cdf_(n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) cdf_[i] = (total += 1.0 / static_cast<double>(i + 1));
    for (double& c : cdf_) c /= total;
  }

  std::size_t operator()(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

std::string padded_id(const char* prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04zu", prefix, n);
  return buf;
}

}  // namespace

SyntheticCollection generate_collection(const CollectionOptions& o) {
  const std::size_t planted = o.topics * (o.relevant_per_topic + o.distractors_per_topic);
  if (o.documents < planted) throw InputError("not enough documents for the planted topics");
  if (o.min_terms < 2 || o.max_terms < o.min_terms) throw InputError("invalid document length range");

  Rng rng(o.seed);
  WordSource words(rng);

  std::vector<std::string> background;
  for (std::size_t i = 0; i < o.background_vocabulary; ++i) background.push_back(words.next(2));
  std::vector<std::string> generic_entities;
  for (std::size_t i = 0; i < o.generic_entities; ++i) {
    generic_entities.push_back(capitalize(background[rng.below(background.size())]) + " " +
                               capitalize(words.next(3)));
  }
  const Zipf zipf(background.size());

  struct TopicPlan {
    std::vector<std::string> terms;  // the first two form the query
    std::string entity;
  };
  std::vector<TopicPlan> plans;
  SyntheticCollection out;
  for (std::size_t t = 0; t < o.topics; ++t) {
    TopicPlan plan;
    for (int i = 0; i < 3; ++i) plan.terms.push_back(words.next(3));
    plan.entity = capitalize(plan.terms[0]) + " " + capitalize(words.next(3));
    out.topics.push_back({std::to_string(1001 + t), plan.terms[0] + " " + plan.terms[1]});
    plans.push_back(std::move(plan));
  }

  const auto length = [&] { return o.min_terms + rng.below(o.max_terms - o.min_terms + 1); };
  const auto fill_background = [&](std::vector<std::string>& text, std::size_t n) {
    while (text.size() < n) text.push_back(background[zipf(rng)]);
  };
  const auto maybe_generic = [&](std::vector<std::string>& links, std::uint64_t percent) {
    if (rng.below(100) < percent) links.push_back(generic_entities[rng.below(generic_entities.size())]);
  };

  struct Draft {
    CorpusDocument doc;
    std::size_t topic;
    int grade;  // -1 = unjudged
  };
  std::vector<Draft> drafts;
  for (std::size_t t = 0; t < plans.size(); ++t) {
    const auto& plan = plans[t];
    for (std::size_t i = 0; i < o.relevant_per_topic; ++i) {
      std::vector<std::string> text;
      text.push_back(plan.terms[i % 2]);
      if (rng.below(2) == 0) text.push_back(plan.terms[1 - i % 2]);
      if (rng.below(2) == 0) text.push_back(plan.terms[2]);
      fill_background(text, length());
      shuffle(text, rng);
      std::vector<std::string> links;
      if (rng.below(100) < o.topic_link_percent) links.push_back(plan.entity);
      maybe_generic(links, o.generic_link_percent);
      drafts.push_back({{"", join(text), links}, t, 1});
    }
    for (std::size_t i = 0; i < o.distractors_per_topic; ++i) {
      std::vector<std::string> text{plan.terms[1]};
      fill_background(text, length());
      shuffle(text, rng);
      std::vector<std::string> links;
      maybe_generic(links, 50);
      drafts.push_back({{"", join(text), links}, t, 0});
    }
  }
  while (drafts.size() < o.documents) {
    std::vector<std::string> text;
    fill_background(text, length());
    std::vector<std::string> links;
    maybe_generic(links, 50);
    maybe_generic(links, 25);
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    drafts.push_back({{"", join(text), links}, 0, -1});
  }
  shuffle(drafts, rng);

  for (std::size_t i = 0; i < drafts.size(); ++i) {
    auto& d = drafts[i];
    d.doc.doc_id = padded_id("doc-", i + 1);
    if (d.grade >= 0) out.judgments.emplace_back(out.topics[d.topic].topic_id, d.doc.doc_id, d.grade);
    out.documents.push_back(std::move(d.doc));
  }
  std::sort(out.judgments.begin(), out.judgments.end());

  // Synonyms: one unseen synonym per query term, plus background pairs.
  for (const auto& plan : plans) {
    out.lexicon.synsets.push_back({plan.terms[0], words.next(3)});
    out.lexicon.synsets.push_back({plan.terms[1], words.next(3)});
  }
  for (std::size_t i = 0; i + 1 < background.size() && i < 60; i += 2) {
    out.lexicon.synsets.push_back({background[i], background[i + 1]});
  }
  for (auto& synset : out.lexicon.synsets) std::sort(synset.begin(), synset.end());

  // Embeddings: topic terms scatter around a per-topic direction; background
  // words are isotropic noise.
  const std::size_t dim = o.embedding_dimension;
  out.embeddings = EmbeddingTable(dim);
  const auto noise = [&](double scale) {
    std::vector<double> v(dim);
    for (double& x : v) x = scale * gaussian(rng);
    return v;
  };
  for (const auto& plan : plans) {
    const auto center = noise(1.0);
    for (const auto& term : plan.terms) {
      auto v = noise(0.35);
      for (std::size_t k = 0; k < dim; ++k) v[k] += center[k];
      out.embeddings.add(term, std::move(v));
    }
  }
  for (const auto& w : background) out.embeddings.add(w, noise(1.0));
  return out;
}

void write_collection(const SyntheticCollection& c, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  const auto open = [&](const char* name) {
    std::ofstream f(directory / name);
    if (!f) throw InputError("cannot write '" + (directory / name).string() + "'");
    return f;
  };
  {
    auto f = open("corpus.jsonl");
    write_corpus(f, c.documents);
  }
  {
    auto f = open("topics.tsv");
    write_topics(f, c.topics);
  }
  {
    auto f = open("qrels.txt");
    write_qrels(f, c.judgments);
  }
  {
    auto f = open("synonyms.tsv");
    write_lexicon(f, c.lexicon);
  }
  {
    auto f = open("embeddings.txt");
    write_embeddings(f, c.embeddings);
  }
}

DenseCorpus generate_dense_corpus(const DenseOptions& o) {
  if (o.cluster_size < o.max_terms || o.min_terms < 1 || o.max_terms < o.min_terms) {
    throw InputError("invalid dense corpus options");
  }
  Rng rng(o.seed);
  WordSource words(rng);
  std::vector<std::vector<std::string>> clusters(o.clusters);
  for (auto& cluster : clusters) {
    for (std::size_t i = 0; i < o.cluster_size; ++i) cluster.push_back(words.next(3));
  }

  DenseCorpus out;
  std::size_t next_id = 1;
  for (const auto& cluster : clusters) {
    for (std::size_t d = 0; d < o.documents_per_cluster; ++d) {
      auto pool = cluster;
      shuffle(pool, rng);
      pool.resize(o.min_terms + rng.below(o.max_terms - o.min_terms + 1));
      out.documents.push_back({padded_id("d", next_id++), join(pool), {}});
    }
  }
  for (std::size_t q = 0; q < o.queries; ++q) {
    auto pool = clusters[rng.below(clusters.size())];
    shuffle(pool, rng);
    out.queries.push_back({std::to_string(q + 1), pool[0] + " " + pool[1]});
  }
  return out;
}

}  // namespace hgoe
