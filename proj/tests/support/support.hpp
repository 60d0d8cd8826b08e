#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hgoe/corpus.hpp"
#include "hgoe/hypergraph.hpp"
#include "hgoe/ranking.hpp"

namespace hgoe::testing {

// Seed term "s" joined to leaf terms "d1".."dn" by one Document edge each
// (docIds "doc1".."docn"). With `edge_weights`, the graph is the weighted
// variant and edge i gets edge_weights[i].
Hypergraph star_graph(std::size_t leaves, const std::vector<double>& edge_weights = {});

// Exact probability of each (edge, target) transition from `node` under the
// documented two-stage sampling with no fatigue, enumerated from the edge list.
std::map<std::pair<EdgeId, NodeId>, double> one_step_distribution(const Hypergraph& graph, NodeId node);

// Fatigue-free walker written straight from the documented sampling contract;
// consumes `Rng(params.rng_seed)` exactly like the production walker is
// specified to.
Ranking reference_rws(const SeedSet& seeds, const Hypergraph& graph, const RankingParams& params);

// Small random corpus over a tiny vocabulary so documents overlap.
std::vector<CorpusDocument> random_corpus(std::uint64_t seed, std::size_t documents);

// Random base or weighted graph built from random_corpus, plus a random query
// over its vocabulary.
struct RandomInstance {
  Hypergraph graph;
  std::string query;
};
RandomInstance random_instance(std::uint64_t seed, bool weighted);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace hgoe::testing
