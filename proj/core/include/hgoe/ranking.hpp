#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hgoe/hypergraph.hpp"
#include "hgoe/rng.hpp"

namespace hgoe {

// Parameters of the random walk score.
struct RankingParams {
  std::uint32_t walk_length = 2;
  std::uint32_t repeats = 1000;
  // Steps during which a just-visited node / just-traversed edge cannot be
  // sampled. Zero disables fatigue.
  std::uint32_t node_fatigue = 0;
  std::uint32_t edge_fatigue = 0;
  std::uint64_t rng_seed = 0;

  // Throws InputError when walk_length or repeats is zero.
  void validate() const;

  bool operator==(const RankingParams&) const = default;
};

struct SeedSet {
  std::string query;
  // Ascending node ids; the union of per_term values.
  std::vector<NodeId> seeds;
  std::map<std::string, std::vector<NodeId>> per_term;

  bool empty() const noexcept { return seeds.empty(); }
};

// Countdowns of fatigued nodes and edges, kept as expiry times on an internal
// tick counter. An element is fatigued while its countdown is positive.
class FatigueTable {
 public:
  bool node_fatigued(NodeId id) const { return id < node_until_.size() && node_until_[id] > now_; }
  bool edge_fatigued(EdgeId id) const { return id < edge_until_.size() && edge_until_[id] > now_; }

  // (Re)starts a countdown. A zero duration is ignored.
  void fatigue_node(NodeId id, std::uint32_t steps);
  void fatigue_edge(EdgeId id, std::uint32_t steps);

  // Pre-sizes the tables so every id below the bounds can be checked without
  // growing them.
  void reserve(std::size_t node_bound, std::size_t edge_bound);

  // One clock tick: every countdown drops by one.
  void tick() noexcept { ++now_; }

  // Remaining ticks (0 when not fatigued).
  std::uint32_t node_remaining(NodeId id) const;
  std::uint32_t edge_remaining(EdgeId id) const;

  // Currently fatigued elements with their remaining ticks.
  std::map<NodeId, std::uint32_t> nodes() const;
  std::map<EdgeId, std::uint32_t> edges() const;
  bool empty() const;

  // Snapshot for hot loops; valid until the next mutation.
  struct View {
    const std::uint64_t* until = nullptr;
    std::size_t size = 0;
    std::uint64_t now = 0;

    bool blocked(std::uint32_t id) const { return id < size && until[id] > now; }
    // Caller guarantees id < size.
    bool blocked_unchecked(std::uint32_t id) const { return until[id] > now; }
  };
  View node_view() const noexcept { return {node_until_.data(), node_until_.size(), now_}; }
  View edge_view() const noexcept { return {edge_until_.data(), edge_until_.size(), now_}; }

 private:
  std::uint64_t now_ = 0;
  std::vector<std::uint64_t> node_until_;
  std::vector<std::uint64_t> edge_until_;
};

struct ScoredDocument {
  std::string doc_id;
  double score = 0.0;

  bool operator==(const ScoredDocument&) const = default;
};

// Documents by descending score, ties by ascending docId.
struct Ranking {
  std::vector<ScoredDocument> entries;
  // Traversals per edge, all edge kinds. Empty for baseline rankings.
  std::map<EdgeId, std::uint64_t> visit_counts;
  std::uint64_t total_steps = 0;

  bool operator==(const Ranking&) const = default;
};

// Sorts entries into ranking order.
void sort_entries(std::vector<ScoredDocument>& entries);

// Emitted once per step taken. `clock` counts the steps taken so far in the
// invocation (the first step has clock 0).
struct StepEvent {
  std::uint64_t clock = 0;
  NodeId from = 0;
  EdgeId edge = 0;
  NodeId target = 0;
};
using StepObserver = std::function<void(const StepEvent&)>;

struct WalkTrace {
  std::vector<EdgeId> edges;
  std::vector<NodeId> nodes;
  std::uint32_t steps = 0;
};

// One step-by-step walker bound to a graph, a fatigue table, an RNG stream and
// a shared step clock. Each step:
//   1. collects the eligible transitions from the current node (edges not
//      fatigued, targets not fatigued and different from the current node;
//      directed edges only tail -> head);
//   2. stops the walk if there are none;
//   3. samples an edge, then a target within it. Unweighted graphs pick both
//      uniformly; the weighted variant picks edges proportionally to edge
//      weight and targets proportionally to node weight (missing weight = 1);
//   4. ticks the fatigue table, then fatigues the traversed edge and the
//      reached node, so each stays blocked for exactly its fatigue duration;
//   5. moves to the target.
//
// Sampling consumes the stream as follows, with candidate edges in ascending
// incidence order and targets in ascending node order:
//   unweighted: edge = below(#edges), target = below(#targets in edge)
//   weighted:   u = uniform() * total_edge_weight, first edge whose running
//               sum exceeds u; then likewise for targets by node weight.
class RandomWalker {
 public:
  RandomWalker(const Hypergraph& graph, const RankingParams& params, FatigueTable& fatigue, Rng& rng,
               std::uint64_t& clock, const StepObserver* observer = nullptr);

  // Walks up to walk_length steps from `start`, calling visit(edge, target)
  // per step. Returns the number of steps taken.
  template <class Visit>
  std::uint32_t walk(NodeId start, Visit&& visit) {
    NodeId current = start;
    std::uint32_t steps = 0;
    for (; steps < params_.walk_length; ++steps) {
      Transition t;
      if (!step(current, t)) break;
      visit(t.edge, t.target);
      current = t.target;
    }
    return steps;
  }

 private:
  struct Candidate {
    EdgeId edge;
    std::uint32_t targets;
    double target_weight;
  };

  bool step(NodeId current, Transition& out);

  const Hypergraph& graph_;
  const RankingParams& params_;
  FatigueTable& fatigue_;
  Rng& rng_;
  std::uint64_t& clock_;
  const StepObserver* observer_;
  bool weighted_;
  // Node weights (missing = 1), filled for the weighted variant only.
  std::vector<double> node_weight_;
  std::vector<Candidate> candidates_;
};

// Query terms (tokenized) -> seed nodes. A term found as a Term node expands to
// every entity its contained_in edges lead to, or to itself when it has none.
// Unknown terms contribute nothing.
SeedSet map_query_to_seeds(std::string_view query, const Hypergraph& graph);

// A single walk with an explicit fatigue table, stream and clock.
WalkTrace random_walk(const Hypergraph& graph, NodeId start, const RankingParams& params, FatigueTable& fatigue,
                      Rng& rng, std::uint64_t& clock, const StepObserver* observer = nullptr);

// Random walk score. One fatigue table and clock are shared by every walk of
// the invocation; walks run repeat-major, then by ascending seed id. Scores
// are Document-edge visit frequencies normalised to sum to one. The RNG
// stream is Rng(params.rng_seed).
Ranking rws(const SeedSet& seeds, const Hypergraph& graph, const RankingParams& params,
            const StepObserver* observer = nullptr);
Ranking rws(std::string_view query, const Hypergraph& graph, const RankingParams& params,
            const StepObserver* observer = nullptr);

struct TimedRanking {
  Ranking ranking;
  std::chrono::nanoseconds elapsed{0};
};

// rws under a monotonic clock (seed mapping included).
TimedRanking run_timed(std::string_view query, const Hypergraph& graph, const RankingParams& params);

}  // namespace hgoe
