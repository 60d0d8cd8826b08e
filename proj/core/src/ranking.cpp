#include "hgoe/ranking.hpp"

#include <algorithm>
#include <set>

#include "hgoe/error.hpp"
#include "hgoe/tokenizer.hpp"

namespace hgoe {

void RankingParams::validate() const {
  if (walk_length == 0) throw InputError("walk length must be at least 1");
  if (repeats == 0) throw InputError("repeats must be at least 1");
}

namespace {

void restart(std::vector<std::uint64_t>& until, std::uint32_t id, std::uint64_t now, std::uint32_t steps) {
  if (steps == 0) return;
  if (id >= until.size()) until.resize(static_cast<std::size_t>(id) + 1, 0);
  until[id] = now + steps;
}

std::uint32_t remaining(const std::vector<std::uint64_t>& until, std::uint32_t id, std::uint64_t now) {
  return id < until.size() && until[id] > now ? static_cast<std::uint32_t>(until[id] - now) : 0;
}

std::map<std::uint32_t, std::uint32_t> active(const std::vector<std::uint64_t>& until, std::uint64_t now) {
  std::map<std::uint32_t, std::uint32_t> out;
  for (std::uint32_t id = 0; id < until.size(); ++id) {
    if (until[id] > now) out.emplace(id, static_cast<std::uint32_t>(until[id] - now));
  }
  return out;
}

}  // namespace

void FatigueTable::fatigue_node(NodeId id, std::uint32_t steps) { restart(node_until_, id, now_, steps); }
void FatigueTable::fatigue_edge(EdgeId id, std::uint32_t steps) { restart(edge_until_, id, now_, steps); }
void FatigueTable::reserve(std::size_t node_bound, std::size_t edge_bound) {
  if (node_until_.size() < node_bound) node_until_.resize(node_bound, 0);
  if (edge_until_.size() < edge_bound) edge_until_.resize(edge_bound, 0);
}

std::uint32_t FatigueTable::node_remaining(NodeId id) const { return remaining(node_until_, id, now_); }
std::uint32_t FatigueTable::edge_remaining(EdgeId id) const { return remaining(edge_until_, id, now_); }
std::map<NodeId, std::uint32_t> FatigueTable::nodes() const { return active(node_until_, now_); }
std::map<EdgeId, std::uint32_t> FatigueTable::edges() const { return active(edge_until_, now_); }

bool FatigueTable::empty() const {
  const auto live = [this](std::uint64_t t) { return t > now_; };
  return std::none_of(node_until_.begin(), node_until_.end(), live) &&
         std::none_of(edge_until_.begin(), edge_until_.end(), live);
}

void sort_entries(std::vector<ScoredDocument>& entries) {
  std::sort(entries.begin(), entries.end(), [](const ScoredDocument& a, const ScoredDocument& b) {
    return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
  });
}

RandomWalker::RandomWalker(const Hypergraph& graph, const RankingParams& params, FatigueTable& fatigue, Rng& rng,
                           std::uint64_t& clock, const StepObserver* observer)
    : graph_(graph),
      params_(params),
      fatigue_(fatigue),
      rng_(rng),
      clock_(clock),
      observer_(observer),
      weighted_(graph.variant() == Variant::Weighted) {
  fatigue_.reserve(graph.node_count(), graph.edge_count());
  if (weighted_) {
    node_weight_.reserve(graph.node_count());
    for (const Node& n : graph.nodes()) node_weight_.push_back(n.weight.value_or(1.0));
  }
}

bool RandomWalker::step(NodeId current, Transition& out) {
  const auto edges = graph_.edges();

  const auto node_block = fatigue_.node_view();
  const auto edge_block = fatigue_.edge_view();
  const auto eligible_target = [&](NodeId t) { return (t != current) & !node_block.blocked_unchecked(t); };

  candidates_.clear();
  double edge_total = 0.0;
  for (const Incidence& inc : graph_.incidence(current)) {
    if (inc.role == Role::Head || edge_block.blocked_unchecked(inc.edge)) continue;
    const Hyperedge& e = edges[inc.edge];
    std::uint32_t count = 0;
    double target_weight = 0.0;
    if (!weighted_) {
      for (NodeId t : e.topology.targets()) count += eligible_target(t);
    } else {
      for (NodeId t : e.topology.targets()) {
        const bool ok = eligible_target(t);
        count += ok;
        target_weight += node_weight_[t] * static_cast<double>(ok);
      }
    }
    if (count == 0) continue;
    candidates_.push_back({inc.edge, count, target_weight});
    if (weighted_) edge_total += e.weight.value_or(1.0);
  }
  if (candidates_.empty()) return false;

  const Candidate* chosen = &candidates_.back();
  if (!weighted_) {
    chosen = &candidates_[rng_.below(candidates_.size())];
  } else {
    const double u = rng_.uniform() * edge_total;
    double running = 0.0;
    for (const Candidate& c : candidates_) {
      running += edges[c.edge].weight.value_or(1.0);
      if (u < running) {
        chosen = &c;
        break;
      }
    }
  }

  const auto targets = edges[chosen->edge].topology.targets();
  NodeId target = 0;
  if (!weighted_) {
    auto k = rng_.below(chosen->targets);
    for (NodeId t : targets) {
      if (!eligible_target(t)) continue;
      target = t;
      if (k-- == 0) break;
    }
  } else {
    const double u = rng_.uniform() * chosen->target_weight;
    double running = 0.0;
    for (NodeId t : targets) {
      if (!eligible_target(t)) continue;
      target = t;
      running += node_weight_[t];
      if (u < running) break;
    }
  }

  fatigue_.tick();
  fatigue_.fatigue_edge(chosen->edge, params_.edge_fatigue);
  fatigue_.fatigue_node(target, params_.node_fatigue);
  if (observer_ != nullptr && *observer_) (*observer_)(StepEvent{clock_, current, chosen->edge, target});
  ++clock_;

  out = Transition{chosen->edge, target};
  return true;
}

SeedSet map_query_to_seeds(std::string_view query, const Hypergraph& graph) {
  SeedSet result;
  result.query = std::string(query);
  std::set<NodeId> all;
  for (const std::string& term : tokenize(query)) {
    if (result.per_term.contains(term)) continue;
    const auto term_node = graph.find_node(NodeKind::Term, term);
    if (!term_node) continue;

    std::set<NodeId> expansion;
    for (const Incidence& inc : graph.incidence(*term_node)) {
      if (inc.role != Role::Tail) continue;
      const Hyperedge& e = graph.edge(inc.edge);
      if (e.kind != EdgeKind::ContainedIn) continue;
      expansion.insert(e.topology.head().begin(), e.topology.head().end());
    }
    if (expansion.empty()) expansion.insert(*term_node);
    all.insert(expansion.begin(), expansion.end());
    result.per_term.emplace(term, std::vector<NodeId>(expansion.begin(), expansion.end()));
  }
  result.seeds.assign(all.begin(), all.end());
  return result;
}

WalkTrace random_walk(const Hypergraph& graph, NodeId start, const RankingParams& params, FatigueTable& fatigue,
                      Rng& rng, std::uint64_t& clock, const StepObserver* observer) {
  params.validate();
  graph.node(start);
  RandomWalker walker(graph, params, fatigue, rng, clock, observer);
  WalkTrace trace;
  trace.steps = walker.walk(start, [&](EdgeId e, NodeId n) {
    trace.edges.push_back(e);
    trace.nodes.push_back(n);
  });
  return trace;
}

Ranking rws(const SeedSet& seeds, const Hypergraph& graph, const RankingParams& params, const StepObserver* observer) {
  params.validate();
  Ranking ranking;
  if (seeds.empty()) return ranking;

  Rng rng(params.rng_seed);
  FatigueTable fatigue;
  std::uint64_t clock = 0;
  RandomWalker walker(graph, params, fatigue, rng, clock, observer);

  std::vector<std::uint64_t> visits(graph.edge_count(), 0);
  const auto count = [&visits](EdgeId e, NodeId) { ++visits[e]; };
  for (std::uint32_t repeat = 0; repeat < params.repeats; ++repeat) {
    for (NodeId seed : seeds.seeds) ranking.total_steps += walker.walk(seed, count);
  }

  std::uint64_t document_visits = 0;
  for (EdgeId e = 0; e < visits.size(); ++e) {
    if (visits[e] == 0) continue;
    ranking.visit_counts.emplace(e, visits[e]);
    if (graph.edge(e).kind == EdgeKind::Document) document_visits += visits[e];
  }
  if (document_visits == 0) return ranking;

  for (const auto& [e, n] : ranking.visit_counts) {
    const Hyperedge& edge = graph.edge(e);
    if (edge.kind != EdgeKind::Document) continue;
    ranking.entries.push_back({*edge.doc_id, static_cast<double>(n) / static_cast<double>(document_visits)});
  }
  sort_entries(ranking.entries);
  return ranking;
}

Ranking rws(std::string_view query, const Hypergraph& graph, const RankingParams& params,
            const StepObserver* observer) {
  return rws(map_query_to_seeds(query, graph), graph, params, observer);
}

TimedRanking run_timed(std::string_view query, const Hypergraph& graph, const RankingParams& params) {
  const auto start = std::chrono::steady_clock::now();
  TimedRanking timed;
  timed.ranking = rws(query, graph, params);
  timed.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  return timed;
}

}  // namespace hgoe
