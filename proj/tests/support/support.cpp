#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hgoe/indexer.hpp"
#include "hgoe/rng.hpp"

namespace hgoe::testing {

Hypergraph star_graph(std::size_t leaves, const std::vector<double>& edge_weights) {
  Hypergraph g(edge_weights.empty() ? Variant::Base : Variant::Weighted);
  const NodeId s = g.upsert_node(NodeKind::Term, "s");
  for (std::size_t i = 1; i <= leaves; ++i) {
    const NodeId d = g.upsert_node(NodeKind::Term, "d" + std::to_string(i));
    const EdgeId e = g.add_edge(EdgeKind::Document, Topology::undirected({s, d}), "doc" + std::to_string(i));
    if (!edge_weights.empty()) g.set_edge_weight(e, edge_weights.at(i - 1));
  }
  return g;
}

namespace {

double weight_or_one(const std::optional<double>& w) { return w ? *w : 1.0; }

struct Option {
  EdgeId edge;
  std::vector<NodeId> targets;
};

// Outgoing options from `node`, by ascending edge id, each with its eligible
// targets in ascending node order.
std::vector<Option> options_from(const Hypergraph& graph, NodeId node) {
  std::vector<Option> out;
  for (const Hyperedge& e : graph.edges()) {
    const auto sources = e.topology.sources();
    if (std::find(sources.begin(), sources.end(), node) == sources.end()) continue;
    Option o{e.id, {}};
    for (NodeId t : e.topology.targets()) {
      if (t != node) o.targets.push_back(t);
    }
    if (!o.targets.empty()) out.push_back(std::move(o));
  }
  return out;
}

}  // namespace

std::map<std::pair<EdgeId, NodeId>, double> one_step_distribution(const Hypergraph& graph, NodeId node) {
  const bool weighted = graph.variant() == Variant::Weighted;
  const auto options = options_from(graph, node);
  double edge_total = 0.0;
  for (const Option& o : options) edge_total += weighted ? weight_or_one(graph.edge(o.edge).weight) : 1.0;

  std::map<std::pair<EdgeId, NodeId>, double> dist;
  for (const Option& o : options) {
    const double pe = (weighted ? weight_or_one(graph.edge(o.edge).weight) : 1.0) / edge_total;
    double target_total = 0.0;
    for (NodeId t : o.targets) target_total += weighted ? weight_or_one(graph.node(t).weight) : 1.0;
    for (NodeId t : o.targets) {
      const double pt = (weighted ? weight_or_one(graph.node(t).weight) : 1.0) / target_total;
      dist[{o.edge, t}] += pe * pt;
    }
  }
  return dist;
}

Ranking reference_rws(const SeedSet& seeds, const Hypergraph& graph, const RankingParams& params) {
  const bool weighted = graph.variant() == Variant::Weighted;
  Rng rng(params.rng_seed);
  std::map<EdgeId, std::uint64_t> visits;
  std::uint64_t steps = 0;

  for (std::uint32_t r = 0; r < params.repeats; ++r) {
    for (NodeId seed : seeds.seeds) {
      NodeId at = seed;
      for (std::uint32_t l = 0; l < params.walk_length; ++l) {
        const auto options = options_from(graph, at);
        if (options.empty()) break;
        const Option* pick = &options.back();
        if (!weighted) {
          pick = &options[rng.below(options.size())];
        } else {
          double total = 0.0;
          for (const Option& o : options) total += weight_or_one(graph.edge(o.edge).weight);
          const double u = rng.uniform() * total;
          double acc = 0.0;
          for (const Option& o : options) {
            acc += weight_or_one(graph.edge(o.edge).weight);
            if (u < acc) {
              pick = &o;
              break;
            }
          }
        }
        NodeId next = pick->targets.back();
        if (!weighted) {
          next = pick->targets[rng.below(pick->targets.size())];
        } else {
          double total = 0.0;
          for (NodeId t : pick->targets) total += weight_or_one(graph.node(t).weight);
          const double u = rng.uniform() * total;
          double acc = 0.0;
          for (NodeId t : pick->targets) {
            acc += weight_or_one(graph.node(t).weight);
            if (u < acc) {
              next = t;
              break;
            }
          }
        }
        ++visits[pick->edge];
        ++steps;
        at = next;
      }
    }
  }

  Ranking out;
  out.visit_counts = visits;
  out.total_steps = steps;
  std::uint64_t doc_total = 0;
  for (const auto& [e, n] : visits) {
    if (graph.edge(e).kind == EdgeKind::Document) doc_total += n;
  }
  for (const auto& [e, n] : visits) {
    const Hyperedge& edge = graph.edge(e);
    if (edge.kind != EdgeKind::Document) continue;
    out.entries.push_back({*edge.doc_id, static_cast<double>(n) / static_cast<double>(doc_total)});
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const ScoredDocument& a, const ScoredDocument& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
  return out;
}

std::vector<CorpusDocument> random_corpus(std::uint64_t seed, std::size_t documents) {
  static const char* const kWords[] = {"alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta",
                                       "iota", "kappa", "lambda", "mu"};
  static const char* const kEntities[] = {"Alpha Centauri", "Beta Ray", "Gamma Knife", "Mu Delta", "Iota"};
  Rng rng(seed);
  std::vector<CorpusDocument> docs;
  for (std::size_t i = 0; i < documents; ++i) {
    CorpusDocument d;
    d.doc_id = "r" + std::to_string(i);
    const auto n = 1 + rng.below(5);
    for (std::uint64_t k = 0; k < n; ++k) {
      if (k) d.text += ' ';
      d.text += kWords[rng.below(std::size(kWords))];
    }
    const auto links = rng.below(3);
    for (std::uint64_t k = 0; k < links; ++k) {
      std::string name = kEntities[rng.below(std::size(kEntities))];
      if (std::find(d.links.begin(), d.links.end(), name) == d.links.end()) d.links.push_back(name);
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

RandomInstance random_instance(std::uint64_t seed, bool weighted) {
  const auto docs = random_corpus(seed, 3 + Rng(seed ^ 0x5eed).below(10));
  RandomInstance inst{index_corpus(docs, Variant::Base), {}};
  if (weighted) {
    inst.graph.set_variant(Variant::Weighted);
    compute_weights(inst.graph);
  }
  Rng rng(seed + 1);
  std::vector<std::string> vocab;
  for (const Node& n : inst.graph.nodes()) {
    if (n.kind == NodeKind::Term) vocab.push_back(n.label);
  }
  const auto terms = 1 + rng.below(3);
  for (std::uint64_t k = 0; k < terms; ++k) {
    if (k) inst.query += ' ';
    inst.query += vocab[rng.below(vocab.size())];
  }
  return inst;
}

TempDir::TempDir(const std::string& tag) {
  static std::uint64_t counter = 0;
  const auto base = std::filesystem::temp_directory_path();
  for (;;) {
    path_ = base / ("hgoe-" + tag + "-" + std::to_string(splitmix64(reinterpret_cast<std::uintptr_t>(this) + ++counter)));
    if (std::filesystem::create_directories(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace hgoe::testing
