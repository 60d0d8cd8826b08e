#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "hgoe/error.hpp"

namespace {

using hgoe::cli::ExperimentConfig;

// Flag values parsed before the config file is known; applied on top of it.
struct Flags {
  std::string config;
  std::string corpus, lexicon, embeddings, index, topics, qrels, out, run, run_a, run_b;
  std::string variant, engine, query, topic_id, system_a, system_b;
  std::uint32_t length = 0, repeats = 0, node_fatigue = 0, edge_fatigue = 0, repetitions = 0;
  std::uint64_t rng_seed = 0, synth_seed = 0;
  std::size_t k = 0, depth = 0, synth_documents = 0;
};

void add_common(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "JSON experiment config; flags override its fields");
  app.add_option("--corpus", f.corpus, "JSONL corpus");
  app.add_option("--variant", f.variant, "base | syns-context | weighted");
  app.add_option("--lexicon", f.lexicon, "synonym lexicon (TSV)");
  app.add_option("--embeddings", f.embeddings, "word2vec text embeddings");
  app.add_option("--index", f.index, "binary index file");
  app.add_option("--length", f.length, "walk length");
  app.add_option("--repeats", f.repeats, "walks per seed node");
  app.add_option("--node-fatigue", f.node_fatigue, "node fatigue cycles");
  app.add_option("--edge-fatigue", f.edge_fatigue, "hyperedge fatigue cycles");
  app.add_option("--rng-seed", f.rng_seed, "base random seed");
  app.add_option("--engine", f.engine, "rws | tfidf | bm25");
  app.add_option("--topics", f.topics, "topics file (topicId<TAB>query)");
  app.add_option("--qrels", f.qrels, "relevance judgments");
  app.add_option("--k", f.k, "precision cutoff");
  app.add_option("--out", f.out, "output file or directory");
  app.add_option("--query", f.query, "single query text");
  app.add_option("--topic-id", f.topic_id, "topic id used with --query");
  app.add_option("--depth", f.depth, "run depth (0 = everything)");
  app.add_option("--run", f.run, "TREC run file");
  app.add_option("--run-a", f.run_a, "first run file");
  app.add_option("--run-b", f.run_b, "second run file");
  app.add_option("--system-a", f.system_a, "first system: tfidf | bm25 | rws | rws:NF:EF");
  app.add_option("--system-b", f.system_b, "second system");
  app.add_option("--repetitions", f.repetitions, "paired repetitions per topic");
  app.add_option("--synth-seed", f.synth_seed, "generator seed for synth");
  app.add_option("--synth-documents", f.synth_documents, "corpus size for synth");
}

bool given(const CLI::App& app, const char* name) { return app.count(name) > 0; }

ExperimentConfig resolve(const CLI::App& app, const Flags& f) {
  ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : hgoe::cli::load_config(f.config);
  if (given(app, "--corpus")) c.corpus = f.corpus;
  if (given(app, "--lexicon")) c.lexicon = f.lexicon;
  if (given(app, "--embeddings")) c.embeddings = f.embeddings;
  if (given(app, "--index")) c.index = f.index;
  if (given(app, "--topics")) c.topics = f.topics;
  if (given(app, "--qrels")) c.qrels = f.qrels;
  if (given(app, "--out")) c.out = f.out;
  if (given(app, "--run")) c.run = f.run;
  if (given(app, "--run-a")) c.run_a = f.run_a;
  if (given(app, "--run-b")) c.run_b = f.run_b;
  if (given(app, "--variant")) {
    c.variant = hgoe::parse_variant(f.variant);
    if (!c.variant) throw hgoe::ConfigError("unknown variant '" + f.variant + "'");
  }
  if (given(app, "--engine")) {
    const auto engine = hgoe::cli::parse_engine(f.engine);
    if (!engine) throw hgoe::ConfigError("unknown engine '" + f.engine + "'");
    c.engine = *engine;
  }
  if (given(app, "--length")) c.params.walk_length = f.length;
  if (given(app, "--repeats")) c.params.repeats = f.repeats;
  if (given(app, "--node-fatigue")) c.params.node_fatigue = f.node_fatigue;
  if (given(app, "--edge-fatigue")) c.params.edge_fatigue = f.edge_fatigue;
  if (given(app, "--rng-seed")) c.params.rng_seed = f.rng_seed;
  if (given(app, "--k")) c.k = f.k;
  if (given(app, "--depth")) c.depth = f.depth;
  if (given(app, "--query")) c.query = f.query;
  if (given(app, "--topic-id")) c.topic_id = f.topic_id;
  if (given(app, "--system-a")) c.system_a = f.system_a;
  if (given(app, "--system-b")) c.system_b = f.system_b;
  if (given(app, "--repetitions")) c.repetitions = f.repetitions;
  if (given(app, "--synth-seed")) c.synth_seed = f.synth_seed;
  if (given(app, "--synth-documents")) c.synth_documents = f.synth_documents;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypergraph-of-entity retrieval with fatigued random walks"};
  app.require_subcommand(1);

  using Command = int (*)(const ExperimentConfig&, std::ostream&, std::ostream&);
  const std::pair<const char*, Command> commands[] = {
      {"index", hgoe::cli::cmd_index},       {"search", hgoe::cli::cmd_search},
      {"evaluate", hgoe::cli::cmd_evaluate}, {"sweep", hgoe::cli::cmd_sweep},
      {"compare", hgoe::cli::cmd_compare},   {"synth", hgoe::cli::cmd_synth},
  };
  const char* descriptions[] = {
      "build an index file from a corpus",
      "rank documents for a query or a topics file (TREC run output)",
      "MAP and P@k of a run against qrels",
      "fatigue grid over the index variants",
      "per-topic Spearman rho and Jaccard between two systems",
      "write a synthetic test collection",
  };

  Flags flags;
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    add_common(*sub, flags);
    subs.emplace_back(sub, commands[i].second);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hgoe::cli::kInputError;
  }

  for (const auto& [sub, command] : subs) {
    if (!sub->parsed()) continue;
    try {
      const auto config = resolve(*sub, flags);
      return command(config, std::cout, std::cerr);
    } catch (const hgoe::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return hgoe::cli::kInputError;
    }
  }
  return hgoe::cli::kInputError;
}
