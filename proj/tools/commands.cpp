#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "hgoe/baseline.hpp"
#include "hgoe/corpus.hpp"
#include "hgoe/error.hpp"
#include "hgoe/hypergraph_io.hpp"
#include "hgoe/indexer.hpp"
#include "hgoe/rng.hpp"
#include "hgoe/synthetic.hpp"
#include "hgoe/trec.hpp"
#include "json.hpp"

namespace hgoe::cli {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

std::string millis(std::chrono::nanoseconds ns) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(ns.count()) / 1e6);
  return buf;
}

std::string engine_name(Engine engine) {
  switch (engine) {
    case Engine::Rws:
      return "rws";
    case Engine::TfIdf:
      return "tfidf";
    case Engine::Bm25:
      return "bm25";
  }
  return "?";
}

void require(const std::filesystem::path& path, const char* flag) {
  if (path.empty()) throw ConfigError(std::string("missing required ") + flag);
}

Hypergraph build_graph(const ExperimentConfig& config, Variant variant, std::span<const CorpusDocument> docs) {
  if (variant == Variant::Base) return index_corpus(docs, variant);
  if (config.lexicon.empty()) {
    throw ConfigError("variant '" + std::string(to_string(variant)) + "' needs --lexicon");
  }
  if (config.embeddings.empty()) {
    throw ConfigError("variant '" + std::string(to_string(variant)) + "' needs --embeddings");
  }
  const auto lexicon = load_lexicon(config.lexicon);
  const auto embeddings = load_embeddings(config.embeddings);
  return index_corpus(docs, variant, &lexicon, &embeddings);
}

std::vector<Topic> queries_of(const ExperimentConfig& config) {
  if (!config.query.empty()) return {Topic{config.topic_id, config.query}};
  if (!config.topics.empty()) return load_topics(config.topics);
  throw ConfigError("need --query or --topics");
}

std::string run_tag(Engine engine, const RankingParams& p) {
  if (engine != Engine::Rws) return "hgoe-" + engine_name(engine);
  return "hgoe-rws-l" + std::to_string(p.walk_length) + "-r" + std::to_string(p.repeats) + "-nf" +
         std::to_string(p.node_fatigue) + "-ef" + std::to_string(p.edge_fatigue);
}

std::vector<std::string> truncated_ids(const Ranking& ranking, std::size_t depth) {
  auto ids = doc_ids(ranking);
  if (depth != 0 && ids.size() > depth) ids.resize(depth);
  return ids;
}

// Maps library exceptions to exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const InvariantError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

void write_json(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << j.dump(2) << '\n';
}

// A system for repeated comparisons: "tfidf", "bm25", "rws" or "rws:NF:EF".
struct SystemSpec {
  Engine engine = Engine::Rws;
  RankingParams params;
};

SystemSpec parse_system(const std::string& text, const RankingParams& defaults) {
  SystemSpec spec;
  spec.params = defaults;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.empty()) throw ConfigError("empty system specification");
  const auto engine = parse_engine(parts[0]);
  if (!engine) throw ConfigError("unknown engine in system '" + text + "'");
  spec.engine = *engine;
  if (parts.size() == 3 && spec.engine == Engine::Rws) {
    try {
      spec.params.node_fatigue = static_cast<std::uint32_t>(std::stoul(parts[1]));
      spec.params.edge_fatigue = static_cast<std::uint32_t>(std::stoul(parts[2]));
    } catch (const std::exception&) {
      throw ConfigError("bad fatigue values in system '" + text + "'");
    }
  } else if (parts.size() != 1) {
    throw ConfigError("system must be tfidf, bm25, rws or rws:NODE:EDGE, got '" + text + "'");
  }
  return spec;
}

}  // namespace

std::optional<Engine> parse_engine(std::string_view text) {
  if (text == "rws") return Engine::Rws;
  if (text == "tfidf") return Engine::TfIdf;
  if (text == "bm25") return Engine::Bm25;
  return std::nullopt;
}

std::uint64_t topic_seed(std::uint64_t rng_seed, const std::string& topic_id) { return derive_seed(rng_seed, topic_id); }

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("invalid config JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig c;
  try {
    const auto path_field = [&](const char* key, std::filesystem::path& target) {
      if (j.contains(key)) target = j.at(key).get<std::string>();
    };
    path_field("corpus", c.corpus);
    path_field("lexicon", c.lexicon);
    path_field("embeddings", c.embeddings);
    path_field("index", c.index);
    path_field("topics", c.topics);
    path_field("qrels", c.qrels);
    path_field("out", c.out);
    path_field("run", c.run);
    path_field("run_a", c.run_a);
    path_field("run_b", c.run_b);
    if (j.contains("variant")) {
      const auto v = parse_variant(j.at("variant").get<std::string>());
      if (!v) throw ConfigError("unknown variant in config");
      c.variant = v;
    }
    if (j.contains("engine")) {
      const auto e = parse_engine(j.at("engine").get<std::string>());
      if (!e) throw ConfigError("unknown engine in config");
      c.engine = *e;
    }
    if (j.contains("length")) c.params.walk_length = j.at("length").get<std::uint32_t>();
    if (j.contains("repeats")) c.params.repeats = j.at("repeats").get<std::uint32_t>();
    if (j.contains("node_fatigue")) c.params.node_fatigue = j.at("node_fatigue").get<std::uint32_t>();
    if (j.contains("edge_fatigue")) c.params.edge_fatigue = j.at("edge_fatigue").get<std::uint32_t>();
    if (j.contains("rng_seed")) c.params.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    if (j.contains("k")) c.k = j.at("k").get<std::size_t>();
    if (j.contains("depth")) c.depth = j.at("depth").get<std::size_t>();
    if (j.contains("query")) c.query = j.at("query").get<std::string>();
    if (j.contains("topic_id")) c.topic_id = j.at("topic_id").get<std::string>();
    if (j.contains("system_a")) c.system_a = j.at("system_a").get<std::string>();
    if (j.contains("system_b")) c.system_b = j.at("system_b").get<std::string>();
    if (j.contains("repetitions")) c.repetitions = j.at("repetitions").get<std::uint32_t>();
    if (j.contains("sweep_grid")) {
      c.sweep_grid.clear();
      for (const auto& cell : j.at("sweep_grid")) {
        if (!cell.is_array() || cell.size() != 2) throw ConfigError("sweep_grid entries must be [node, edge] pairs");
        c.sweep_grid.push_back({cell[0].get<std::uint32_t>(), cell[1].get<std::uint32_t>()});
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError("invalid config field: " + std::string(e.what()));
  }
  return c;
}

int cmd_index(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require(config.corpus, "--corpus");
    require(config.out, "--out");
    const Variant variant = config.variant.value_or(Variant::Base);

    const auto start = Clock::now();
    const auto docs = load_corpus(config.corpus);
    const auto graph = build_graph(config, variant, docs);
    const auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    save(graph, config.out);

    out << "variant=" << to_string(variant) << '\n';
    out << "documents=" << graph.document_count() << '\n';
    out << "nodes=" << graph.node_count() << '\n';
    out << "nodes.term=" << graph.count_nodes(NodeKind::Term) << '\n';
    out << "nodes.entity=" << graph.count_nodes(NodeKind::Entity) << '\n';
    out << "edges=" << graph.edge_count() << '\n';
    for (auto kind : {EdgeKind::Document, EdgeKind::ContainedIn, EdgeKind::RelatedTo, EdgeKind::Synonym,
                      EdgeKind::Context}) {
      out << "edges." << to_string(kind) << '=' << graph.count_edges(kind) << '\n';
    }
    const auto per_doc = docs.empty() ? std::chrono::nanoseconds{0} : elapsed / static_cast<long>(docs.size());
    out << "timing total_ms=" << millis(elapsed) << " per_document_ms=" << millis(per_doc) << '\n';
    return kOk;
  });
}

int cmd_search(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::optional<Hypergraph> graph;
    std::optional<InvertedIndex> inverted;
    if (config.engine == Engine::Rws) {
      require(config.index, "--index");
      graph = load(config.index);
    } else {
      require(config.corpus, "--corpus");
      inverted = build_inverted(load_corpus(config.corpus));
    }
    config.params.validate();
    const auto topics = queries_of(config);

    std::ofstream file;
    if (!config.out.empty()) {
      file.open(config.out);
      if (!file) throw InputError("cannot write '" + config.out.string() + "'");
    }
    std::ostream& runs = config.out.empty() ? out : file;

    std::chrono::nanoseconds total{0};
    std::uint64_t steps = 0;
    const std::size_t k = config.depth == 0 ? std::numeric_limits<std::size_t>::max() : config.depth;
    for (const Topic& topic : topics) {
      RankingParams params = config.params;
      params.rng_seed = topic_seed(config.params.rng_seed, topic.topic_id);
      const auto start = Clock::now();
      Ranking ranking;
      switch (config.engine) {
        case Engine::Rws:
          ranking = rws(topic.query, *graph, params);
          break;
        case Engine::TfIdf:
          ranking = search_tfidf(topic.query, *inverted, k);
          break;
        case Engine::Bm25:
          ranking = search_bm25(topic.query, *inverted, k);
          break;
      }
      total += std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
      steps += ranking.total_steps;
      write_run(runs, topic.topic_id, ranking, run_tag(config.engine, config.params), config.depth);
    }
    const auto avg = topics.empty() ? std::chrono::nanoseconds{0} : total / static_cast<long>(topics.size());
    err << "queries=" << topics.size() << " total_steps=" << steps << '\n';
    err << "timing total_ms=" << millis(total) << " avg_query_ms=" << millis(avg) << '\n';
    return kOk;
  });
}

int cmd_evaluate(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require(config.run, "--run");
    require(config.qrels, "--qrels");
    if (config.k == 0) throw ConfigError("--k must be at least 1");
    const auto run = run_doc_ids(load_run(config.run));
    const auto qrels = load_qrels(config.qrels);
    const auto report = evaluate_run(run, qrels, config.k);

    for (const auto& topic : report.unknown_topics) {
      err << "warning: run topic '" << topic << "' has no relevance judgments; skipped\n";
    }
    const std::string pk = "p@" + std::to_string(config.k);
    json topics = json::array();
    for (const auto& t : report.topics) {
      out << "topic=" << t.topic_id << " ap=" << format_score(t.average_precision) << ' ' << pk << '='
          << format_score(t.precision_at_k) << " retrieved=" << t.retrieved << " relevant=" << t.relevant << '\n';
      topics.push_back({{"topic", t.topic_id},
                        {"ap", t.average_precision},
                        {pk, t.precision_at_k},
                        {"retrieved", t.retrieved},
                        {"relevant", t.relevant}});
    }
    for (const auto& topic : report.excluded_topics) out << "excluded_topic=" << topic << '\n';
    out << "topics=" << report.topics.size() << '\n';
    out << "map=" << format_score(report.map) << '\n';
    out << pk << '=' << format_score(report.mean_precision_at_k) << '\n';

    if (!config.out.empty()) {
      write_json(config.out, {{"k", config.k},
                              {"map", report.map},
                              {pk, report.mean_precision_at_k},
                              {"topics", topics},
                              {"excluded_topics", report.excluded_topics},
                              {"unknown_topics", report.unknown_topics}});
    }
    if (report.topics.empty()) {
      err << "error: no topic has relevant documents; MAP is undefined\n";
      return kMetricAnomaly;
    }
    return kOk;
  });
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const std::vector<Variant>& variants) {
  require(config.corpus, "--corpus");
  require(config.topics, "--topics");
  require(config.qrels, "--qrels");
  config.params.validate();
  const auto docs = load_corpus(config.corpus);
  const auto topics = load_topics(config.topics);
  const auto qrels = load_qrels(config.qrels);
  const std::vector<Variant> all = variants.empty()
                                       ? std::vector<Variant>{Variant::Base, Variant::SynsContext, Variant::Weighted}
                                       : variants;

  std::vector<SweepRow> rows;
  for (Variant variant : all) {
    const auto graph = build_graph(config, variant, docs);
    for (const FatigueCell& cell : config.sweep_grid) {
      SweepRow row;
      row.variant = variant;
      row.cell = cell;
      std::map<std::string, std::vector<std::string>> run;
      for (const Topic& topic : topics) {
        RankingParams params = config.params;
        params.node_fatigue = cell.node_fatigue;
        params.edge_fatigue = cell.edge_fatigue;
        params.rng_seed = topic_seed(config.params.rng_seed, topic.topic_id);
        auto timed = run_timed(topic.query, graph, params);
        row.total_time += timed.elapsed;
        row.total_steps += timed.ranking.total_steps;
        run.emplace(topic.topic_id, truncated_ids(timed.ranking, config.depth));
      }
      const auto report = evaluate_run(run, qrels, 10);
      row.map = report.map;
      row.precision_at_10 = report.mean_precision_at_k;
      row.average_time = topics.empty() ? std::chrono::nanoseconds{0} : row.total_time / static_cast<long>(topics.size());
      rows.push_back(row);
    }
  }
  return rows;
}

int cmd_sweep(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<Variant> variants;
    if (config.variant) variants.push_back(*config.variant);
    const auto rows = run_sweep(config, variants);

    json j = json::array();
    std::ostringstream tsv;
    tsv << "variant\tnode_fatigue\tedge_fatigue\tmap\tp@10\tavg_query_ms\ttotal_steps\n";
    for (const auto& r : rows) {
      const std::string key = "variant=" + std::string(to_string(r.variant)) +
                              " node_fatigue=" + std::to_string(r.cell.node_fatigue) +
                              " edge_fatigue=" + std::to_string(r.cell.edge_fatigue);
      out << "row " << key << " map=" << format_score(r.map) << " p@10=" << format_score(r.precision_at_10)
          << " total_steps=" << r.total_steps << '\n';
      out << "timing " << key << " avg_query_ms=" << millis(r.average_time) << " total_ms=" << millis(r.total_time)
          << '\n';
      tsv << to_string(r.variant) << '\t' << r.cell.node_fatigue << '\t' << r.cell.edge_fatigue << '\t'
          << format_score(r.map) << '\t' << format_score(r.precision_at_10) << '\t' << millis(r.average_time) << '\t'
          << r.total_steps << '\n';
      j.push_back({{"variant", to_string(r.variant)},
                   {"node_fatigue", r.cell.node_fatigue},
                   {"edge_fatigue", r.cell.edge_fatigue},
                   {"map", r.map},
                   {"p@10", r.precision_at_10},
                   {"total_steps", r.total_steps},
                   {"avg_query_ns", r.average_time.count()},
                   {"total_ns", r.total_time.count()}});
    }
    if (!config.out.empty()) {
      std::filesystem::create_directories(config.out);
      write_json(config.out / "sweep.json", j);
      std::ofstream f(config.out / "sweep.tsv");
      f << tsv.str();
    }
    return kOk;
  });
}

int cmd_compare(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.repetitions == 0) throw ConfigError("--repetitions must be at least 1");
    std::vector<Topic> topics;
    RetrievalSystem system_a;
    RetrievalSystem system_b;

    if (!config.run_a.empty() || !config.run_b.empty()) {
      require(config.run_a, "--run-a");
      require(config.run_b, "--run-b");
      auto a = std::make_shared<std::map<std::string, std::vector<std::string>>>(run_doc_ids(load_run(config.run_a)));
      auto b = std::make_shared<std::map<std::string, std::vector<std::string>>>(run_doc_ids(load_run(config.run_b)));
      std::set<std::string> wanted;
      if (!config.topics.empty()) {
        for (const auto& t : load_topics(config.topics)) wanted.insert(t.topic_id);
      }
      for (const auto& [topic, docs] : *a) {
        if (!b->contains(topic)) continue;
        if (!wanted.empty() && !wanted.contains(topic)) continue;
        topics.push_back({topic, ""});
      }
      if (topics.empty()) throw InputError("the two runs share no topics");
      const auto lookup = [](std::shared_ptr<std::map<std::string, std::vector<std::string>>> run) {
        return [run](const Topic& t, std::uint32_t) { return run->at(t.topic_id); };
      };
      system_a = lookup(a);
      system_b = lookup(b);
    } else {
      if (config.system_a.empty() || config.system_b.empty()) {
        throw ConfigError("compare needs --run-a/--run-b or --system-a/--system-b");
      }
      require(config.topics, "--topics");
      topics = load_topics(config.topics);
      const auto spec_a = parse_system(config.system_a, config.params);
      const auto spec_b = parse_system(config.system_b, config.params);

      std::shared_ptr<const Hypergraph> graph;
      std::shared_ptr<const InvertedIndex> inverted;
      if (spec_a.engine == Engine::Rws || spec_b.engine == Engine::Rws) {
        require(config.index, "--index");
        graph = std::make_shared<const Hypergraph>(load(config.index));
      }
      if (spec_a.engine != Engine::Rws || spec_b.engine != Engine::Rws) {
        require(config.corpus, "--corpus");
        inverted = std::make_shared<const InvertedIndex>(build_inverted(load_corpus(config.corpus)));
      }
      const std::size_t depth = config.depth;
      const std::uint64_t base_seed = config.params.rng_seed;
      const auto make = [&](const SystemSpec& spec, std::string slot) -> RetrievalSystem {
        const std::size_t k = depth == 0 ? std::numeric_limits<std::size_t>::max() : depth;
        switch (spec.engine) {
          case Engine::TfIdf:
            return [inverted, k](const Topic& t, std::uint32_t) { return doc_ids(search_tfidf(t.query, *inverted, k)); };
          case Engine::Bm25:
            return [inverted, k](const Topic& t, std::uint32_t) { return doc_ids(search_bm25(t.query, *inverted, k)); };
          case Engine::Rws:
            break;
        }
        // Each slot and repetition draws its own stream.
        return [graph, spec, slot, base_seed, depth](const Topic& t, std::uint32_t rep) {
          RankingParams p = spec.params;
          p.rng_seed = derive_seed(derive_seed(base_seed, slot + ":" + t.topic_id), std::uint64_t{rep});
          return truncated_ids(rws(t.query, *graph, p), depth);
        };
      };
      system_a = make(spec_a, "a");
      system_b = make(spec_b, "b");
    }

    const auto report = repeated_comparison(system_a, system_b, topics, config.repetitions);
    json rows = json::array();
    for (const auto& t : report.topics) {
      out << "topic=" << t.topic_id << " rho=" << (t.mean_rho ? format_score(*t.mean_rho) : "undefined")
          << " jaccard=" << format_score(t.mean_jaccard) << '\n';
      rows.push_back({{"topic", t.topic_id},
                      {"rho", t.mean_rho ? json(*t.mean_rho) : json(nullptr)},
                      {"jaccard", t.mean_jaccard}});
    }
    out << "mean rho=" << format_score(report.rho_mean) << " jaccard=" << format_score(report.jaccard_mean) << '\n';
    out << "std rho=" << format_score(report.rho_std) << " jaccard=" << format_score(report.jaccard_std) << '\n';
    out << "repetitions=" << config.repetitions << '\n';
    if (!config.out.empty()) {
      std::filesystem::create_directories(config.out);
      write_json(config.out / "compare.json", {{"repetitions", config.repetitions},
                                               {"topics", rows},
                                               {"rho_mean", report.rho_mean},
                                               {"rho_std", report.rho_std},
                                               {"jaccard_mean", report.jaccard_mean},
                                               {"jaccard_std", report.jaccard_std}});
    }
    if (report.undefined_rho_topics == report.topics.size()) {
      err << "error: Spearman's rho is undefined for every topic\n";
      return kMetricAnomaly;
    }
    return kOk;
  });
}

int cmd_synth(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require(config.out, "--out");
    CollectionOptions options;
    options.documents = config.synth_documents;
    options.seed = config.synth_seed;
    const auto collection = generate_collection(options);
    write_collection(collection, config.out);
    out << "documents=" << collection.documents.size() << '\n';
    out << "topics=" << collection.topics.size() << '\n';
    out << "judgments=" << collection.judgments.size() << '\n';
    out << "directory=" << config.out.string() << '\n';
    return kOk;
  });
}

}  // namespace hgoe::cli
