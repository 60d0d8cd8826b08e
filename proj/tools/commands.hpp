#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hgoe/eval.hpp"
#include "hgoe/hypergraph.hpp"
#include "hgoe/ranking.hpp"

namespace hgoe::cli {

enum ExitCode : int { kOk = 0, kMetricAnomaly = 1, kInputError = 2 };

enum class Engine { Rws, TfIdf, Bm25 };
std::optional<Engine> parse_engine(std::string_view text);

struct FatigueCell {
  std::uint32_t node_fatigue = 0;
  std::uint32_t edge_fatigue = 0;

  bool operator==(const FatigueCell&) const = default;
};

// Everything a command needs. A JSON config file fills it first; command-line
// flags then override individual fields.
struct ExperimentConfig {
  std::filesystem::path corpus;
  std::optional<Variant> variant;
  std::filesystem::path lexicon;
  std::filesystem::path embeddings;
  std::filesystem::path index;
  std::filesystem::path topics;
  std::filesystem::path qrels;
  std::filesystem::path out;
  std::filesystem::path run;
  RankingParams params;
  Engine engine = Engine::Rws;
  std::size_t k = 10;
  // Run-file depth; 0 keeps every retrieved document.
  std::size_t depth = 1000;
  std::string query;
  std::string topic_id = "1";
  std::vector<FatigueCell> sweep_grid = {{0, 0}, {0, 10}, {10, 0}, {10, 10}};
  // compare
  std::filesystem::path run_a;
  std::filesystem::path run_b;
  std::string system_a;
  std::string system_b;
  std::uint32_t repetitions = 100;
  // synth
  std::uint64_t synth_seed = 42;
  std::size_t synth_documents = 200;
};

// Reads a JSON object whose keys mirror the command-line flags (e.g.
// "node_fatigue", "sweep_grid": [[0, 0], [10, 0]]). Throws ConfigError.
ExperimentConfig load_config(const std::filesystem::path& path);

// Stream seed used for a topic: derive_seed(rng_seed, topicId).
std::uint64_t topic_seed(std::uint64_t rng_seed, const std::string& topic_id);

struct SweepRow {
  Variant variant = Variant::Base;
  FatigueCell cell;
  double map = 0.0;
  double precision_at_10 = 0.0;
  std::uint64_t total_steps = 0;
  std::chrono::nanoseconds total_time{0};
  std::chrono::nanoseconds average_time{0};
};

// Runs every (variant, fatigue cell) over all topics with per-topic seeds that
// do not depend on the cell. `variants` empty = all three.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const std::vector<Variant>& variants);

// Commands write their report to `out` and diagnostics to `err`, returning an
// ExitCode. Timing values only ever appear on lines starting with "timing".
int cmd_index(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_search(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_evaluate(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_synth(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hgoe::cli
