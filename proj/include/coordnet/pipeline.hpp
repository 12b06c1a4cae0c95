#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coordnet/classify.hpp"
#include "coordnet/network.hpp"
#include "coordnet/synth.hpp"
#include "coordnet/types.hpp"

namespace coordnet::pipeline {

// Parameter presets. "optimized" is the default regime; "prior"
// restores the thresholds used by earlier coordination studies.
enum class Preset { prior, optimized };

struct TraceConfig {
  std::vector<TraceKind> enabled = {TraceKind::co_retweet, TraceKind::co_url,
                                    TraceKind::hashtag_seq, TraceKind::fast_retweet,
                                    TraceKind::text_sim};
  int min_hashtags = 3;
  std::int64_t max_delay_seconds = 60;
  double text_sim_threshold = 0.7;
  int text_window_days = 365;
  int text_hash_dim = 4096;
  int text_min_words = 4;
  std::string text_vectors_file;  // optional precomputed document vectors
  bool dump_events = false;
};

struct DetectConfig {
  std::string method = "node-prune";  // node-prune | edge-filter | backbone
  std::string network = "fused";
  double centrality_threshold = 1e-2;
  // Edge-filter percentile per trace (optimized regime); "prior" swaps
  // in the conservative 99.5th percentile.
  std::map<std::string, double> percentile = {{"co_retweet", 80.0}, {"co_url", 80.0},
                                              {"hashtag_seq", 65.0}, {"fast_retweet", 50.0},
                                              {"text_sim", 96.0}, {"fused", 80.0}};
  double alpha = 0.05;  // backbone significance
  bool use_weights = false;
};

struct EmbedConfig {
  int dim = 128;
  int walks_per_node = 16;
  int walk_len = 16;
  double p = 1.0;
  double q = 1.0;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;
};

struct ClassifyConfig {
  int n_trees = 100;
  std::optional<int> max_depth;
  int folds = 10;
  double flag_threshold = 0.5;
  bool include_test_activity = true;
};

struct RunConfig {
  std::string corpus_path;
  std::string labels_path;
  std::string outdir = "out";
  std::uint64_t seed = 1;
  bool deterministic = true;
  Preset preset = Preset::optimized;
  TraceConfig traces;
  DetectConfig detect;
  EmbedConfig embed;
  ClassifyConfig classify;

  static RunConfig from_file(const std::string& path);
  static RunConfig from_json(const std::string& text);
  std::string to_json() const;
  std::string config_hash() const;

  void apply_preset(Preset p);
  classify::PipelineParams pipeline_params() const;
};

// -- artifact helpers ----------------------------------------------------

std::string file_hash(const std::string& path);  // fnv-1a of the bytes
void write_manifest(const std::string& out_path, const std::string& artifact,
                    const RunConfig& cfg,
                    const std::map<std::string, std::string>& inputs);

// -- subcommands ----------------------------------------------------------

// Writes corpus.jsonl, labels.csv and scenario_manifest.json.
void run_synth(const synth::ScenarioConfig& scenario, const std::string& outdir);

// Builds every enabled trace network plus the fused network under
// <outdir>/networks. Returns the network kinds written.
std::vector<std::string> run_build(const RunConfig& cfg);

// Runs the configured detector against a built network and writes
// user_id,score,flagged plus a run manifest.
void run_detect(const RunConfig& cfg);

// Embeds a built network (default fused) to <outdir>/embeddings.
void run_embed(const RunConfig& cfg, const std::string& network = "");

// Trains the forest on the fused embedding, saves the model and the
// cross-validation report.
void run_train(const RunConfig& cfg);

// Tasks: "task1", "task2", "task3", "nmi", "coverage", "ablation", "all".
void run_evaluate(const RunConfig& cfg, const std::string& task);

// Aggregates everything under <outdir>/reports into report/summary.json
// and returns a printable table.
std::string run_report(const RunConfig& cfg);

// Loads a previously built network; throws with a message naming the
// prerequisite subcommand when it is missing.
SimilarityNetwork load_network(const RunConfig& cfg, const std::string& kind);

}  // namespace coordnet::pipeline
