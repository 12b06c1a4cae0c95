#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coordnet/pipeline.hpp"
#include "coordnet/synth.hpp"

using namespace coordnet;
using pipeline::RunConfig;

namespace {

namespace fs = std::filesystem;

std::string file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& name) {
    path = fs::temp_directory_path() / name;
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
};

synth::ScenarioConfig tiny_scenario(std::uint64_t seed) {
  synth::ScenarioConfig cfg;
  cfg.n_organic = 120;
  cfg.n_drivers = 20;
  cfg.driver_subgroups = {synth::SubgroupConfig{
      20,
      {synth::Tactic::co_retweet_pool, synth::Tactic::co_url_pool,
       synth::Tactic::text_duplication, synth::Tactic::fast_retweet_ring,
       synth::Tactic::hashtag_template},
      0.7}};
  cfg.tweets_per_user = 24;
  cfg.seed = seed;
  return cfg;
}

RunConfig config_for(const ScratchDir& dir) {
  RunConfig cfg;
  cfg.corpus_path = (dir.path / "corpus.jsonl").string();
  cfg.labels_path = (dir.path / "labels.csv").string();
  cfg.outdir = (dir.path / "out").string();
  cfg.seed = 5;
  cfg.embed.dim = 32;
  cfg.embed.epochs = 2;
  cfg.classify.n_trees = 30;
  cfg.classify.folds = 5;
  return cfg;
}

}  // namespace

TEST_CASE("config json round trip keeps fields") {
  RunConfig cfg;
  cfg.corpus_path = "c.jsonl";
  cfg.seed = 99;
  cfg.detect.method = "backbone";
  cfg.detect.alpha = 0.01;
  cfg.embed.dim = 64;
  auto parsed = RunConfig::from_json(cfg.to_json());
  CHECK(parsed.corpus_path == "c.jsonl");
  CHECK(parsed.seed == 99);
  CHECK(parsed.detect.method == "backbone");
  CHECK(parsed.detect.alpha == 0.01);
  CHECK(parsed.embed.dim == 64);
  CHECK(parsed.config_hash() == cfg.config_hash());
}

TEST_CASE("presets pin the two parameter regimes") {
  RunConfig cfg;
  cfg.apply_preset(pipeline::Preset::prior);
  CHECK(cfg.traces.min_hashtags == 5);
  CHECK(cfg.traces.max_delay_seconds == 10);
  CHECK(cfg.detect.percentile.at("co_retweet") == 99.5);

  cfg.apply_preset(pipeline::Preset::optimized);
  CHECK(cfg.traces.min_hashtags == 3);
  CHECK(cfg.traces.max_delay_seconds == 60);
  CHECK(cfg.detect.percentile.at("co_retweet") == 80.0);
  CHECK(cfg.detect.percentile.at("fast_retweet") == 50.0);
  CHECK(cfg.detect.percentile.at("text_sim") == 96.0);
}

TEST_CASE("invalid configs fail with field-level messages") {
  CHECK_THROWS_WITH_AS(RunConfig::from_json("{nope"), doctest::Contains("valid JSON"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(RunConfig::from_json(R"({"preset":"fastest"})"),
                       doctest::Contains("preset"), std::runtime_error);
  RunConfig no_corpus;
  CHECK_THROWS_WITH_AS(pipeline::run_build(no_corpus), doctest::Contains("corpus"),
                       std::runtime_error);
}

TEST_CASE("missing prerequisites name the subcommand to run") {
  ScratchDir dir("coordnet_prereq");
  RunConfig cfg = config_for(dir);
  CHECK_THROWS_WITH_AS(pipeline::run_detect(cfg), doctest::Contains("coordnet build"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(pipeline::run_train(cfg), doctest::Contains("coordnet embed"),
                       std::runtime_error);
}

TEST_CASE("pipeline end to end produces artifacts and is reproducible") {
  ScratchDir dir("coordnet_pipe");
  pipeline::run_synth(tiny_scenario(21), dir.path.string());
  REQUIRE(fs::exists(dir.path / "corpus.jsonl"));
  REQUIRE(fs::exists(dir.path / "labels.csv"));
  REQUIRE(fs::exists(dir.path / "scenario_manifest.json"));

  RunConfig cfg = config_for(dir);
  auto kinds = pipeline::run_build(cfg);
  CHECK(kinds.size() == 6);  // five traces + fused
  for (const auto& kind : kinds) {
    CHECK(fs::exists(fs::path(cfg.outdir) / "networks" / (kind + ".edges")));
    CHECK(fs::exists(fs::path(cfg.outdir) / "networks" / (kind + ".nodes")));
  }

  pipeline::run_detect(cfg);
  CHECK(fs::exists(fs::path(cfg.outdir) / "detect" / "fused_node-prune.csv"));
  CHECK(fs::exists(fs::path(cfg.outdir) / "detect" / "fused_node-prune.manifest.json"));

  pipeline::run_embed(cfg, "fused");
  CHECK(fs::exists(fs::path(cfg.outdir) / "embeddings" / "fused.emb"));

  pipeline::run_train(cfg);
  CHECK(fs::exists(fs::path(cfg.outdir) / "model" / "forest.json"));
  CHECK(fs::exists(fs::path(cfg.outdir) / "reports" / "cv_report.json"));

  pipeline::run_evaluate(cfg, "coverage");
  CHECK(fs::exists(fs::path(cfg.outdir) / "reports" / "coverage.json"));

  auto table = pipeline::run_report(cfg);
  CHECK(fs::exists(fs::path(cfg.outdir) / "report" / "summary.json"));

  // determinism: rerun the full flow into a second directory
  ScratchDir dir2("coordnet_pipe2");
  pipeline::run_synth(tiny_scenario(21), dir2.path.string());
  CHECK(file_bytes(dir.path / "corpus.jsonl") == file_bytes(dir2.path / "corpus.jsonl"));

  RunConfig cfg2 = config_for(dir2);
  pipeline::run_build(cfg2);
  pipeline::run_detect(cfg2);
  pipeline::run_embed(cfg2, "fused");
  pipeline::run_train(cfg2);
  for (const char* rel :
       {"networks/fused.edges", "detect/fused_node-prune.csv", "embeddings/fused.emb",
        "model/forest.json"}) {
    CHECK(file_bytes(fs::path(cfg.outdir) / rel) == file_bytes(fs::path(cfg2.outdir) / rel));
  }
}

TEST_CASE("detector variants write their artifacts") {
  ScratchDir dir("coordnet_detects");
  pipeline::run_synth(tiny_scenario(33), dir.path.string());
  RunConfig cfg = config_for(dir);
  pipeline::run_build(cfg);

  cfg.detect.method = "edge-filter";
  cfg.detect.network = "co_retweet";
  pipeline::run_detect(cfg);
  CHECK(fs::exists(fs::path(cfg.outdir) / "detect" / "co_retweet_edge-filter.csv"));

  cfg.detect.method = "backbone";
  pipeline::run_detect(cfg);
  CHECK(fs::exists(fs::path(cfg.outdir) / "detect" / "co_retweet_backbone.csv"));
}
