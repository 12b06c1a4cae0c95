// coordnet: coordinated-activity detection pipeline over behavioral
// similarity networks. Subcommands cover the full flow: synth -> build
// -> detect / embed -> train -> evaluate -> report.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coordnet/pipeline.hpp"
#include "coordnet/synth.hpp"

namespace {

using coordnet::pipeline::RunConfig;

struct CommonOpts {
  std::string config_path;
  std::string corpus;
  std::string labels;
  std::string outdir;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string preset;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "run configuration JSON file");
  cmd->add_option("--corpus", opts.corpus, "corpus file (.jsonl)");
  cmd->add_option("--labels", opts.labels, "labels file (.csv)");
  cmd->add_option("--out", opts.outdir, "output directory");
  cmd->add_option("--seed", opts.seed, "random seed")->each([&](const std::string&) {
    opts.has_seed = true;
  });
  cmd->add_option("--preset", opts.preset, "parameter preset: prior|optimized")
      ->check(CLI::IsMember({"prior", "optimized"}));
}

RunConfig make_config(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) cfg = RunConfig::from_file(opts.config_path);
  if (!opts.preset.empty())
    cfg.apply_preset(opts.preset == "prior" ? coordnet::pipeline::Preset::prior
                                            : coordnet::pipeline::Preset::optimized);
  if (!opts.corpus.empty()) cfg.corpus_path = opts.corpus;
  if (!opts.labels.empty()) cfg.labels_path = opts.labels;
  if (!opts.outdir.empty()) cfg.outdir = opts.outdir;
  if (opts.has_seed) cfg.seed = opts.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coordinated-activity detection from behavioral similarity networks"};
  app.require_subcommand(1);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate a labeled synthetic scenario");
  std::string scenario_path, synth_out = "out";
  std::uint64_t synth_seed = 1;
  bool synth_has_seed = false;
  synth_cmd->add_option("--scenario", scenario_path, "scenario config JSON file");
  synth_cmd->add_option("--out", synth_out, "output directory");
  synth_cmd->add_option("--seed", synth_seed, "random seed")
      ->each([&](const std::string&) { synth_has_seed = true; });

  // pipeline subcommands
  CommonOpts build_opts, detect_opts, embed_opts, train_opts, eval_opts, report_opts;
  auto* build_cmd = app.add_subcommand("build", "build per-trace and fused networks");
  add_common(build_cmd, build_opts);
  bool dump_events = false;
  build_cmd->add_flag("--dump-events", dump_events, "also write per-trace event dumps");

  auto* detect_cmd = app.add_subcommand("detect", "run an unsupervised detector");
  add_common(detect_cmd, detect_opts);
  std::string method, network;
  double threshold = -1.0, percentile = -1.0, alpha = -1.0;
  detect_cmd->add_option("--method", method, "node-prune|edge-filter|backbone")
      ->check(CLI::IsMember({"node-prune", "edge-filter", "backbone"}));
  detect_cmd->add_option("--network", network, "network kind (default fused)");
  detect_cmd->add_option("--threshold", threshold, "centrality threshold (node-prune)");
  detect_cmd->add_option("--percentile", percentile, "edge weight percentile (edge-filter)");
  detect_cmd->add_option("--alpha", alpha, "significance level (backbone)");

  auto* embed_cmd = app.add_subcommand("embed", "embed a built network");
  add_common(embed_cmd, embed_opts);
  std::string embed_network;
  embed_cmd->add_option("--network", embed_network, "network kind (default fused)");

  auto* train_cmd = app.add_subcommand("train", "train the supervised classifier");
  add_common(train_cmd, train_opts);

  auto* eval_cmd = app.add_subcommand("evaluate", "run evaluation tasks");
  add_common(eval_cmd, eval_opts);
  std::string task = "all";
  eval_cmd->add_option("--task", task, "task1|task2|task3|nmi|coverage|roc|ablation|all")
      ->check(CLI::IsMember({"task1", "task2", "task3", "nmi", "coverage", "roc",
                             "ablation", "all"}));

  auto* report_cmd = app.add_subcommand("report", "aggregate metrics reports");
  add_common(report_cmd, report_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth_cmd->parsed()) {
      coordnet::synth::ScenarioConfig scenario;
      if (!scenario_path.empty()) {
        std::ifstream in(scenario_path);
        if (!in) throw std::runtime_error("cannot open scenario file: " + scenario_path);
        std::stringstream buf;
        buf << in.rdbuf();
        scenario = coordnet::synth::ScenarioConfig::from_json(buf.str());
      } else {
        scenario = coordnet::synth::ScenarioConfig::standard(synth_seed);
      }
      if (synth_has_seed) scenario.seed = synth_seed;
      coordnet::pipeline::run_synth(scenario, synth_out);
      std::printf("scenario written to %s\n", synth_out.c_str());
    } else if (build_cmd->parsed()) {
      RunConfig cfg = make_config(build_opts);
      if (dump_events) cfg.traces.dump_events = true;
      auto kinds = coordnet::pipeline::run_build(cfg);
      std::printf("built %zu networks under %s/networks\n", kinds.size(),
                  cfg.outdir.c_str());
    } else if (detect_cmd->parsed()) {
      RunConfig cfg = make_config(detect_opts);
      if (!method.empty()) cfg.detect.method = method;
      if (!network.empty()) cfg.detect.network = network;
      if (threshold >= 0.0) cfg.detect.centrality_threshold = threshold;
      if (percentile >= 0.0)
        for (auto& [kind, value] : cfg.detect.percentile) value = percentile;
      if (alpha > 0.0) cfg.detect.alpha = alpha;
      coordnet::pipeline::run_detect(cfg);
      std::printf("detection written to %s/detect\n", cfg.outdir.c_str());
    } else if (embed_cmd->parsed()) {
      RunConfig cfg = make_config(embed_opts);
      if (embed_network.empty()) embed_network = "fused";
      coordnet::pipeline::run_embed(cfg, embed_network);
      std::printf("embedding written to %s/embeddings/%s.emb\n", cfg.outdir.c_str(),
                  embed_network.c_str());
    } else if (train_cmd->parsed()) {
      RunConfig cfg = make_config(train_opts);
      coordnet::pipeline::run_train(cfg);
      std::printf("model written to %s/model/forest.json\n", cfg.outdir.c_str());
    } else if (eval_cmd->parsed()) {
      RunConfig cfg = make_config(eval_opts);
      coordnet::pipeline::run_evaluate(cfg, task);
      std::printf("reports written to %s/reports\n", cfg.outdir.c_str());
    } else if (report_cmd->parsed()) {
      RunConfig cfg = make_config(report_opts);
      std::string table = coordnet::pipeline::run_report(cfg);
      std::fputs(table.c_str(), stdout);
      std::printf("summary written to %s/report/summary.json\n", cfg.outdir.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
