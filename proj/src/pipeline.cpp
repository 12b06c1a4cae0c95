#include "coordnet/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "coordnet/ablation.hpp"
#include "coordnet/detect.hpp"
#include "coordnet/eval.hpp"
#include "coordnet/ingest.hpp"
#include "coordnet/rng.hpp"
#include "coordnet/simnet.hpp"

namespace coordnet::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string resolve_outdir(const std::string& outdir) {
  fs::path p(outdir);
  if (p.is_relative()) {
    if (const char* root = std::getenv("COORDNET_OUT_ROOT")) p = fs::path(root) / p;
  }
  return p.string();
}

fs::path out_path(const RunConfig& cfg, const std::string& rel) {
  fs::path p = fs::path(resolve_outdir(cfg.outdir)) / rel;
  fs::create_directories(p.parent_path());
  return p;
}

void require_file(const fs::path& p, const std::string& prerequisite) {
  if (!fs::exists(p))
    throw std::runtime_error("missing " + p.string() + "; run `coordnet " +
                             prerequisite + "` first");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

RunConfig RunConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  if (j.contains("preset")) {
    std::string p = j["preset"].get<std::string>();
    if (p == "prior") cfg.preset = Preset::prior;
    else if (p == "optimized") cfg.preset = Preset::optimized;
    else throw std::runtime_error("config field preset: expected prior|optimized, got " + p);
  }
  cfg.apply_preset(cfg.preset);

  cfg.corpus_path = j.value("corpus", "");
  cfg.labels_path = j.value("labels", "");
  cfg.outdir = j.value("outdir", cfg.outdir);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.deterministic = j.value("deterministic", cfg.deterministic);

  if (j.contains("traces")) {
    const json& jt = j["traces"];
    if (jt.contains("enabled")) {
      cfg.traces.enabled.clear();
      for (const json& name : jt["enabled"])
        cfg.traces.enabled.push_back(trace_kind_from_name(name.get<std::string>()));
    }
    cfg.traces.min_hashtags = jt.value("min_hashtags", cfg.traces.min_hashtags);
    cfg.traces.max_delay_seconds = jt.value("max_delay_seconds", cfg.traces.max_delay_seconds);
    if (jt.contains("text")) {
      const json& jx = jt["text"];
      cfg.traces.text_sim_threshold = jx.value("sim_threshold", cfg.traces.text_sim_threshold);
      cfg.traces.text_window_days = jx.value("window_days", cfg.traces.text_window_days);
      cfg.traces.text_hash_dim = jx.value("hash_dim", cfg.traces.text_hash_dim);
      cfg.traces.text_min_words = jx.value("min_words", cfg.traces.text_min_words);
      cfg.traces.text_vectors_file = jx.value("vectors_file", cfg.traces.text_vectors_file);
    }
    cfg.traces.dump_events = jt.value("dump_events", cfg.traces.dump_events);
  }

  if (j.contains("detect")) {
    const json& jd = j["detect"];
    cfg.detect.method = jd.value("method", cfg.detect.method);
    cfg.detect.network = jd.value("network", cfg.detect.network);
    cfg.detect.centrality_threshold =
        jd.value("centrality_threshold", cfg.detect.centrality_threshold);
    cfg.detect.alpha = jd.value("alpha", cfg.detect.alpha);
    cfg.detect.use_weights = jd.value("use_weights", cfg.detect.use_weights);
    if (jd.contains("percentile")) {
      if (jd["percentile"].is_number()) {
        double p = jd["percentile"].get<double>();
        for (auto& [kind, value] : cfg.detect.percentile) value = p;
      } else {
        for (const auto& [kind, value] : jd["percentile"].items())
          cfg.detect.percentile[kind] = value.get<double>();
      }
    }
  }

  if (j.contains("embed")) {
    const json& je = j["embed"];
    cfg.embed.dim = je.value("dim", cfg.embed.dim);
    cfg.embed.walks_per_node = je.value("walks_per_node", cfg.embed.walks_per_node);
    cfg.embed.walk_len = je.value("walk_len", cfg.embed.walk_len);
    cfg.embed.p = je.value("p", cfg.embed.p);
    cfg.embed.q = je.value("q", cfg.embed.q);
    cfg.embed.window = je.value("window", cfg.embed.window);
    cfg.embed.negatives = je.value("negatives", cfg.embed.negatives);
    cfg.embed.epochs = je.value("epochs", cfg.embed.epochs);
    cfg.embed.learning_rate = je.value("learning_rate", cfg.embed.learning_rate);
  }

  if (j.contains("classify")) {
    const json& jc = j["classify"];
    cfg.classify.n_trees = jc.value("n_trees", cfg.classify.n_trees);
    if (jc.contains("max_depth") && !jc["max_depth"].is_null())
      cfg.classify.max_depth = jc["max_depth"].get<int>();
    cfg.classify.folds = jc.value("folds", cfg.classify.folds);
    cfg.classify.flag_threshold = jc.value("flag_threshold", cfg.classify.flag_threshold);
    cfg.classify.include_test_activity =
        jc.value("include_test_activity", cfg.classify.include_test_activity);
  }
  return cfg;
}

void RunConfig::apply_preset(Preset p) {
  preset = p;
  if (p == Preset::prior) {
    traces.min_hashtags = 5;
    traces.max_delay_seconds = 10;
    traces.text_sim_threshold = 0.7;
    detect.percentile = {{"co_retweet", 99.5}, {"co_url", 99.5}, {"hashtag_seq", 99.5},
                         {"fast_retweet", 99.5}, {"text_sim", 0.0}, {"fused", 99.5}};
  } else {
    traces.min_hashtags = 3;
    traces.max_delay_seconds = 60;
    traces.text_sim_threshold = 0.7;
    detect.percentile = {{"co_retweet", 80.0}, {"co_url", 80.0}, {"hashtag_seq", 65.0},
                         {"fast_retweet", 50.0}, {"text_sim", 96.0}, {"fused", 80.0}};
  }
}

std::string RunConfig::to_json() const {
  json j;
  j["corpus"] = corpus_path;
  j["labels"] = labels_path;
  j["outdir"] = outdir;
  j["seed"] = seed;
  j["deterministic"] = deterministic;
  j["preset"] = preset == Preset::prior ? "prior" : "optimized";
  json enabled = json::array();
  for (TraceKind k : traces.enabled) enabled.push_back(trace_kind_name(k));
  j["traces"] = {{"enabled", std::move(enabled)},
                 {"min_hashtags", traces.min_hashtags},
                 {"max_delay_seconds", traces.max_delay_seconds},
                 {"text",
                  {{"sim_threshold", traces.text_sim_threshold},
                   {"window_days", traces.text_window_days},
                   {"hash_dim", traces.text_hash_dim},
                   {"min_words", traces.text_min_words},
                   {"vectors_file", traces.text_vectors_file}}},
                 {"dump_events", traces.dump_events}};
  j["detect"] = {{"method", detect.method},
                 {"network", detect.network},
                 {"centrality_threshold", detect.centrality_threshold},
                 {"percentile", detect.percentile},
                 {"alpha", detect.alpha},
                 {"use_weights", detect.use_weights}};
  j["embed"] = {{"dim", embed.dim},
                {"walks_per_node", embed.walks_per_node},
                {"walk_len", embed.walk_len},
                {"p", embed.p},
                {"q", embed.q},
                {"window", embed.window},
                {"negatives", embed.negatives},
                {"epochs", embed.epochs},
                {"learning_rate", embed.learning_rate}};
  j["classify"] = {{"n_trees", classify.n_trees},
                   {"max_depth", classify.max_depth ? json(*classify.max_depth) : json()},
                   {"folds", classify.folds},
                   {"flag_threshold", classify.flag_threshold},
                   {"include_test_activity", classify.include_test_activity}};
  return j.dump(2);
}

std::string RunConfig::config_hash() const { return to_hex(fnv1a64(to_json())); }

classify::PipelineParams RunConfig::pipeline_params() const {
  classify::PipelineParams p;
  p.trace_params.min_hashtags = traces.min_hashtags;
  p.trace_params.max_delay_seconds = traces.max_delay_seconds;
  p.enabled = traces.enabled;
  p.text_sim_threshold = traces.text_sim_threshold;
  p.text_window_days = traces.text_window_days;
  p.text_hash_dim = traces.text_hash_dim;
  p.text_min_words = traces.text_min_words;
  p.walk.walks_per_node = embed.walks_per_node;
  p.walk.walk_len = embed.walk_len;
  p.walk.p = embed.p;
  p.walk.q = embed.q;
  p.sgns.dim = embed.dim;
  p.sgns.window = embed.window;
  p.sgns.negatives = embed.negatives;
  p.sgns.epochs = embed.epochs;
  p.sgns.learning_rate = embed.learning_rate;
  p.cv.k = classify.folds;
  p.cv.flag_threshold = classify.flag_threshold;
  p.cv.forest.n_trees = classify.n_trees;
  p.cv.forest.max_depth = classify.max_depth;
  p.cv.seed = seed;
  p.include_test_activity = classify.include_test_activity;
  p.seed = seed;
  return p;
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot hash missing file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return to_hex(fnv1a64(buf.str()));
}

void write_manifest(const std::string& out_path_str, const std::string& artifact,
                    const RunConfig& cfg,
                    const std::map<std::string, std::string>& inputs) {
  json j;
  j["artifact"] = artifact;
  j["config_hash"] = cfg.config_hash();
  j["seed"] = cfg.seed;
  j["deterministic"] = cfg.deterministic;
  j["inputs"] = inputs;
  std::ofstream out(out_path_str);
  if (!out) throw std::runtime_error("cannot write manifest: " + out_path_str);
  out << j.dump(2) << '\n';
}

void run_synth(const synth::ScenarioConfig& scenario, const std::string& outdir) {
  fs::path dir(resolve_outdir(outdir));
  fs::create_directories(dir);
  synth::Scenario result = synth::generate_scenario(scenario);
  ingest::write_corpus(result.corpus, (dir / "corpus.jsonl").string());
  ingest::write_labels(result.labels, (dir / "labels.csv").string());

  json manifest;
  manifest["artifact"] = "scenario";
  manifest["config"] = json::parse(scenario.to_json());
  manifest["outputs"] = {{"corpus.jsonl", file_hash((dir / "corpus.jsonl").string())},
                         {"labels.csv", file_hash((dir / "labels.csv").string())}};
  std::ofstream out(dir / "scenario_manifest.json");
  out << manifest.dump(2) << '\n';
}

namespace {

Corpus load_input_corpus(const RunConfig& cfg) {
  if (cfg.corpus_path.empty())
    throw std::runtime_error("config field corpus: a corpus path is required");
  ingest::LoadReport report;
  Corpus corpus = ingest::load_corpus(cfg.corpus_path, &report);
  if (report.skipped > 0)
    std::fprintf(stderr, "warning: skipped %zu malformed corpus lines\n", report.skipped);
  return corpus;
}

LabelMap load_input_labels(const RunConfig& cfg) {
  if (cfg.labels_path.empty())
    throw std::runtime_error("config field labels: a labels path is required");
  return ingest::load_labels(cfg.labels_path);
}

}  // namespace

std::vector<std::string> run_build(const RunConfig& cfg) {
  Corpus corpus = load_input_corpus(cfg);
  auto params = cfg.pipeline_params();

  std::vector<SimilarityNetwork> nets;
  std::vector<std::string> kinds;
  for (TraceKind kind : cfg.traces.enabled) {
    SimilarityNetwork net;
    if (kind == TraceKind::text_sim) {
      auto docs = traces::extract_documents(corpus, cfg.traces.text_min_words);
      if (docs.docs.empty()) {
        net = SimilarityNetwork("text_sim");
        net.finalize();
      } else if (!cfg.traces.text_vectors_file.empty()) {
        simnet::PrecomputedEmbedder embedder(cfg.traces.text_vectors_file);
        auto vectors = simnet::embed_documents(docs, embedder);
        net = simnet::text_similarity_network(docs, vectors, cfg.traces.text_sim_threshold,
                                              cfg.traces.text_window_days);
      } else {
        simnet::HashedTfidfEmbedder embedder(cfg.traces.text_hash_dim);
        auto vectors = simnet::embed_documents(docs, embedder);
        net = simnet::text_similarity_network(docs, vectors, cfg.traces.text_sim_threshold,
                                              cfg.traces.text_window_days);
      }
    } else {
      auto events = traces::extract_events(corpus, kind, params.trace_params);
      if (cfg.traces.dump_events)
        traces::write_events(events, out_path(cfg, std::string("traces/") +
                                                       trace_kind_name(kind) + ".events.csv")
                                          .string());
      net = simnet::build_trace_network(events, kind);
    }
    kinds.push_back(trace_kind_name(kind));
    nets.push_back(std::move(net));
  }

  FusedNetwork fused = detect::fuse(nets);

  std::map<std::string, std::string> outputs;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    auto edges = out_path(cfg, "networks/" + kinds[i] + ".edges");
    auto nodes = out_path(cfg, "networks/" + kinds[i] + ".nodes");
    nets[i].write_edges(edges.string(), nodes.string());
    outputs[kinds[i]] = file_hash(edges.string());
  }
  auto fused_edges = out_path(cfg, "networks/fused.edges");
  fused.net.write_edges(fused_edges.string(), out_path(cfg, "networks/fused.nodes").string());
  outputs["fused"] = file_hash(fused_edges.string());

  write_manifest(out_path(cfg, "networks/manifest.json").string(), "networks", cfg,
                 {{"corpus", file_hash(cfg.corpus_path)}});

  json summary;
  for (std::size_t i = 0; i < nets.size(); ++i)
    summary[kinds[i]] = {{"nodes", nets[i].node_count()}, {"edges", nets[i].edge_count()}};
  summary["fused"] = {{"nodes", fused.net.node_count()}, {"edges", fused.net.edge_count()}};
  std::ofstream sizes(out_path(cfg, "networks/sizes.json"));
  sizes << summary.dump(2) << '\n';

  kinds.push_back("fused");
  return kinds;
}

SimilarityNetwork load_network(const RunConfig& cfg, const std::string& kind) {
  auto edges = out_path(cfg, "networks/" + kind + ".edges");
  auto nodes = out_path(cfg, "networks/" + kind + ".nodes");
  require_file(edges, "build");
  require_file(nodes, "build");
  return SimilarityNetwork::read_edges(edges.string(), nodes.string(), kind);
}

void run_detect(const RunConfig& cfg) {
  SimilarityNetwork net = load_network(cfg, cfg.detect.network);

  detect::DetectionResult result;
  if (cfg.detect.method == "node-prune") {
    result = detect::node_prune(net, cfg.detect.centrality_threshold, cfg.detect.use_weights);
  } else if (cfg.detect.method == "edge-filter") {
    auto it = cfg.detect.percentile.find(cfg.detect.network);
    double pct = it != cfg.detect.percentile.end() ? it->second : 80.0;
    result = detect::edge_filter(net, pct);
  } else if (cfg.detect.method == "backbone") {
    result = detect::backbone_filter(net, cfg.detect.alpha);
  } else {
    throw std::runtime_error("config field detect.method: expected node-prune|edge-filter|"
                             "backbone, got " + cfg.detect.method);
  }
  if (result.warning)
    std::fprintf(stderr, "warning: centrality did not converge within max_iter\n");

  std::string stem = cfg.detect.network + "_" + cfg.detect.method;
  auto csv_path = out_path(cfg, "detect/" + stem + ".csv");
  std::ofstream out(csv_path);
  out << "user_id,score,flagged\n";
  for (const auto& [user, score] : result.score)
    out << user << ',' << format_double(score) << ','
        << (result.flagged.count(user) ? 1 : 0) << '\n';
  out.close();

  std::map<std::string, std::string> inputs = {
      {"network", file_hash(out_path(cfg, "networks/" + cfg.detect.network + ".edges").string())}};
  write_manifest(out_path(cfg, "detect/" + stem + ".manifest.json").string(), stem, cfg,
                 inputs);
}

void run_embed(const RunConfig& cfg, const std::string& network) {
  std::string kind = network.empty() ? cfg.detect.network : network;
  SimilarityNetwork net = load_network(cfg, kind);
  if (net.empty()) throw std::runtime_error("network " + kind + " is empty; nothing to embed");

  embed::WalkParams wp;
  wp.walks_per_node = cfg.embed.walks_per_node;
  wp.walk_len = cfg.embed.walk_len;
  wp.p = cfg.embed.p;
  wp.q = cfg.embed.q;
  wp.seed = mix_seed(cfg.seed, 0x3A1Cull);
  auto walks = embed::generate_walks(net, wp);

  embed::SgnsParams sp;
  sp.dim = cfg.embed.dim;
  sp.window = cfg.embed.window;
  sp.negatives = cfg.embed.negatives;
  sp.epochs = cfg.embed.epochs;
  sp.learning_rate = cfg.embed.learning_rate;
  sp.seed = mix_seed(cfg.seed, 0x3A1Dull);
  auto matrix = embed::train_embeddings(walks, sp);

  auto emb_path = out_path(cfg, "embeddings/" + kind + ".emb");
  matrix.save(emb_path.string());
  write_manifest(out_path(cfg, "embeddings/" + kind + ".manifest.json").string(),
                 "embeddings/" + kind, cfg,
                 {{"network", file_hash(out_path(cfg, "networks/" + kind + ".edges").string())}});
}

void run_train(const RunConfig& cfg) {
  auto emb_path = out_path(cfg, "embeddings/fused.emb");
  require_file(emb_path, "embed");
  LabelMap labels = load_input_labels(cfg);
  auto matrix = embed::EmbeddingMatrix::load(emb_path.string());
  auto features = classify::features_from_embedding(matrix, labels);

  classify::CrossValParams cv;
  cv.k = cfg.classify.folds;
  cv.flag_threshold = cfg.classify.flag_threshold;
  cv.forest.n_trees = cfg.classify.n_trees;
  cv.forest.max_depth = cfg.classify.max_depth;
  cv.seed = cfg.seed;
  auto report = classify::cross_validate(features, cv);
  std::ofstream rep(out_path(cfg, "reports/cv_report.json"));
  rep << report.to_json() << '\n';

  classify::ForestParams fp;
  fp.n_trees = cfg.classify.n_trees;
  fp.max_depth = cfg.classify.max_depth;
  fp.seed = mix_seed(cfg.seed, 0xF0135ull);
  auto model = classify::train_forest(features, fp);
  auto model_path = out_path(cfg, "model/forest.json");
  model.save(model_path.string());
  write_manifest(out_path(cfg, "model/manifest.json").string(), "model", cfg,
                 {{"embedding", file_hash(emb_path.string())},
                  {"labels", file_hash(cfg.labels_path)}});
}

namespace {

json prf_json(const classify::EvalReport& r) {
  json j;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["auc"] = std::isnan(r.auc) ? json() : json(r.auc);
  j["skipped"] = r.skipped;
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

void write_roc(const RunConfig& cfg, const std::string& name,
               const eval::LabeledScores& scores) {
  auto curve = eval::roc_curve(scores);
  std::ofstream out(out_path(cfg, "plotdata/roc_" + name + ".csv"));
  out << "fpr,tpr,threshold\n";
  for (const auto& p : curve)
    out << format_double(p.fpr) << ',' << format_double(p.tpr) << ','
        << format_double(p.threshold) << '\n';
}

}  // namespace

void run_evaluate(const RunConfig& cfg, const std::string& task) {
  bool all = task == "all";
  LabelMap labels = load_input_labels(cfg);
  auto params = cfg.pipeline_params();

  std::vector<std::string> kinds;
  for (TraceKind k : cfg.traces.enabled) kinds.push_back(trace_kind_name(k));

  if (all || task == "task1" || task == "task2") {
    // Task 1: per-trace plus fused CV. Task 2 is the fused run on the
    // (possibly multi-campaign) corpus, same code path.
    std::vector<SimilarityNetwork> nets;
    for (const std::string& kind : kinds) nets.push_back(load_network(cfg, kind));
    json out;
    if (all || task == "task1") {
      for (const auto& net : nets) {
        if (net.empty()) {
          out[net.kind()] = {{"skipped", true}, {"reason", "empty network"}};
          continue;
        }
        auto emb = classify::embed_fused({net}, params);
        auto features = classify::features_from_embedding(emb, labels);
        out[net.kind()] = prf_json(classify::cross_validate(features, params.cv));
      }
    }
    auto emb = classify::embed_fused(nets, params);
    auto features = classify::features_from_embedding(emb, labels);
    auto fused_report = classify::cross_validate(features, params.cv);
    out["fused"] = prf_json(fused_report);
    std::ofstream f(out_path(cfg, all || task == "task1" ? "reports/task1.json"
                                                         : "reports/task2.json"));
    f << out.dump(2) << '\n';
    if (task == "task2" && !all) return;
    if (all) {
      std::ofstream f2(out_path(cfg, "reports/task2.json"));
      json t2;
      t2["fused"] = out["fused"];
      f2 << t2.dump(2) << '\n';
    }
  }

  if (all || task == "task3") {
    Corpus corpus = load_input_corpus(cfg);
    int lo = 9999, hi = 0;
    for (const auto& [user, rec] : labels) {
      lo = std::min(lo, rec.first_active_year);
      hi = std::max(hi, rec.first_active_year);
    }
    json out = json::array();
    std::ofstream curve(out_path(cfg, "plotdata/forecast_by_year.csv"));
    curve << "cutoff_year,precision,recall,f1,auc,n_train,n_test\n";
    for (int cutoff = lo; cutoff < hi; ++cutoff) {
      auto report = classify::temporal_forecast(corpus, labels, cutoff, params);
      json jr = prf_json(report);
      jr["cutoff_year"] = cutoff;
      out.push_back(jr);
      if (!report.skipped) {
        curve << cutoff << ',' << format_double(report.precision) << ','
              << format_double(report.recall) << ',' << format_double(report.f1) << ','
              << format_double(report.auc) << ','
              << static_cast<int>(report.config.at("n_train")) << ','
              << static_cast<int>(report.config.at("n_test")) << '\n';
      } else {
        for (const std::string& w : report.warnings)
          std::fprintf(stderr, "task3 cutoff %d skipped: %s\n", cutoff, w.c_str());
      }
    }
    std::ofstream f(out_path(cfg, "reports/task3.json"));
    f << out.dump(2) << '\n';
  }

  if (all || task == "nmi") {
    // Trace-membership partitions: per trace, users in that trace's
    // network versus everyone else.
    std::vector<std::map<std::string, std::string>> partitions;
    for (const std::string& kind : kinds) {
      SimilarityNetwork net = load_network(cfg, kind);
      std::map<std::string, std::string> part;
      for (const auto& [user, rec] : labels)
        part[user] = net.has_node(user) ? "in" : "out";
      partitions.push_back(std::move(part));
    }
    json out;
    double sum = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      for (std::size_t j = i + 1; j < kinds.size(); ++j) {
        double value = eval::nmi(partitions[i], partitions[j]);
        out["pairs"][kinds[i] + "|" + kinds[j]] = value;
        sum += value;
        ++pairs;
      }
    }
    out["average"] = pairs > 0 ? sum / pairs : 0.0;
    std::ofstream f(out_path(cfg, "reports/nmi.json"));
    f << out.dump(2) << '\n';
  }

  if (all || task == "coverage") {
    json out;
    for (const std::string& kind : kinds)
      out[kind] = eval::coverage(load_network(cfg, kind), labels);
    out["fused"] = eval::coverage(load_network(cfg, "fused"), labels);
    std::ofstream f(out_path(cfg, "reports/coverage.json"));
    f << out.dump(2) << '\n';
  }

  if (all || task == "roc") {
    for (const std::string& kind : kinds) {
      SimilarityNetwork net = load_network(cfg, kind);
      if (net.empty()) continue;
      auto centrality = detect::eigenvector_centrality(net, cfg.detect.use_weights);
      write_roc(cfg, kind + "_node-prune",
                eval::make_labeled_scores(centrality.scores, labels));
    }
    SimilarityNetwork fused = load_network(cfg, "fused");
    if (!fused.empty()) {
      auto centrality = detect::eigenvector_centrality(fused, false);
      write_roc(cfg, "fused_node-prune",
                eval::make_labeled_scores(centrality.scores, labels));
    }
  }

  if (all || task == "ablation") {
    std::vector<SimilarityNetwork> nets;
    for (const std::string& kind : kinds) nets.push_back(load_network(cfg, kind));
    auto entries = eval::ablation(nets, labels, params);
    json out = json::array();
    for (const auto& e : entries) {
      json je = prf_json(e.report);
      je["left_out"] = e.left_out;
      je["delta_auc"] = e.delta_auc;
      je["delta_f1"] = e.delta_f1;
      out.push_back(std::move(je));
    }
    std::ofstream f(out_path(cfg, "reports/ablation.json"));
    f << out.dump(2) << '\n';
  }
}

std::string run_report(const RunConfig& cfg) {
  fs::path reports = fs::path(resolve_outdir(cfg.outdir)) / "reports";
  require_file(reports, "evaluate");

  json summary;
  std::ostringstream table;
  table << "report                            metric summary\n";
  for (const auto& entry : fs::directory_iterator(reports)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) continue;
    std::string name = entry.path().stem().string();
    summary[name] = j;
    auto describe = [&](const json& node) -> std::string {
      if (node.is_object() && node.contains("auc") && node["auc"].is_number()) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "P=%.3f R=%.3f F1=%.3f AUC=%.3f",
                      node.value("precision", 0.0), node.value("recall", 0.0),
                      node.value("f1", 0.0), node["auc"].get<double>());
        return buf;
      }
      return "";
    };
    if (j.is_object()) {
      for (const auto& [key, value] : j.items()) {
        std::string desc = describe(value);
        if (!desc.empty()) {
          char line[160];
          std::snprintf(line, sizeof line, "%-20s %-12s %s\n", name.c_str(), key.c_str(),
                        desc.c_str());
          table << line;
        }
      }
    }
  }
  summary["config_hash"] = cfg.config_hash();
  auto summary_path = out_path(cfg, "report/summary.json");
  std::ofstream out(summary_path);
  out << summary.dump(2) << '\n';
  return table.str();
}

}  // namespace coordnet::pipeline
