#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coordnet/classify.hpp"
#include "coordnet/detect.hpp"
#include "coordnet/eval.hpp"
#include "coordnet/ingest.hpp"
#include "coordnet/simnet.hpp"
#include "coordnet/synth.hpp"
#include "coordnet/traces.hpp"

using namespace coordnet;
using synth::ScenarioConfig;
using synth::SubgroupConfig;
using synth::Tactic;

namespace {

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ScenarioConfig small_scenario(std::uint64_t seed, double intensity) {
  ScenarioConfig cfg;
  cfg.n_organic = 300;
  cfg.n_drivers = 30;
  cfg.driver_subgroups = {
      SubgroupConfig{30,
                     {Tactic::co_retweet_pool, Tactic::co_url_pool,
                      Tactic::text_duplication},
                     intensity}};
  cfg.tweets_per_user = 30;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("generated corpora satisfy the ingest invariants") {
  auto scenario = synth::generate_scenario(small_scenario(1, 0.6));
  CHECK(scenario.corpus.users.size() == 330);
  CHECK(scenario.labels.size() == 330);

  std::set<std::string> tweet_ids;
  for (const auto& rec : scenario.corpus.records) {
    CHECK(tweet_ids.insert(rec.tweet_id).second);  // unique ids
    if (rec.retweet) CHECK(rec.retweet->source_timestamp <= rec.timestamp);
  }

  // round trip: write then reload loses nothing
  auto dir = std::filesystem::temp_directory_path();
  auto corpus_path = (dir / "synth_rt.jsonl").string();
  ingest::write_corpus(scenario.corpus, corpus_path);
  ingest::LoadReport rep;
  Corpus reloaded = ingest::load_corpus(corpus_path, &rep);
  CHECK(rep.skipped == 0);
  CHECK(reloaded.records.size() == scenario.corpus.records.size());
  CHECK(reloaded.users == scenario.corpus.users);

  auto labels_path = (dir / "synth_rt_labels.csv").string();
  ingest::write_labels(scenario.labels, labels_path);
  LabelMap lr = ingest::load_labels(labels_path);
  CHECK(lr.size() == scenario.labels.size());
}

TEST_CASE("first_active_year matches the earliest record") {
  auto scenario = synth::generate_scenario(small_scenario(3, 0.5));
  std::map<std::string, std::int64_t> first_ts;
  for (const auto& rec : scenario.corpus.records) {
    auto it = first_ts.find(rec.author_id);
    if (it == first_ts.end() || rec.timestamp < it->second)
      first_ts[rec.author_id] = rec.timestamp;
  }
  for (const auto& [user, rec] : scenario.labels)
    CHECK(classify::year_of_timestamp(first_ts.at(user)) == rec.first_active_year);
}

TEST_CASE("same seed gives byte-identical corpus files") {
  auto dir = std::filesystem::temp_directory_path();
  auto p1 = (dir / "synth_det1.jsonl").string();
  auto p2 = (dir / "synth_det2.jsonl").string();
  ingest::write_corpus(synth::generate_scenario(small_scenario(7, 0.6)).corpus, p1);
  ingest::write_corpus(synth::generate_scenario(small_scenario(7, 0.6)).corpus, p2);
  CHECK(file_bytes(p1) == file_bytes(p2));

  auto p3 = (dir / "synth_det3.jsonl").string();
  ingest::write_corpus(synth::generate_scenario(small_scenario(8, 0.6)).corpus, p3);
  CHECK(file_bytes(p1) != file_bytes(p3));
}

TEST_CASE("full-intensity co-retweet subgroup forms a near-clique") {
  ScenarioConfig cfg;
  cfg.n_organic = 100;
  cfg.n_drivers = 50;
  cfg.driver_subgroups = {SubgroupConfig{50, {Tactic::co_retweet_pool}, 1.0}};
  cfg.tweets_per_user = 30;
  cfg.seed = 11;
  auto scenario = synth::generate_scenario(cfg);

  auto events = traces::extract_events(scenario.corpus, TraceKind::co_retweet);
  auto net = simnet::build_trace_network(events, TraceKind::co_retweet);

  int edges_in_subgroup = 0;
  for (const auto& e : net.edges()) {
    bool a_drv = net.node_name(e.a).rfind("drv", 0) == 0;
    bool b_drv = net.node_name(e.b).rfind("drv", 0) == 0;
    if (a_drv && b_drv) ++edges_in_subgroup;
  }
  double density = edges_in_subgroup / (50.0 * 49.0 / 2.0);
  CHECK(density > 0.9);
}

TEST_CASE("null scenario: drivers look organic, node-prune AUC near chance") {
  auto scenario = synth::generate_scenario(small_scenario(13, 0.0));
  auto events = traces::extract_events(scenario.corpus, TraceKind::co_retweet);
  auto net = simnet::build_trace_network(events, TraceKind::co_retweet);
  detect::DetectionResult result = detect::node_prune(net, 1e-2);
  auto scores = eval::make_labeled_scores(result.score, scenario.labels);
  double auc = eval::roc_auc(scores);
  CHECK(auc == doctest::Approx(0.5).epsilon(0.25));
}

TEST_CASE("scenario config validation") {
  ScenarioConfig bad = small_scenario(1, 0.5);
  bad.n_drivers = 10;  // subgroups sum to 30
  CHECK_THROWS(synth::generate_scenario(bad));

  ScenarioConfig negative = small_scenario(1, 0.5);
  negative.driver_subgroups[0].intensity = 1.5;
  CHECK_THROWS(synth::generate_scenario(negative));
}

TEST_CASE("scenario config json round trip") {
  auto cfg = ScenarioConfig::standard(42);
  auto parsed = ScenarioConfig::from_json(cfg.to_json());
  CHECK(parsed.n_organic == cfg.n_organic);
  CHECK(parsed.n_drivers == cfg.n_drivers);
  CHECK(parsed.seed == cfg.seed);
  REQUIRE(parsed.driver_subgroups.size() == cfg.driver_subgroups.size());
  for (std::size_t i = 0; i < parsed.driver_subgroups.size(); ++i) {
    CHECK(parsed.driver_subgroups[i].size == cfg.driver_subgroups[i].size);
    CHECK(parsed.driver_subgroups[i].tactics == cfg.driver_subgroups[i].tactics);
  }
}
