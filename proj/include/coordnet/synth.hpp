#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coordnet/types.hpp"

namespace coordnet::synth {

enum class Tactic {
  co_retweet_pool,
  co_url_pool,
  hashtag_template,
  fast_retweet_ring,
  text_duplication,
};

const char* tactic_name(Tactic t);
Tactic tactic_from_name(const std::string& name);

struct SubgroupConfig {
  int size = 0;
  std::vector<Tactic> tactics;
  double intensity = 0.6;  // fraction of events drawn from coordinated pools
};

struct PoolSizes {
  int retweet = 40000;
  int url = 40000;
  int hashtag = 4000;
  int word = 40000;
  int coordinated = 20;  // per subgroup per tactic
  int ring = 5;          // fast-retweet ring targets
};

// Organic users draw entities through per-user anchored windows into
// Zipf-ranked global pools: a user keeps personal favorites (high tf)
// while cross-user co-occurrence stays rare, which reproduces the
// drivers-central / organics-peripheral structure with occasional
// strong organic edges. Driver anchors live in their own band of each
// pool, so residual driver chatter rarely touches organic topics.
struct ScenarioConfig {
  int n_organic = 1000;
  int n_drivers = 100;
  std::vector<SubgroupConfig> driver_subgroups;
  int start_year = 2016;
  int end_year = 2018;
  PoolSizes pools;
  double organic_popularity = 1.5;  // Zipf exponent
  int tweets_per_user = 40;         // mean events per user
  double retweet_fraction = 0.4;
  std::uint64_t seed = 1;

  std::string to_json() const;
  static ScenarioConfig from_json(const std::string& text);

  // Five equal subgroups, each using every tactic. The desk-scale
  // workhorse behind most verification runs.
  static ScenarioConfig standard(std::uint64_t seed);
};

struct Scenario {
  Corpus corpus;
  LabelMap labels;
};

Scenario generate_scenario(const ScenarioConfig& cfg);

}  // namespace coordnet::synth
