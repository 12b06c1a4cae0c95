#include "coordnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "coordnet/classify.hpp"
#include "coordnet/rng.hpp"

namespace coordnet::synth {

using nlohmann::json;

const char* tactic_name(Tactic t) {
  switch (t) {
    case Tactic::co_retweet_pool: return "co_retweet_pool";
    case Tactic::co_url_pool: return "co_url_pool";
    case Tactic::hashtag_template: return "hashtag_template";
    case Tactic::fast_retweet_ring: return "fast_retweet_ring";
    case Tactic::text_duplication: return "text_duplication";
  }
  return "unknown";
}

Tactic tactic_from_name(const std::string& name) {
  if (name == "co_retweet_pool") return Tactic::co_retweet_pool;
  if (name == "co_url_pool") return Tactic::co_url_pool;
  if (name == "hashtag_template") return Tactic::hashtag_template;
  if (name == "fast_retweet_ring") return Tactic::fast_retweet_ring;
  if (name == "text_duplication") return Tactic::text_duplication;
  throw std::invalid_argument("unknown tactic: " + name);
}

std::string ScenarioConfig::to_json() const {
  json j;
  j["n_organic"] = n_organic;
  j["n_drivers"] = n_drivers;
  json groups = json::array();
  for (const SubgroupConfig& g : driver_subgroups) {
    json jg;
    jg["size"] = g.size;
    jg["intensity"] = g.intensity;
    json tactics = json::array();
    for (Tactic t : g.tactics) tactics.push_back(tactic_name(t));
    jg["tactics"] = std::move(tactics);
    groups.push_back(std::move(jg));
  }
  j["driver_subgroups"] = std::move(groups);
  j["start_year"] = start_year;
  j["end_year"] = end_year;
  j["pools"] = {{"retweet", pools.retweet}, {"url", pools.url},
                {"hashtag", pools.hashtag}, {"word", pools.word},
                {"coordinated", pools.coordinated}, {"ring", pools.ring}};
  j["organic_popularity"] = organic_popularity;
  j["tweets_per_user"] = tweets_per_user;
  j["retweet_fraction"] = retweet_fraction;
  j["seed"] = seed;
  return j.dump(2);
}

ScenarioConfig ScenarioConfig::from_json(const std::string& text) {
  json j = json::parse(text);
  ScenarioConfig cfg;
  cfg.n_organic = j.value("n_organic", cfg.n_organic);
  cfg.n_drivers = j.value("n_drivers", cfg.n_drivers);
  if (j.contains("driver_subgroups")) {
    for (const json& jg : j["driver_subgroups"]) {
      SubgroupConfig g;
      g.size = jg.at("size").get<int>();
      g.intensity = jg.value("intensity", 0.6);
      for (const json& jt : jg.at("tactics")) g.tactics.push_back(tactic_from_name(jt));
      cfg.driver_subgroups.push_back(std::move(g));
    }
  }
  cfg.start_year = j.value("start_year", cfg.start_year);
  cfg.end_year = j.value("end_year", cfg.end_year);
  if (j.contains("pools")) {
    const json& jp = j["pools"];
    cfg.pools.retweet = jp.value("retweet", cfg.pools.retweet);
    cfg.pools.url = jp.value("url", cfg.pools.url);
    cfg.pools.hashtag = jp.value("hashtag", cfg.pools.hashtag);
    cfg.pools.word = jp.value("word", cfg.pools.word);
    cfg.pools.coordinated = jp.value("coordinated", cfg.pools.coordinated);
    cfg.pools.ring = jp.value("ring", cfg.pools.ring);
  }
  cfg.organic_popularity = j.value("organic_popularity", cfg.organic_popularity);
  cfg.tweets_per_user = j.value("tweets_per_user", cfg.tweets_per_user);
  cfg.retweet_fraction = j.value("retweet_fraction", cfg.retweet_fraction);
  cfg.seed = j.value("seed", cfg.seed);
  return cfg;
}

ScenarioConfig ScenarioConfig::standard(std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.seed = seed;
  std::vector<Tactic> all = {Tactic::co_retweet_pool, Tactic::co_url_pool,
                             Tactic::hashtag_template, Tactic::fast_retweet_ring,
                             Tactic::text_duplication};
  for (int g = 0; g < 5; ++g)
    cfg.driver_subgroups.push_back(SubgroupConfig{20, all, 0.6});
  return cfg;
}

namespace {

struct PoolView {
  int size = 0;
};

class Generator {
 public:
  explicit Generator(const ScenarioConfig& cfg)
      : cfg_(cfg),
        zipf_retweet_(cfg.pools.retweet, cfg.organic_popularity),
        zipf_url_(cfg.pools.url, cfg.organic_popularity),
        zipf_hashtag_(cfg.pools.hashtag, cfg.organic_popularity),
        zipf_word_(cfg.pools.word, cfg.organic_popularity) {
    retweet_view_ = PoolView{cfg.pools.retweet};
    url_view_ = PoolView{cfg.pools.url};
    hashtag_view_ = PoolView{cfg.pools.hashtag};
    word_view_ = PoolView{cfg.pools.word};
    range_start_ = classify::year_start_timestamp(cfg.start_year);
    range_end_ = classify::year_start_timestamp(cfg.end_year + 1) - 1;
  }

  Scenario run() {
    Scenario scenario;
    int uidx = 0;
    for (int i = 0; i < cfg_.n_organic; ++i, ++uidx)
      emit_user(scenario, uidx, format_id("org", i), -1, nullptr);
    int driver = 0;
    for (std::size_t g = 0; g < cfg_.driver_subgroups.size(); ++g) {
      for (int i = 0; i < cfg_.driver_subgroups[g].size; ++i, ++driver, ++uidx)
        emit_user(scenario, uidx, format_id("drv", driver), static_cast<int>(g),
                  &cfg_.driver_subgroups[g]);
    }
    return scenario;
  }

 private:
  static std::string format_id(const char* prefix, int n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%05d", prefix, n);
    return buf;
  }

  // Anchored window into the pool: a user keeps personal favorites
  // (low ranks near the anchor) so repeat activity concentrates, while
  // two users co-occur only when their anchors are close.
  int anchored(Rng& rng, const ZipfSampler& zipf, const PoolView& view, int anchor) const {
    int rank = static_cast<int>(zipf.sample(rng));
    return (anchor + std::min(rank, view.size - 1)) % view.size;
  }

  int draw_anchor(Rng& rng, const PoolView& view) const {
    return static_cast<int>(rng.uniform(view.size));
  }

  std::int64_t organic_delay(Rng& rng) const {
    // Median one hour, heavy tailed; essentially never under a minute.
    return std::max<std::int64_t>(
        1, static_cast<std::int64_t>(rng.lognormal(std::log(3600.0), 1.5)));
  }

  void emit_user(Scenario& scenario, int uidx, const std::string& user_id, int group,
                 const SubgroupConfig* subgroup) {
    Rng rng(mix_seed(cfg_.seed, 0x5EEDull, static_cast<std::uint64_t>(uidx)));
    const bool is_driver = subgroup != nullptr;

    struct Anchors {
      int retweet, url, hashtag, word;
    } anchors{draw_anchor(rng, retweet_view_, is_driver),
              draw_anchor(rng, url_view_, is_driver),
              draw_anchor(rng, hashtag_view_, is_driver),
              draw_anchor(rng, word_view_, is_driver)};

    int n_years = cfg_.end_year - cfg_.start_year + 1;
    int start_year = cfg_.start_year + static_cast<int>(rng.uniform(n_years));
    std::int64_t year_begin = classify::year_start_timestamp(start_year);
    std::int64_t year_span = classify::year_start_timestamp(start_year + 1) - year_begin;
    std::int64_t first_ts = year_begin + static_cast<std::int64_t>(rng.uniform(year_span / 2));

    int n_events = cfg_.tweets_per_user / 2 +
                   static_cast<int>(rng.uniform(cfg_.tweets_per_user + 1));
    n_events = std::max(1, n_events);

    for (int ev = 0; ev < n_events; ++ev) {
      TweetRecord rec;
      rec.tweet_id = "t" + std::to_string(uidx) + "_" + std::to_string(ev);
      rec.author_id = user_id;
      rec.timestamp = ev == 0 ? first_ts
                              : first_ts + static_cast<std::int64_t>(
                                               rng.uniform(range_end_ - first_ts + 1));

      bool coordinated = is_driver && rng.bernoulli(subgroup->intensity) &&
                         !subgroup->tactics.empty();
      if (coordinated) {
        Tactic tactic = subgroup->tactics[rng.uniform(subgroup->tactics.size())];
        emit_coordinated(rec, rng, group, tactic, uidx, ev, anchors.word);
      } else {
        emit_organic(rec, rng, anchors);
      }
      scenario.corpus.users.insert(rec.author_id);
      scenario.corpus.records.push_back(std::move(rec));
    }

    LabelRecord label;
    label.user_id = user_id;
    label.label = is_driver ? Label::io_driver : Label::control;
    label.country = "synthetic";
    label.first_active_year = start_year;
    scenario.labels.emplace(user_id, label);
  }

  void emit_organic(TweetRecord& rec, Rng& rng, const auto& anchors) {
    if (rng.bernoulli(cfg_.retweet_fraction)) {
      int target = anchored(rng, zipf_retweet_, retweet_view_, anchors.retweet);
      RetweetInfo info;
      info.source_tweet_id = "pt" + std::to_string(target);
      info.source_author_id = "pa" + std::to_string(target / 8);
      std::int64_t delay = std::min<std::int64_t>(organic_delay(rng), rec.timestamp);
      info.source_timestamp = rec.timestamp - delay;
      rec.retweet = std::move(info);
      return;
    }
    rec.text = organic_words(rng, anchors.word, 6 + static_cast<int>(rng.uniform(11)));
    double roll = rng.uniform_real();
    int n_tags = 0;
    if (roll >= 0.98) n_tags = 6 + static_cast<int>(rng.uniform(3));
    else if (roll >= 0.85) n_tags = 3 + static_cast<int>(rng.uniform(3));
    else if (roll >= 0.50) n_tags = 1 + static_cast<int>(rng.uniform(2));
    for (int t = 0; t < n_tags; ++t) {
      int tag = anchored(rng, zipf_hashtag_, hashtag_view_, anchors.hashtag);
      rec.hashtags.push_back("tag" + std::to_string(tag));
    }
    double url_roll = rng.uniform_real();
    int n_urls = url_roll >= 0.9 ? 2 : (url_roll >= 0.6 ? 1 : 0);
    for (int u = 0; u < n_urls; ++u) {
      int link = anchored(rng, zipf_url_, url_view_, anchors.url);
      rec.urls.push_back("https://news.example/a" + std::to_string(link));
    }
  }

  void emit_coordinated(TweetRecord& rec, Rng& rng, int group, Tactic tactic, int uidx,
                        int ev, int word_anchor) {
    const std::string g = std::to_string(group);
    switch (tactic) {
      case Tactic::co_retweet_pool: {
        int j = static_cast<int>(rng.uniform(cfg_.pools.coordinated));
        RetweetInfo info;
        info.source_tweet_id = "cg" + g + "t" + std::to_string(j);
        info.source_author_id = "cg" + g + "a" + std::to_string(j / 4);
        std::int64_t delay = std::min<std::int64_t>(organic_delay(rng), rec.timestamp);
        info.source_timestamp = rec.timestamp - delay;
        rec.retweet = std::move(info);
        break;
      }
      case Tactic::fast_retweet_ring: {
        int r = static_cast<int>(rng.uniform(cfg_.pools.ring));
        RetweetInfo info;
        info.source_tweet_id =
            "cg" + g + "rt" + std::to_string(uidx) + "_" + std::to_string(ev);
        info.source_author_id = "cg" + g + "ring" + std::to_string(r);
        std::int64_t delay = 1 + static_cast<std::int64_t>(rng.uniform(50));
        info.source_timestamp = rec.timestamp - std::min(delay, rec.timestamp);
        rec.retweet = std::move(info);
        break;
      }
      case Tactic::co_url_pool: {
        int j = static_cast<int>(rng.uniform(cfg_.pools.coordinated));
        rec.text = organic_words(rng, word_anchor, 6 + static_cast<int>(rng.uniform(8)));
        rec.urls.push_back("https://camp" + g + ".example/p" + std::to_string(j));
        break;
      }
      case Tactic::hashtag_template: {
        int j = static_cast<int>(rng.uniform(cfg_.pools.coordinated));
        rec.text = organic_words(rng, word_anchor, 6 + static_cast<int>(rng.uniform(8)));
        for (int i = 0; i < 5; ++i)
          rec.hashtags.push_back("cg" + g + "h" + std::to_string(j * 5 + i));
        break;
      }
      case Tactic::text_duplication: {
        int j = static_cast<int>(rng.uniform(cfg_.pools.coordinated));
        std::string text;
        for (int i = 0; i < 10; ++i) {
          if (!text.empty()) text.push_back(' ');
          text += "cg" + g + "w" + std::to_string(j * 10 + i);
        }
        rec.text = std::move(text);
        break;
      }
    }
  }

  // Distinct words per post: favorites recur across a user's posts (via
  // the anchor) but not within one, keeping document vectors spread
  // over several terms.
  std::string organic_words(Rng& rng, int anchor, int n_words) {
    std::vector<int> words;
    for (int attempt = 0; attempt < 4 * n_words && static_cast<int>(words.size()) < n_words;
         ++attempt) {
      int w = anchored(rng, zipf_word_, word_view_, anchor);
      if (std::find(words.begin(), words.end(), w) == words.end()) words.push_back(w);
    }
    std::string text;
    for (int w : words) {
      if (!text.empty()) text.push_back(' ');
      text += "w" + std::to_string(w);
    }
    return text;
  }

  const ScenarioConfig& cfg_;
  ZipfSampler zipf_retweet_, zipf_url_, zipf_hashtag_, zipf_word_;
  PoolView retweet_view_, url_view_, hashtag_view_, word_view_;
  std::int64_t range_start_ = 0;
  std::int64_t range_end_ = 0;
};

}  // namespace

Scenario generate_scenario(const ScenarioConfig& cfg) {
  if (cfg.n_organic < 0 || cfg.n_drivers < 0)
    throw std::invalid_argument("user counts must be nonnegative");
  if (cfg.end_year < cfg.start_year)
    throw std::invalid_argument("end_year precedes start_year");
  if (cfg.tweets_per_user < 1)
    throw std::invalid_argument("tweets_per_user must be >= 1");
  int subgroup_total = 0;
  for (const SubgroupConfig& g : cfg.driver_subgroups) {
    if (g.size < 0) throw std::invalid_argument("subgroup size must be nonnegative");
    if (g.intensity < 0.0 || g.intensity > 1.0)
      throw std::invalid_argument("intensity must be in [0,1]");
    subgroup_total += g.size;
  }
  if (subgroup_total != cfg.n_drivers)
    throw std::invalid_argument("subgroup sizes sum to " + std::to_string(subgroup_total) +
                                " but n_drivers is " + std::to_string(cfg.n_drivers));
  return Generator(cfg).run();
}

}  // namespace coordnet::synth
