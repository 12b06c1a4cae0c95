#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace coordnet {

// One activity event (post or retweet). Timestamps are UTC seconds.
struct RetweetInfo {
  std::string source_tweet_id;
  std::string source_author_id;
  std::int64_t source_timestamp = 0;
};

struct TweetRecord {
  std::string tweet_id;
  std::string author_id;
  std::int64_t timestamp = 0;
  std::string text;
  std::vector<std::string> hashtags;  // in-tweet order, lowercase
  std::vector<std::string> urls;
  std::optional<RetweetInfo> retweet;

  bool is_retweet() const { return retweet.has_value(); }
};

enum class Label { io_driver, control };

struct LabelRecord {
  std::string user_id;
  Label label = Label::control;
  std::string country;
  int first_active_year = 0;
};

using LabelMap = std::map<std::string, LabelRecord>;

struct Corpus {
  std::vector<TweetRecord> records;
  std::set<std::string> users;  // distinct author_id
};

enum class TraceKind { co_retweet, co_url, hashtag_seq, fast_retweet, text_sim };

const char* trace_kind_name(TraceKind kind);
TraceKind trace_kind_from_name(const std::string& name);

// (user, entity, count) occurrence within one behavioral trace.
struct TraceEvent {
  std::string user_id;
  std::string entity_id;
  std::uint32_t count = 1;
};

}  // namespace coordnet
