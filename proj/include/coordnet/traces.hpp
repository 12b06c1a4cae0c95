#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coordnet/text.hpp"
#include "coordnet/types.hpp"

namespace coordnet::traces {

// Per-trace extraction parameters. The optimized regime is the default;
// prior() restores the parameters used by earlier work.
struct TraceParams {
  std::optional<int> min_hashtags = 3;           // hashtag_seq
  std::optional<std::int64_t> max_delay_seconds = 60;  // fast_retweet

  static TraceParams prior() { return TraceParams{5, 10}; }
  static TraceParams optimized() { return TraceParams{3, 60}; }
};

// Separator joining a tweet's hashtag sequence into one entity id.
// U+1F is not a legal hashtag character, so sequences cannot collide.
inline constexpr char kSequenceSeparator = '\x1f';

// Converts a corpus into the (user, entity, count) multiset for one
// behavioral trace. Entities by kind: co_retweet = source tweet id,
// co_url = normalized URL, hashtag_seq = full ordered tag sequence,
// fast_retweet = source author id of retweets within the delay bound.
std::vector<TraceEvent> extract_events(const Corpus& corpus, TraceKind kind,
                                       const TraceParams& params = {});

struct Document {
  std::string user_id;
  std::string tweet_id;
  std::int64_t timestamp = 0;
  std::string cleaned_text;
  std::size_t word_count = 0;
};

struct DocumentSet {
  std::vector<Document> docs;
};

// Cleans every original (non-retweet) tweet and keeps those with at
// least min_words words.
DocumentSet extract_documents(const Corpus& corpus, int min_words = 4,
                              const Stopwords& stopwords = Stopwords::bundled());

// Trim trailing slashes, strip the #fragment. No redirect resolution.
std::string normalize_url(const std::string& url);

// Debug export: user_id,entity_id,count (entity quoted when needed).
void write_events(const std::vector<TraceEvent>& events, const std::string& path);

}  // namespace coordnet::traces
