#include "coordnet/traces.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

namespace coordnet::traces {

namespace {

std::string lower_ascii(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c += 0x20;
  return s;
}

void add_event(std::map<std::pair<std::string, std::string>, std::uint32_t>& acc,
               const std::string& user, const std::string& entity) {
  ++acc[{user, entity}];
}

}  // namespace

std::string normalize_url(const std::string& url) {
  std::string out = url;
  auto hash = out.find('#');
  if (hash != std::string::npos) out.erase(hash);
  while (out.size() > 1 && out.back() == '/') out.pop_back();
  return out;
}

std::vector<TraceEvent> extract_events(const Corpus& corpus, TraceKind kind,
                                       const TraceParams& params) {
  if (kind == TraceKind::text_sim)
    throw std::invalid_argument("text_sim is built from documents, not trace events");
  if (kind == TraceKind::hashtag_seq && !params.min_hashtags)
    throw std::invalid_argument("hashtag_seq requires min_hashtags");
  if (kind == TraceKind::fast_retweet && !params.max_delay_seconds)
    throw std::invalid_argument("fast_retweet requires max_delay_seconds");

  // std::map keeps the merge associative and the output order stable
  // regardless of how record processing is chunked.
  std::map<std::pair<std::string, std::string>, std::uint32_t> acc;

  for (const TweetRecord& rec : corpus.records) {
    switch (kind) {
      case TraceKind::co_retweet:
        if (rec.retweet) add_event(acc, rec.author_id, rec.retweet->source_tweet_id);
        break;
      case TraceKind::co_url:
        for (const std::string& url : rec.urls)
          add_event(acc, rec.author_id, normalize_url(url));
        break;
      case TraceKind::hashtag_seq: {
        if (static_cast<int>(rec.hashtags.size()) < *params.min_hashtags) break;
        std::string seq;
        for (const std::string& tag : rec.hashtags) {
          if (!seq.empty()) seq.push_back(kSequenceSeparator);
          seq += lower_ascii(tag);
        }
        add_event(acc, rec.author_id, seq);
        break;
      }
      case TraceKind::fast_retweet:
        if (rec.retweet &&
            rec.timestamp - rec.retweet->source_timestamp <= *params.max_delay_seconds)
          add_event(acc, rec.author_id, rec.retweet->source_author_id);
        break;
      case TraceKind::text_sim:
        break;
    }
  }

  std::vector<TraceEvent> events;
  events.reserve(acc.size());
  for (const auto& [key, count] : acc)
    events.push_back(TraceEvent{key.first, key.second, count});
  return events;
}

DocumentSet extract_documents(const Corpus& corpus, int min_words,
                              const Stopwords& stopwords) {
  if (min_words < 1) throw std::invalid_argument("min_words must be >= 1");
  DocumentSet set;
  for (const TweetRecord& rec : corpus.records) {
    if (rec.retweet) continue;
    std::string cleaned = clean_text(rec.text, stopwords);
    std::size_t words = word_count(cleaned);
    if (words < static_cast<std::size_t>(min_words)) continue;
    set.docs.push_back(Document{rec.author_id, rec.tweet_id, rec.timestamp,
                                std::move(cleaned), words});
  }
  std::sort(set.docs.begin(), set.docs.end(), [](const Document& a, const Document& b) {
    return a.timestamp != b.timestamp ? a.timestamp < b.timestamp
                                      : a.tweet_id < b.tweet_id;
  });
  return set;
}

void write_events(const std::vector<TraceEvent>& events, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write events file: " + path);
  out << "user_id,entity_id,count\n";
  for (const TraceEvent& ev : events) {
    out << ev.user_id << ',';
    if (ev.entity_id.find_first_of(",\"\n") != std::string::npos) {
      out << '"';
      for (char c : ev.entity_id) {
        if (c == '"') out << "\"\"";
        else out << c;
      }
      out << '"';
    } else {
      out << ev.entity_id;
    }
    out << ',' << ev.count << '\n';
  }
}

}  // namespace coordnet::traces
