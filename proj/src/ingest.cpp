#include "coordnet/ingest.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace coordnet {

const char* trace_kind_name(TraceKind kind) {
  switch (kind) {
    case TraceKind::co_retweet: return "co_retweet";
    case TraceKind::co_url: return "co_url";
    case TraceKind::hashtag_seq: return "hashtag_seq";
    case TraceKind::fast_retweet: return "fast_retweet";
    case TraceKind::text_sim: return "text_sim";
  }
  return "unknown";
}

TraceKind trace_kind_from_name(const std::string& name) {
  if (name == "co_retweet") return TraceKind::co_retweet;
  if (name == "co_url") return TraceKind::co_url;
  if (name == "hashtag_seq") return TraceKind::hashtag_seq;
  if (name == "fast_retweet") return TraceKind::fast_retweet;
  if (name == "text_sim") return TraceKind::text_sim;
  throw std::invalid_argument("unknown trace kind: " + name);
}

}  // namespace coordnet

namespace coordnet::ingest {

namespace {

using nlohmann::json;

TweetRecord parse_record(const json& j) {
  TweetRecord rec;
  rec.tweet_id = j.at("tweet_id").get<std::string>();
  rec.author_id = j.at("author_id").get<std::string>();
  rec.timestamp = j.at("timestamp").get<std::int64_t>();
  if (rec.tweet_id.empty() || rec.author_id.empty())
    throw std::invalid_argument("empty id");
  if (j.contains("text") && !j["text"].is_null())
    rec.text = j["text"].get<std::string>();
  if (j.contains("hashtags") && !j["hashtags"].is_null())
    rec.hashtags = j["hashtags"].get<std::vector<std::string>>();
  if (j.contains("urls") && !j["urls"].is_null())
    rec.urls = j["urls"].get<std::vector<std::string>>();
  if (j.contains("retweet") && !j["retweet"].is_null()) {
    const json& r = j["retweet"];
    RetweetInfo info;
    info.source_tweet_id = r.at("source_tweet_id").get<std::string>();
    info.source_author_id = r.at("source_author_id").get<std::string>();
    info.source_timestamp = r.at("source_timestamp").get<std::int64_t>();
    if (info.source_timestamp > rec.timestamp)
      throw std::invalid_argument("retweet precedes its source");
    rec.retweet = std::move(info);
  }
  return rec;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

Corpus load_corpus(const std::string& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);

  Corpus corpus;
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  std::unordered_set<std::string> seen_ids;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      TweetRecord rec = parse_record(j);
      if (!seen_ids.insert(rec.tweet_id).second)
        throw std::invalid_argument("duplicate tweet_id " + rec.tweet_id);
      corpus.users.insert(rec.author_id);
      corpus.records.push_back(std::move(rec));
      ++rep.loaded;
    } catch (const std::exception& e) {
      ++rep.skipped;
      if (rep.warnings.size() < 50) {
        rep.warnings.push_back(path + ":" + std::to_string(lineno) +
                               ": skipped malformed record (" + e.what() + ")");
      }
    }
  }
  return corpus;
}

LabelMap load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open labels file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("labels file is empty: " + path);
  auto header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "user_id" || header[1] != "label" ||
      header[2] != "country" || header[3] != "first_active_year") {
    throw std::runtime_error("labels file must start with header "
                             "user_id,label,country,first_active_year");
  }

  LabelMap labels;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() < 4)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 4 fields");
    LabelRecord rec;
    rec.user_id = fields[0];
    if (fields[1] == "io_driver") {
      rec.label = Label::io_driver;
    } else if (fields[1] == "control") {
      rec.label = Label::control;
    } else {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown label \"" + fields[1] +
                               "\" (expected io_driver or control)");
    }
    rec.country = fields[2];
    rec.first_active_year = std::stoi(fields[3]);
    if (!labels.emplace(rec.user_id, rec).second)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": duplicate user_id " + rec.user_id);
  }
  return labels;
}

void write_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  for (const TweetRecord& rec : corpus.records) {
    json j;
    j["tweet_id"] = rec.tweet_id;
    j["author_id"] = rec.author_id;
    j["timestamp"] = rec.timestamp;
    j["text"] = rec.text;
    j["hashtags"] = rec.hashtags;
    j["urls"] = rec.urls;
    if (rec.retweet) {
      j["retweet"] = {{"source_tweet_id", rec.retweet->source_tweet_id},
                      {"source_author_id", rec.retweet->source_author_id},
                      {"source_timestamp", rec.retweet->source_timestamp}};
    }
    out << j.dump() << '\n';
  }
}

void write_labels(const LabelMap& labels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write labels file: " + path);
  out << "user_id,label,country,first_active_year\n";
  for (const auto& [id, rec] : labels) {
    out << id << ',' << (rec.label == Label::io_driver ? "io_driver" : "control") << ','
        << rec.country << ',' << rec.first_active_year << '\n';
  }
}

}  // namespace coordnet::ingest
