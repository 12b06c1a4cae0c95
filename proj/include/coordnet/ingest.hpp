#pragma once

#include <string>
#include <vector>

#include "coordnet/types.hpp"

namespace coordnet::ingest {

struct LoadReport {
  std::size_t loaded = 0;
  std::size_t skipped = 0;  // malformed lines
  std::vector<std::string> warnings;
};

// Reads a newline-delimited corpus file (one JSON object per line, keys
// tweet_id/author_id/timestamp/text/hashtags/urls and optional retweet).
// Malformed lines are skipped and reported; an unreadable file throws.
Corpus load_corpus(const std::string& path, LoadReport* report = nullptr);

// CSV with header user_id,label,country,first_active_year. Duplicate
// user ids and unknown label strings are fatal.
LabelMap load_labels(const std::string& path);

void write_corpus(const Corpus& corpus, const std::string& path);
void write_labels(const LabelMap& labels, const std::string& path);

}  // namespace coordnet::ingest
