#pragma once

#include <string>
#include <unordered_set>
#include <vector>

namespace coordnet {

// Stopword set used by clean_text. The bundled list is multilingual
// (en/es/fr/de/it/pt/ru); it can be replaced by a file with one word
// per line (lowercase, UTF-8).
class Stopwords {
 public:
  static const Stopwords& bundled();
  static Stopwords from_file(const std::string& path);
  static Stopwords empty();

  bool contains(const std::string& word) const { return words_.count(word) > 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Lowercases, strips URLs / emoji / punctuation / stopwords, collapses
// whitespace. Total and idempotent.
std::string clean_text(const std::string& text);
std::string clean_text(const std::string& text, const Stopwords& stopwords);

std::vector<std::string> split_words(const std::string& text);
std::size_t word_count(const std::string& text);

}  // namespace coordnet
