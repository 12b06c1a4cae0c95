#include <doctest.h>

#include "coordnet/rng.hpp"
#include "coordnet/text.hpp"

using namespace coordnet;

TEST_CASE("clean_text strips urls, punctuation and stopwords") {
  CHECK(clean_text("Check THIS out!! https://t.co/x") == "check");
  CHECK(clean_text("") == "");
  CHECK(clean_text("solidaridad con cuba") == "solidaridad cuba");
}

TEST_CASE("clean_text handles emoji and accents") {
  CHECK(clean_text("hola \xF0\x9F\x98\x80 mundo") == "hola mundo");  // U+1F600
  CHECK(clean_text("CAF\xC3\x89") == "caf\xC3\xA9");                 // É -> é
  CHECK(clean_text("\xD0\x9C\xD0\x98\xD0\xA0") == "\xD0\xBC\xD0\xB8\xD1\x80");  // МИР
  CHECK(clean_text("visit www.example.com now") == "visit");
}

TEST_CASE("clean_text removes whole urls, not fragments") {
  CHECK(clean_text("go https://example.com/a#b?q=1 here") == "go");
  CHECK(clean_text("a...b") == "ab");  // punctuation deleted in place
}

TEST_CASE("clean_text is idempotent and never grows") {
  Rng rng(20240817);
  const char* pieces[] = {"Hello", "WORLD", "https://t.co/abc", "?!", "con", "the",
                          "caf\xC3\xA9", "\xF0\x9F\x98\x80", "x1", "  ", "durch",
                          "solidaridad", "#tag", "1234", "..."};
  for (int trial = 0; trial < 200; ++trial) {
    std::string s;
    int n = 1 + static_cast<int>(rng.uniform(12));
    for (int i = 0; i < n; ++i) {
      s += pieces[rng.uniform(std::size(pieces))];
      s += rng.bernoulli(0.8) ? " " : "";
    }
    std::string once = clean_text(s);
    CHECK(clean_text(once) == once);
    CHECK(word_count(once) <= word_count(s));
  }
}

TEST_CASE("stopword list can be replaced by file") {
  Stopwords none = Stopwords::empty();
  CHECK(clean_text("this out", none) == "this out");
}
