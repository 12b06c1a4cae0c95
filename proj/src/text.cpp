#include "coordnet/text.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace coordnet {

namespace {

// -- UTF-8 -------------------------------------------------------------

// Decodes one codepoint starting at `i`; advances `i` past it. Invalid
// bytes decode to U+FFFD one byte at a time so cleaning stays total.
std::uint32_t decode_utf8(const std::string& s, std::size_t& i) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  std::uint32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    unsigned char bk = byte(i + k);
    if ((bk & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (bk & 0x3F);
  }
  i += len;
  return cp;
}

void encode_utf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// -- character classes -------------------------------------------------

bool in_range(std::uint32_t cp, std::uint32_t lo, std::uint32_t hi) {
  return cp >= lo && cp <= hi;
}

// Emoji and pictograph ranges, plus joiners/modifiers that only occur
// inside emoji sequences.
bool is_emoji(std::uint32_t cp) {
  return in_range(cp, 0x1F000, 0x1FAFF) ||  // pictographs, emoticons, transport, symbols
         in_range(cp, 0x2600, 0x27BF) ||    // misc symbols + dingbats
         in_range(cp, 0x2B00, 0x2BFF) ||    // arrows/stars used as emoji
         in_range(cp, 0xFE00, 0xFE0F) ||    // variation selectors
         cp == 0x200D || cp == 0x20E3;      // ZWJ, combining keycap
}

bool is_punct(std::uint32_t cp) {
  if (cp < 0x80) {
    return !(cp >= '0' && cp <= '9') && !(cp >= 'a' && cp <= 'z') &&
           !(cp >= 'A' && cp <= 'Z');
  }
  return in_range(cp, 0x2000, 0x206F) ||  // general punctuation
         in_range(cp, 0x20A0, 0x20CF) ||  // currency
         in_range(cp, 0x2190, 0x22FF) ||  // arrows + math operators
         in_range(cp, 0x2300, 0x23FF) ||  // misc technical
         in_range(cp, 0x25A0, 0x25FF) ||  // geometric shapes
         in_range(cp, 0x3000, 0x303F) ||  // CJK punctuation
         in_range(cp, 0xFF01, 0xFF0F) || in_range(cp, 0xFF1A, 0xFF20) ||
         in_range(cp, 0xFF3B, 0xFF40) || in_range(cp, 0xFF5B, 0xFF65) ||
         cp == 0x00A1 || cp == 0x00AB || cp == 0x00BB || cp == 0x00BF ||
         cp == 0x00B7 || cp == 0xFFFD;
}

bool is_space(std::uint32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' ||
         cp == '\f' || cp == 0x00A0 || in_range(cp, 0x2000, 0x200B) || cp == 0x3000;
}

// Covers ASCII, Latin-1, Latin Extended-A, Greek, Cyrillic. Other
// scripts pass through unchanged.
std::uint32_t to_lower(std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (in_range(cp, 0x00C0, 0x00DE) && cp != 0x00D7) return cp + 0x20;
  if (in_range(cp, 0x0100, 0x0177) && cp % 2 == 0) return cp + 1;
  if (cp == 0x0178) return 0x00FF;
  if (in_range(cp, 0x0179, 0x017E) && cp % 2 == 1) return cp + 1;
  if (in_range(cp, 0x0391, 0x03AB) && cp != 0x03A2) return cp + 0x20;
  if (in_range(cp, 0x0410, 0x042F)) return cp + 0x20;
  if (in_range(cp, 0x0400, 0x040F)) return cp + 0x50;
  return cp;
}

bool starts_url(const std::string& s, std::size_t i) {
  static const char* prefixes[] = {"http://", "https://", "www."};
  for (const char* p : prefixes) {
    std::size_t n = std::string::traits_type::length(p);
    if (s.compare(i, n, p) == 0) return true;
  }
  return false;
}

}  // namespace

const Stopwords& Stopwords::bundled() {
  static const Stopwords instance = [] {
    // Compact multilingual list: high-frequency function words.
    static const char* kWords[] = {
        // English
        "a", "an", "the", "and", "or", "but", "if", "then", "than", "this",
        "that", "these", "those", "is", "are", "was", "were", "be", "been",
        "being", "am", "do", "does", "did", "have", "has", "had", "i", "you",
        "he", "she", "it", "we", "they", "me", "him", "her", "us", "them",
        "my", "your", "his", "its", "our", "their", "of", "in", "on", "at",
        "to", "for", "from", "by", "with", "about", "as", "into", "out",
        "over", "under", "again", "there", "here", "so", "not", "no", "nor",
        "up", "down", "what", "which", "who", "whom", "when", "where", "why",
        "how", "all", "any", "both", "each", "more", "most", "some", "such",
        "only", "own", "same", "too", "very", "can", "will", "just", "dont",
        "should", "now", "rt", "via",
        // Spanish
        "el", "la", "los", "las", "un", "una", "unos", "unas", "y", "o", "u",
        "de", "del", "al", "con", "sin", "por", "para", "en", "es", "son",
        "ser", "fue", "era", "que", "qué", "como", "cómo", "se", "su", "sus",
        "le", "les", "lo", "mi", "mis", "tu", "tus", "yo", "él", "ella",
        "nos", "nosotros", "ellos", "ellas", "este", "esta", "esto", "estos",
        "estas", "ese", "esa", "eso", "esos", "esas", "pero", "más", "mas",
        "muy", "ya", "también", "hay", "ha", "he", "haber", "si", "sí",
        "porque", "cuando", "donde", "todo", "toda", "todos", "todas",
        // French
        "le", "les", "des", "du", "au", "aux", "et", "ou", "où", "je", "tu",
        "il", "elle", "on", "vous", "ils", "elles", "ce", "cette", "ces",
        "dans", "sur", "sous", "avec", "sans", "pour", "par", "ne", "pas",
        "plus", "est", "sont", "être", "avoir", "mais", "donc", "car", "qui",
        "quoi", "une",
        // German
        "der", "die", "das", "den", "dem", "ein", "eine", "einen", "einem",
        "und", "oder", "aber", "nicht", "mit", "von", "zu", "im", "ist",
        "sind", "war", "waren", "ich", "du", "er", "sie", "wir", "ihr",
        "für", "auf", "aus", "bei", "nach", "über", "unter", "auch", "noch",
        // Italian
        "il", "gli", "uno", "ed", "di", "da", "nel", "nella", "non", "che",
        "chi", "cui", "per", "tra", "fra", "sono", "sei", "siamo", "siete",
        "questo", "questa", "quello", "quella", "anche", "come", "dove",
        "ma", "però", "più",
        // Portuguese
        "os", "as", "um", "uma", "uns", "umas", "do", "dos", "das", "no",
        "na", "nos", "nas", "ao", "aos", "à", "às", "e", "ou", "não", "sim",
        "eu", "ele", "nós", "eles", "elas", "meu", "minha", "seu", "sua",
        "são", "foi", "ser", "está", "estão", "mais", "muito", "já", "também",
        // Russian
        "и", "в", "во", "не", "на", "я", "он", "она", "оно", "они", "мы",
        "ты", "вы", "с", "со", "как", "а", "то", "все", "всё", "её", "его",
        "но", "да", "нет", "за", "бы", "по", "же", "из", "у", "к", "ко",
        "от", "до", "о", "об", "обо", "что", "это", "этот", "эта", "эти",
        "так", "тоже", "или", "ли", "если", "когда", "где", "кто", "чем",
        "при", "был", "была", "были", "есть", "для",
    };
    Stopwords sw;
    for (const char* w : kWords) sw.words_.insert(w);
    return sw;
  }();
  return instance;
}

Stopwords Stopwords::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file: " + path);
  Stopwords sw;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) sw.words_.insert(line);
  }
  return sw;
}

Stopwords Stopwords::empty() { return Stopwords{}; }

std::string clean_text(const std::string& text) {
  return clean_text(text, Stopwords::bundled());
}

std::string clean_text(const std::string& text, const Stopwords& stopwords) {
  // Pass 1: drop URLs wholesale (scheme or www. up to whitespace).
  std::string no_urls;
  no_urls.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (starts_url(text, i)) {
      while (i < text.size() && !is_space(static_cast<unsigned char>(text[i]))) ++i;
      no_urls.push_back(' ');
      continue;
    }
    no_urls.push_back(text[i]);
    ++i;
  }

  // Pass 2: lowercase; emoji and punctuation are deleted in place
  // (never turned into separators, so the word count cannot grow).
  std::string normalized;
  normalized.reserve(no_urls.size());
  i = 0;
  while (i < no_urls.size()) {
    std::uint32_t cp = decode_utf8(no_urls, i);
    if (is_space(cp)) {
      normalized.push_back(' ');
    } else if (is_emoji(cp) || is_punct(cp)) {
      continue;
    } else {
      encode_utf8(to_lower(cp), normalized);
    }
  }

  // Pass 3: tokenize, drop stopwords, collapse whitespace.
  std::string out;
  out.reserve(normalized.size());
  std::istringstream words(normalized);
  std::string word;
  while (words >> word) {
    if (stopwords.contains(word)) continue;
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string w;
  while (in >> w) out.push_back(std::move(w));
  return out;
}

std::size_t word_count(const std::string& text) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    bool sp = (c == ' ' || c == '\t' || c == '\n' || c == '\r');
    if (!sp && !in_word) ++n;
    in_word = !sp;
  }
  return n;
}

}  // namespace coordnet
