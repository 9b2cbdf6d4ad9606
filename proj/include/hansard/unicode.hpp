#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small UTF-8 toolbox. Covers what transcript text actually needs:
// decoding with Latin-1 fallback, case folding and accent folding for
// the Latin range, and composition of combining marks (the fada in
// Irish names usually arrives as a combining acute).

namespace hansard {

inline constexpr char32_t kInvalidCodepoint = 0xFFFD;

// Decodes one UTF-8 sequence starting at s[i]; advances i.
// Returns kInvalidCodepoint on malformed input (i advances by one byte).
inline char32_t utf8_next(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
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
    return kInvalidCodepoint;
  }
  if (i + len > s.size()) {
    ++i;
    return kInvalidCodepoint;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return kInvalidCodepoint;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

inline void utf8_append(std::string& out, char32_t cp) {
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

inline std::vector<char32_t> utf8_decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) out.push_back(utf8_next(s, i));
  return out;
}

inline std::string utf8_encode(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) utf8_append(out, cp);
  return out;
}

inline bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    if (utf8_next(s, i) == kInvalidCodepoint) return false;
  }
  return true;
}

// Reinterprets bytes as ISO-8859-1. Used as the declared decode fallback.
inline std::string latin1_to_utf8(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) utf8_append(out, static_cast<unsigned char>(c));
  return out;
}

inline bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Composes a base Latin letter with a combining diacritic (U+0300..U+036F)
// into the precomposed codepoint where one exists in Latin-1 Supplement or
// Latin Extended-A. Returns 0 when there is no composition.
inline char32_t compose_latin(char32_t base, char32_t mark) {
  struct Row {
    char32_t base;
    char32_t grave, acute, circumflex, tilde, diaeresis;
  };
  // 0 marks a hole (no precomposed form used here).
  static constexpr Row kRows[] = {
      {U'A', 0xC0, 0xC1, 0xC2, 0xC3, 0xC4},
      {U'E', 0xC8, 0xC9, 0xCA, 0, 0xCB},
      {U'I', 0xCC, 0xCD, 0xCE, 0, 0xCF},
      {U'N', 0, 0x143, 0, 0xD1, 0},
      {U'O', 0xD2, 0xD3, 0xD4, 0xD5, 0xD6},
      {U'U', 0xD9, 0xDA, 0xDB, 0, 0xDC},
      {U'Y', 0, 0xDD, 0, 0, 0x178},
      {U'a', 0xE0, 0xE1, 0xE2, 0xE3, 0xE4},
      {U'e', 0xE8, 0xE9, 0xEA, 0, 0xEB},
      {U'i', 0xEC, 0xED, 0xEE, 0, 0xEF},
      {U'n', 0, 0x144, 0, 0xF1, 0},
      {U'o', 0xF2, 0xF3, 0xF4, 0xF5, 0xF6},
      {U'u', 0xF9, 0xFA, 0xFB, 0, 0xFC},
      {U'y', 0, 0xFD, 0, 0, 0xFF},
  };
  for (const auto& r : kRows) {
    if (r.base != base) continue;
    switch (mark) {
      case 0x300: return r.grave;
      case 0x301: return r.acute;
      case 0x302: return r.circumflex;
      case 0x303: return r.tilde;
      case 0x308: return r.diaeresis;
      default: return 0;
    }
  }
  return 0;
}

// NFC-style composition restricted to the Latin repertoire above.
// Combining marks that do not compose are dropped so that downstream
// tokenization never sees bare marks.
inline std::string nfc_latin(std::string_view s) {
  std::vector<char32_t> cps = utf8_decode(s);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (cp >= 0x300 && cp <= 0x36F && !out.empty()) {
      if (char32_t comp = compose_latin(out.back(), cp); comp != 0) {
        out.back() = comp;
        continue;
      }
      continue;
    }
    out.push_back(cp);
  }
  return utf8_encode(out);
}

// Strips diacritics from Latin letters: á -> a, Ó -> O, ß and æ expand.
// Non-Latin codepoints pass through unchanged.
inline char32_t fold_accent(char32_t cp) {
  static constexpr struct { char32_t from; char32_t to; } kMap[] = {
      {0xC0, U'A'}, {0xC1, U'A'}, {0xC2, U'A'}, {0xC3, U'A'}, {0xC4, U'A'},
      {0xC5, U'A'}, {0xC7, U'C'}, {0xC8, U'E'}, {0xC9, U'E'}, {0xCA, U'E'},
      {0xCB, U'E'}, {0xCC, U'I'}, {0xCD, U'I'}, {0xCE, U'I'}, {0xCF, U'I'},
      {0xD1, U'N'}, {0xD2, U'O'}, {0xD3, U'O'}, {0xD4, U'O'}, {0xD5, U'O'},
      {0xD6, U'O'}, {0xD8, U'O'}, {0xD9, U'U'}, {0xDA, U'U'}, {0xDB, U'U'},
      {0xDC, U'U'}, {0xDD, U'Y'},
      {0xE0, U'a'}, {0xE1, U'a'}, {0xE2, U'a'}, {0xE3, U'a'}, {0xE4, U'a'},
      {0xE5, U'a'}, {0xE7, U'c'}, {0xE8, U'e'}, {0xE9, U'e'}, {0xEA, U'e'},
      {0xEB, U'e'}, {0xEC, U'i'}, {0xED, U'i'}, {0xEE, U'i'}, {0xEF, U'i'},
      {0xF1, U'n'}, {0xF2, U'o'}, {0xF3, U'o'}, {0xF4, U'o'}, {0xF5, U'o'},
      {0xF6, U'o'}, {0xF8, U'o'}, {0xF9, U'u'}, {0xFA, U'u'}, {0xFB, U'u'},
      {0xFC, U'u'}, {0xFD, U'y'}, {0xFF, U'y'},
      {0x100, U'A'}, {0x101, U'a'}, {0x112, U'E'}, {0x113, U'e'},
      {0x12A, U'I'}, {0x12B, U'i'}, {0x14C, U'O'}, {0x14D, U'o'},
      {0x16A, U'U'}, {0x16B, U'u'}, {0x143, U'N'}, {0x144, U'n'},
      {0x178, U'Y'},
  };
  for (const auto& m : kMap) {
    if (m.from == cp) return m.to;
  }
  return cp;
}

inline char32_t to_lower_cp(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;  // Latin-1 caps
  return cp;
}

// Lowercase + accent fold + whitespace collapse, the normalization used
// before name comparison.
inline std::string fold_for_match(std::string_view s) {
  std::string composed = nfc_latin(s);
  std::vector<char32_t> cps = utf8_decode(composed);
  std::string out;
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (is_unicode_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    cp = to_lower_cp(fold_accent(cp));
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    utf8_append(out, cp);
  }
  return out;
}

}  // namespace hansard
