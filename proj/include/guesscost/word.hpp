#pragma once

#include "guesscost/error.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace guesscost {

/// A candidate password: a finite sequence of unicode scalar values.
using Word = std::u32string;

/// Decodes strict UTF-8 (no overlongs, no surrogates, max U+10FFFF).
inline Word from_utf8(std::string_view bytes) {
  Word out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  auto fail = [&](const char* what) {
    throw Error(ErrorKind::InvalidUtf8, std::string(what) + " at byte " + std::to_string(i));
  };
  while (i < bytes.size()) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4, cp = b0 & 0x07, min = 0x10000;
    } else {
      fail("invalid lead byte");
    }
    if (i + len > bytes.size()) fail("truncated sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) fail("invalid continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min) fail("overlong encoding");
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("not a unicode scalar value");
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline std::string to_utf8(std::u32string_view word) {
  std::string out;
  out.reserve(word.size());
  for (char32_t cp : word) {
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
  return out;
}

/// Shorthand for ASCII literals in tests and built-ins.
inline Word ascii_word(std::string_view s) { return Word(s.begin(), s.end()); }

// Case handling is ASCII-only.
inline bool is_cased(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }
inline char32_t to_upper(char32_t c) { return (c >= U'a' && c <= U'z') ? c - 32 : c; }
inline char32_t to_lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c + 32 : c; }

inline Word lowercase(Word w) {
  for (auto& c : w) c = to_lower(c);
  return w;
}

}  // namespace guesscost
