/*
 * Copyright 2026 The AltGen Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "altgen/text.hpp"

namespace altgen::text {

namespace {

// Returns the code point at `pos` and advances it; invalid input yields
// U+FFFD and consumes one byte.
char32_t next_codepoint(std::string_view s, std::size_t& pos, bool& valid) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  valid = true;
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    valid = false;
    ++pos;
    return kReplacementChar;
  }
  if (pos + len > s.size()) {
    valid = false;
    ++pos;
    return kReplacementChar;
  }
  for (int i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      valid = false;
      ++pos;
      return kReplacementChar;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    valid = false;
    ++pos;
    return kReplacementChar;
  }
  pos += len;
  return cp;
}

bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

}  // namespace

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t pos = 0;
  bool valid = true;
  while (pos < bytes.size()) out.push_back(next_codepoint(bytes, pos, valid));
  return out;
}

bool is_valid_utf8(std::string_view bytes) {
  std::size_t pos = 0;
  bool valid = true;
  while (pos < bytes.size()) {
    next_codepoint(bytes, pos, valid);
    if (!valid) return false;
  }
  return true;
}

void append_utf8(std::string& out, char32_t cp) {
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

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

char32_t to_lower(char32_t cp) {
  if (in(cp, 'A', 'Z')) return cp + 0x20;
  if (cp < 0x80) return cp;
  if (in(cp, 0xC0, 0xDE) && cp != 0xD7) return cp + 0x20;
  if (in(cp, 0x100, 0x17F)) {
    if (cp == 0x130) return 'i';
    if (cp == 0x178) return 0xFF;
    if (in(cp, 0x139, 0x148) || in(cp, 0x179, 0x17E)) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x131 || cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (in(cp, 0x391, 0x3A9) && cp != 0x3A2) return cp + 0x20;
  if (cp == 0x386) return 0x3AC;
  if (in(cp, 0x388, 0x38A)) return cp + 37;
  if (cp == 0x38C) return 0x3CC;
  if (in(cp, 0x38E, 0x38F)) return cp + 63;
  if (in(cp, 0x410, 0x42F)) return cp + 0x20;
  if (in(cp, 0x400, 0x40F)) return cp + 0x50;
  if (in(cp, 0x1E00, 0x1EFF)) return (cp % 2 == 0) ? cp + 1 : cp;
  return cp;
}

std::string to_lower(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  for (char32_t cp : decode_utf8(utf8)) append_utf8(out, to_lower(cp));
  return out;
}

bool is_letter(char32_t cp) {
  if (cp < 0x80) return in(cp, 'a', 'z') || in(cp, 'A', 'Z');
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
  if (in(cp, 0xC0, 0x24F)) return cp != 0xD7 && cp != 0xF7;
  if (in(cp, 0x250, 0x2AF)) return true;
  if (in(cp, 0x300, 0x36F)) return true;  // combining marks stay inside words
  if (in(cp, 0x370, 0x3FF))
    return cp != 0x375 && cp != 0x37E && cp != 0x384 && cp != 0x385 && cp != 0x387;
  if (in(cp, 0x400, 0x481) || in(cp, 0x48A, 0x52F)) return true;
  if (in(cp, 0x531, 0x587)) return true;
  if (in(cp, 0x5D0, 0x5EA) || in(cp, 0x5F0, 0x5F2)) return true;
  if (in(cp, 0x620, 0x64A) || in(cp, 0x671, 0x6D3)) return true;
  if (in(cp, 0x904, 0x939)) return true;
  if (in(cp, 0xE01, 0xE4E)) return cp != 0xE3F;
  if (in(cp, 0x1100, 0x11FF)) return true;
  if (in(cp, 0x1E00, 0x1FFF)) return true;
  if (in(cp, 0x3041, 0x309F) || in(cp, 0x30A1, 0x30FF)) return cp != 0x30FB;
  if (in(cp, 0x3131, 0x318E)) return true;
  if (in(cp, 0x3400, 0x4DBF) || in(cp, 0x4E00, 0x9FFF)) return true;
  if (in(cp, 0xAC00, 0xD7A3)) return true;
  return false;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case ' ':
    case '\t':
    case '\n':
    case '\v':
    case '\f':
    case '\r':
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return in(cp, 0x2000, 0x200A);
  }
}

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    return in(cp, 0x21, 0x2F) || in(cp, 0x3A, 0x40) || in(cp, 0x5B, 0x60) ||
           in(cp, 0x7B, 0x7E);
  }
  switch (cp) {
    case 0xA1:
    case 0xA7:
    case 0xAB:
    case 0xB6:
    case 0xB7:
    case 0xBB:
    case 0xBF:
    case 0x37E:
    case 0x387:
      return true;
    default:
      return in(cp, 0x2010, 0x2027) || in(cp, 0x2030, 0x205E) || in(cp, 0x3001, 0x3003) ||
             in(cp, 0x3008, 0x3011) || in(cp, 0xFF01, 0xFF0F);
  }
}

Script script_of(char32_t cp) {
  if (in(cp, U'A', U'Z') || in(cp, U'a', U'z') || in(cp, 0xC0, 0x2AF) || in(cp, 0x1E00, 0x1EFF)) return Script::Latin;
  if (in(cp, 0x370, 0x3FF) || in(cp, 0x1F00, 0x1FFF)) return Script::Greek;
  if (in(cp, 0x400, 0x52F)) return Script::Cyrillic;
  if (in(cp, 0x590, 0x5FF)) return Script::Hebrew;
  if (in(cp, 0x600, 0x6FF)) return Script::Arabic;
  if (in(cp, 0x3040, 0x30FF)) return Script::Kana;
  if (in(cp, 0x1100, 0x11FF) || in(cp, 0x3130, 0x318F) || in(cp, 0xAC00, 0xD7A3))
    return Script::Hangul;
  if (in(cp, 0xE00, 0xE7F)) return Script::Thai;
  if (in(cp, 0x3400, 0x4DBF) || in(cp, 0x4E00, 0x9FFF)) return Script::Han;
  return Script::Other;
}

std::string normalize_whitespace(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  bool pending_space = false;
  std::size_t pos = 0;
  bool valid = true;
  while (pos < utf8.size()) {
    const char32_t cp = next_codepoint(utf8, pos, valid);
    if (is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    append_utf8(out, cp);
  }
  return out;
}

std::size_t codepoint_count(std::string_view utf8) {
  std::size_t n = 0;
  for (char c : utf8) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string truncate_head(std::string_view normalized, std::size_t max_chars) {
  const std::u32string cps = decode_utf8(normalized);
  if (cps.size() <= max_chars) return std::string(normalized);
  std::size_t cut = max_chars;
  // cut is a boundary when the character right after it is a space
  while (cut > 0 && cps[cut] != U' ') --cut;
  if (cut == 0) cut = max_chars;
  std::u32string_view head(cps.data(), cut);
  while (!head.empty() && head.back() == U' ') head.remove_suffix(1);
  return encode_utf8(head);
}

std::string truncate_tail(std::string_view normalized, std::size_t max_chars) {
  const std::u32string cps = decode_utf8(normalized);
  if (cps.size() <= max_chars) return std::string(normalized);
  std::size_t start = cps.size() - max_chars;
  while (start < cps.size() && cps[start - 1] != U' ') ++start;
  if (start >= cps.size()) start = cps.size() - max_chars;
  std::u32string_view tail(cps.data() + start, cps.size() - start);
  while (!tail.empty() && tail.front() == U' ') tail.remove_prefix(1);
  return encode_utf8(tail);
}

std::vector<std::string> split_whitespace(std::string_view utf8) {
  std::vector<std::string> words;
  std::string current;
  std::size_t pos = 0;
  bool valid = true;
  while (pos < utf8.size()) {
    const char32_t cp = next_codepoint(utf8, pos, valid);
    if (is_space(cp)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      append_utf8(current, cp);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace altgen::text
