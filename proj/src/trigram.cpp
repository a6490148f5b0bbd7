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

#include "altgen/trigram.hpp"

#include <algorithm>
#include <unordered_map>

#include "altgen/text.hpp"

namespace altgen::lang {

std::size_t count_letters(std::string_view text) {
  std::size_t n = 0;
  for (char32_t cp : text::decode_utf8(text)) {
    if (text::is_letter(cp)) ++n;
  }
  return n;
}

std::vector<std::string> ranked_trigrams(std::string_view input, std::size_t k) {
  std::unordered_map<std::string, std::size_t> counts;
  const std::u32string cps = text::decode_utf8(input);
  std::u32string word;
  const auto flush = [&] {
    if (word.empty()) return;
    const std::u32string padded = U" " + word + U" ";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
      ++counts[text::encode_utf8(std::u32string_view(padded).substr(i, 3))];
    }
    word.clear();
  };
  for (char32_t cp : cps) {
    if (text::is_letter(cp)) {
      word.push_back(text::to_lower(cp));
    } else {
      flush();
    }
  }
  flush();

  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > k) ranked.resize(k);
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (auto& [gram, count] : ranked) out.push_back(std::move(gram));
  return out;
}

LanguageProfile build_profile(std::string lang, std::string_view corpus, std::size_t k) {
  return LanguageProfile{std::move(lang), ranked_trigrams(corpus, k)};
}

std::string format_profile(const LanguageProfile& profile) {
  std::string out;
  for (const std::string& gram : profile.ranked_trigrams) {
    out += gram;
    out += '\n';
  }
  return out;
}

LanguageProfile parse_profile(std::string lang, std::string_view contents) {
  LanguageProfile profile{std::move(lang), {}};
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    // padding spaces are significant, so lines are never trimmed
    if (!line.empty()) profile.ranked_trigrams.emplace_back(line);
    pos = end + 1;
  }
  return profile;
}

}  // namespace altgen::lang
