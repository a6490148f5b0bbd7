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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Character trigram profiles for rank-order language identification.
namespace altgen::lang {

inline constexpr std::size_t kProfileSize = 300;

struct LanguageProfile {
  std::string lang;                           // primary subtag
  std::vector<std::string> ranked_trigrams;   // most frequent first, no duplicates

  bool operator==(const LanguageProfile&) const = default;
};

std::size_t count_letters(std::string_view text);

// Lowercased letter runs padded with one space on each side, split into
// overlapping code-point trigrams, ranked by frequency (ties broken by
// byte order) and cut to `k`.
std::vector<std::string> ranked_trigrams(std::string_view text, std::size_t k = kProfileSize);

LanguageProfile build_profile(std::string lang, std::string_view corpus, std::size_t k = kProfileSize);

// `<subtag>.profile` format: one trigram per line, rank order, UTF-8.
std::string format_profile(const LanguageProfile& profile);
LanguageProfile parse_profile(std::string lang, std::string_view contents);

}  // namespace altgen::lang
